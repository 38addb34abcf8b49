#include "sheetslice/report.hpp"

#include "sheetslice/fforacle.hpp"
#include "sheetslice/sevslice.hpp"
#include "sheetslice/sheetcat.hpp"
#include "sheetslice/sliceverify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sheetslice {

using json = nlohmann::ordered_json;

namespace {

std::string type_label(char t, int n) { return std::string(1, t) + std::to_string(n); }

bool valid_rank(char t, int n) {
  switch (t) {
    case 'A': return n >= 1;
    case 'B':
    case 'C': return n >= 2;
    case 'D': return n >= 4;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
  }
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string r;
  for (std::size_t i = 0; i < xs.size(); ++i) r += (i ? sep : "") + xs[i];
  return r;
}

std::string word_str(const WeylElement& w) {
  auto word = reduced_word(w);
  if (word.empty()) return "1";
  std::string r;
  for (int i : word) r += "s" + std::to_string(i + 1);
  return r;
}

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

struct Context {
  const RunConfig& cfg;
  Report& rep;
  void claim(std::string id, std::string citation, std::string status, std::string witness, std::string detail = "") {
    rep.claims.push_back(ClaimRow{std::move(id), std::move(citation), std::move(status), std::move(witness), std::move(detail)});
  }
};

// ---- catalog ----

json sheet_json(const SheetDescriptor& d) {
  json j;
  j["id"] = d.id();
  j["label"] = d.label;
  j["semisimple"] = d.semisimple;
  j["unipotent"] = d.unipotent;
  j["pi"] = d.pi;
  j["w"] = word_str(d.w);
  j["length"] = d.length();
  j["minus_rank"] = d.minus_rank();
  j["class_dimension"] = d.class_dimension();
  j["components"] = d.components;
  j["component_shape"] = d.component_shape;
  j["sheet_smooth"] = d.sheet_smooth;
  j["stratum_smooth"] = d.stratum_smooth;
  j["in_hypothesis"] = d.in_hypothesis;
  j["citation"] = d.citation;
  j["notes"] = d.notes;
  return j;
}

void catalog_part(Context& c, char t, int n) {
  auto cat = sheet_catalog(t, n, c.cfg.isogeny);
  json arr = json::array();
  const std::string head = type_label(t, n);
  if (cat.empty()) c.claim("catalog:" + head, "", "info", "no non-trivial sheets of spherical classes");
  for (const auto& d : cat) {
    if (!c.cfg.sheet.empty() && d.label != c.cfg.sheet) continue;
    auto chk = check_descriptor(d);
    std::string witness = d.components ? std::to_string(d.components) + " components" : "root-datum only";
    if (!d.component_shape.empty()) witness += " (" + d.component_shape + ")";
    c.claim("catalog:" + d.id(), d.citation, pass_fail(chk.ok()), witness, chk.detail);
    arr.push_back(sheet_json(d));
  }
  c.rep.sections["catalog"][head] = arr;
  c.rep.text.push_back(catalog_report(t, n, c.cfg.isogeny));
}

// ---- verify-slice ----

void verify_part(Context& c, char t, int n) {
  const std::uint32_t q = *c.cfg.q;
  json sec = json::object();
  for (const auto& d : sheet_catalog(t, n, c.cfg.isogeny)) {
    if (!c.cfg.sheet.empty() && d.label != c.cfg.sheet) continue;
    json j;
    if (t == 'E') {
      auto er = etype_root_checks(n, q);
      c.claim("root-level:" + d.id(), d.citation, pass_fail(er.ok()),
              "beta = " + er.beta + ", gamma = " + er.gamma + ", dim " + std::to_string(er.class_dimension), join(er.notes, "; "));
      c.claim("components:" + d.id(), d.citation, pass_fail(er.ok() && er.components == d.components),
              std::to_string(er.components) + " components");
      j["class_dimension"] = er.class_dimension;
      j["components"] = er.components;
      j["notes"] = er.notes;
      sec[d.id()] = j;
      continue;
    }
    std::unique_ptr<SliceFamily> f;
    try {
      f = make_family(d, q);
    } catch (const std::exception& e) {
      c.claim("components:" + d.id(), d.citation, "fail", e.what());
      continue;
    }
    SliceConfig sc;
    sc.p = q;
    sc.n_in = sc.n_out = c.cfg.samples;
    sc.seed = c.cfg.seed;
    sc.threads = c.cfg.threads;
    auto cert = certify_components(*f, sc);
    std::string status = cert.certified ? "pass" : "fail";
    std::string witness = std::to_string(cert.count) + " components";
    for (const auto& r : cert.components)
      if (!r.ok()) {
        witness = "component " + std::to_string(r.index) + ": " + (r.counterexample.empty() ? "rejected samples" : r.counterexample);
        break;
      }
    if (!cert.in_hypothesis && std::all_of(cert.components.begin(), cert.components.end(), [](const ComponentRecord& r) { return r.ok(); })) {
      status = "info";
      witness += ", outside the rank hypothesis";
    }
    c.claim("components:" + d.id(), d.citation, status, witness, cert.transcript.empty() ? "" : cert.transcript.front());
    j["components"] = cert.count;
    j["expected"] = cert.expected;
    j["certified"] = cert.certified;
    j["transcript"] = cert.transcript;
    try {
      auto g = gamma_checks(*f, sc);
      c.claim("gamma:" + d.id(), d.citation, pass_fail(g.ok()),
              "Gamma_w " + g.shape + " over F_" + std::to_string(g.p) + ": " + std::to_string(g.transitive) + "/" +
                  std::to_string(g.classes) + " classes transitive",
              join(g.failures, "; "));
      j["gamma"] = {{"shape", g.shape}, {"order", g.order}, {"claimed_points", g.claimed_points}, {"classes", g.classes},
                    {"stable", g.stable}, {"transitive", g.transitive}};
    } catch (const std::exception& e) {
      c.claim("gamma:" + d.id(), d.citation, "fail", e.what());
    }
    sec[d.id()] = j;
  }
  c.rep.sections["verify-slice"][type_label(t, n)] = sec;
}

// ---- sev-check ----

void sev_part(Context& c, char t, int n) {
  auto rs = RootSystem::build(t, n);
  const int bases = std::max(20, c.cfg.samples);
  json arr = json::array();
  int k = 0;
  for (const auto& cls : involution_classes(*rs)) {
    const auto& w = cls.front();
    std::mt19937_64 rng(c.cfg.seed * 1000003ULL + static_cast<std::uint64_t>(k));
    int valid = 0, complement = 0, maxlen = 0;
    std::string first;
    for (int trial = 0; trial < bases; ++trial) {
      auto ch = random_eigenbasis(w, rng, trial % 2 == 1);
      auto ps = positive_system(ch);
      auto r = validate_system(ps, w);
      bool ml = check_max_length(w, ps);
      valid += r.valid;
      complement += r.complement_ok;
      maxlen += ml;
      if (first.empty() && !(r.valid && r.complement_ok && ml)) first = "basis " + std::to_string(trial) + ": " + r.detail;
    }
    const bool ok = valid == bases && complement == bases && maxlen == bases;
    const std::string wl = word_str(w);
    c.claim("sev:" + rs->label() + ":" + wl, "adapted positive system of an involution", pass_fail(ok),
            ok ? std::to_string(bases) + "/" + std::to_string(bases) + " bases" : first);
    arr.push_back({{"w", wl}, {"class_size", cls.size()}, {"bases", bases}, {"valid", valid}, {"complement", complement}, {"max_length", maxlen}});
    ++k;
  }
  c.rep.sections["sev-check"][rs->label()] = arr;
}

// ---- oracle ----

void oracle_part(Context& c, char t, int n, std::uint32_t q) {
  auto G = FiniteGroup::enumerate(t, n, q, c.cfg.budget);
  auto cd = conjugacy_classes(G);
  auto s = run_oracle_suite(G, cd);
  const std::string g = G.name();
  const std::string inv = "oracle invariant";
  c.claim("oracle:" + g + ":order", inv, pass_fail(s.order == s.order_formula), "|G| = " + std::to_string(s.order));
  c.claim("oracle:" + g + ":classes", inv, pass_fail(s.sizes_divide),
          std::to_string(s.classes) + " classes, " + std::to_string(s.geometric_classes) + " geometric");
  c.claim("oracle:" + g + ":bruhat", inv, pass_fail(s.bruhat_partition),
          s.cell_failures.empty() ? "cells of size |B| q^l(w) cover G" : s.cell_failures.front());
  json rows = json::array();
  std::ostringstream tab;
  tab << "# dimension formula on " << g << "\n";
  tab << "class | size | Jordan data | dim | w_O | l(w_O) | rk(1-w_O) | spherical | check\n";
  for (const auto& r : s.rows) {
    const std::string id = "oracle:" + g + ":dim:" + std::to_string(r.class_index);
    std::string witness = "dim " + std::to_string(r.dimension) + (r.equality_at_wO ? " = " : " > ") + std::to_string(r.length) +
                          " + " + std::to_string(r.minus_rank) + " at w_O " + r.w_O;
    c.claim(id, "dim O >= l(w) + rk(1-w), equality iff spherical", pass_fail(r.ok()), witness, r.jordan);
    rows.push_back({{"class", r.class_index}, {"rep", r.rep}, {"size", r.size}, {"jordan", r.jordan}, {"dimension", r.dimension},
                    {"w_O", r.w_O}, {"length", r.length}, {"minus_rank", r.minus_rank}, {"unique_max", r.unique_max},
                    {"inequality", r.inequality}, {"equality_at_w_O", r.equality_at_wO}, {"spherical", r.spherical},
                    {"kind", r.spherical_kind}});
    tab << r.class_index << " | " << r.size << " | " << r.jordan << " | " << r.dimension << " | " << r.w_O << " | " << r.length
        << " | " << r.minus_rank << " | " << (r.spherical ? "yes" : "no") << " | " << (r.ok() ? "ok" : "FAIL") << "\n";
  }
  c.claim("oracle:" + g + ":catalog-w", "w_O of a spherical class equals w_S of its sheet", pass_fail(s.catalog_mismatches.empty()),
          s.catalog_mismatches.empty() ? std::to_string(s.catalog_compared) + " comparisons" : s.catalog_mismatches.front());
  json sec;
  sec["group"] = g;
  sec["order"] = s.order;
  sec["classes"] = s.classes;
  sec["geometric_classes"] = s.geometric_classes;
  sec["rows"] = rows;
  if (c.cfg.oracle_slices) {
    json so = json::array();
    for (const auto& r : slice_orbit_suite(G, cd)) {
      std::string witness = std::to_string(r.intersection) + " points over F_" + std::to_string(q) + ", Gamma_w " +
                            std::to_string(r.gamma_rational) + "/" + std::to_string(r.gamma_order) + " rational, " +
                            std::to_string(r.orbits) + " orbit" + (r.orbits == 1 ? "" : "s");
      if (r.intersection == 0) witness = "nonempty over " + r.nonempty_field;
      c.claim("oracle:" + g + ":slice:" + r.jordan, "O cap wT^wU^w is one Gamma_w-orbit", pass_fail(r.ok()), witness, join(r.log, "; "));
      so.push_back({{"jordan", r.jordan}, {"w", r.w}, {"wdot", r.wdot_source}, {"slice_points", r.slice_points},
                    {"intersection", r.intersection}, {"field", r.nonempty_field}, {"gamma_order", r.gamma_order},
                    {"gamma_rational", r.gamma_rational}, {"stable", r.stable}, {"orbits_rational", r.orbits_rational},
                    {"orbits", r.orbits}, {"escalated", r.escalated}, {"log", r.log}});
    }
    sec["slice_orbits"] = so;
  }
  if (c.cfg.oracle_containment && q >= 5 && G.field().degree() == 1) {
    json co = json::array();
    for (const auto& d : sheet_catalog(t, n)) {
      try {
        auto r = slice_containment(G, cd, d);
        c.claim("oracle:" + g + ":containment:" + r.sheet, d.citation, pass_fail(r.ok()),
                std::to_string(r.family_in_group) + " family points, " + std::to_string(r.oracle_points) + " oracle points", r.note);
        co.push_back({{"sheet", r.sheet}, {"family_points", r.family_points}, {"family_in_group", r.family_in_group},
                      {"oracle_points", r.oracle_points}, {"missing_from_oracle", r.missing_from_oracle},
                      {"missing_from_family", r.missing_from_family}});
      } catch (const std::exception& e) {
        c.claim("oracle:" + g + ":containment:" + d.id(), d.citation, "info", std::string("no family: ") + e.what());
      }
    }
    sec["containment"] = co;
  }
  c.rep.sections["oracle"][g] = sec;
  c.rep.text.push_back(tab.str());
}

bool oracle_supported(char t, int n) { return (t == 'A' && n <= 2) || ((t == 'B' || t == 'C') && n == 2); }

}  // namespace

RunConfig resolve(RunConfig cfg) {
  static const std::vector<std::string> commands{"catalog", "verify-slice", "oracle", "sev-check", "all"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
    throw std::invalid_argument("unknown command '" + cfg.command + "' (catalog, verify-slice, oracle, sev-check, all)");
  if (cfg.format != "text" && cfg.format != "json") throw std::invalid_argument("--format must be text or json");
  if (cfg.type != 0 && !valid_rank(cfg.type, cfg.rank))
    throw std::invalid_argument("no root system " + type_label(cfg.type, cfg.rank) + " (A1+, B2+, C2+, D4+, E6-8, F4, G2)");
  if (cfg.type == 0 && cfg.command != "all") throw std::invalid_argument("--type and --rank are required for " + cfg.command);
  if (cfg.samples <= 0) cfg.samples = default_samples();
  if (cfg.budget <= 0) cfg.budget = default_budget();
  if (!cfg.q) cfg.q = cfg.command == "oracle" ? 3u : default_prime();
  if (!cfg.sheet.empty()) {
    if (cfg.type == 0) throw std::invalid_argument("--sheet needs --type and --rank");
    auto cat = sheet_catalog(cfg.type, cfg.rank, cfg.isogeny);
    std::vector<std::string> labels;
    for (const auto& d : cat) labels.push_back(d.label);
    if (std::find(labels.begin(), labels.end(), cfg.sheet) == labels.end())
      throw std::invalid_argument("no sheet '" + cfg.sheet + "' in " + type_label(cfg.type, cfg.rank) + " (available: " +
                                  (labels.empty() ? "none" : join(labels, ", ")) + ")");
  }
  if (cfg.command == "oracle" && !oracle_supported(cfg.type, cfg.rank))
    throw std::invalid_argument("the oracle covers A1, A2, B2 and C2, not " + type_label(cfg.type, cfg.rank));
  if (cfg.command == "sev-check" && cfg.type == 'E' && cfg.rank == 8)
    throw std::invalid_argument("sev-check on E8 is outside the desk-scale budget");
  return cfg;
}

bool Report::ok() const {
  return std::none_of(claims.begin(), claims.end(), [](const ClaimRow& r) { return r.status == "fail"; });
}

Report run(const RunConfig& raw) {
  Report rep;
  rep.config = resolve(raw);
  const RunConfig& cfg = rep.config;
  Context c{cfg, rep};
  const std::string& cmd = cfg.command;
  if (cmd == "catalog") {
    catalog_part(c, cfg.type, cfg.rank);
  } else if (cmd == "verify-slice") {
    verify_part(c, cfg.type, cfg.rank);
  } else if (cmd == "sev-check") {
    sev_part(c, cfg.type, cfg.rank);
  } else if (cmd == "oracle") {
    oracle_part(c, cfg.type, cfg.rank, *cfg.q);
  } else if (cfg.type != 0) {
    catalog_part(c, cfg.type, cfg.rank);
    verify_part(c, cfg.type, cfg.rank);
    if (cfg.type != 'E' || cfg.rank != 8) sev_part(c, cfg.type, cfg.rank);
    if (oracle_supported(cfg.type, cfg.rank)) oracle_part(c, cfg.type, cfg.rank, 3);
  } else {
    const std::vector<std::pair<char, int>> sweep{{'A', 3}, {'B', 2}, {'B', 3}, {'B', 4}, {'C', 2}, {'C', 3}, {'C', 4}, {'D', 4}, {'D', 5}, {'E', 6}, {'E', 7}};
    for (auto [t, n] : sweep) catalog_part(c, t, n);
    for (auto [t, n] : sweep) verify_part(c, t, n);
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'B', 4}, {'D', 4}}) sev_part(c, t, n);
    for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'A', 1, 3}, {'A', 1, 5}, {'A', 2, 3}, {'C', 2, 3}, {'B', 2, 3}})
      oracle_part(c, t, n, q);
  }
  return rep;
}

std::string to_json(const Report& r) {
  const RunConfig& cfg = r.config;
  json j;
  j["schema"] = kReportSchema;
  j["command"] = cfg.command;
  json conf;
  conf["type"] = cfg.type ? std::string(1, cfg.type) : std::string();
  conf["rank"] = cfg.rank;
  conf["isogeny"] = isogeny_label(cfg.isogeny);
  conf["sheet"] = cfg.sheet;
  conf["q"] = cfg.q ? *cfg.q : 0;
  conf["samples"] = cfg.samples;
  conf["seed"] = cfg.seed;
  conf["budget"] = cfg.budget;
  j["config"] = conf;
  json claims = json::array();
  int failed = 0;
  for (const auto& c : r.claims) {
    claims.push_back({{"id", c.id}, {"citation", c.citation}, {"status", c.status}, {"witness", c.witness}, {"detail", c.detail}});
    failed += c.status == "fail";
  }
  j["claims"] = claims;
  j["sections"] = r.sections;
  j["summary"] = {{"claims", r.claims.size()}, {"failed", failed}, {"ok", r.ok()}};
  return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
  const RunConfig& cfg = r.config;
  std::ostringstream os;
  os << "sheetslice " << cfg.command;
  if (cfg.type) os << " " << type_label(cfg.type, cfg.rank);
  if (!cfg.sheet.empty()) os << " sheet " << cfg.sheet;
  os << " q " << (cfg.q ? *cfg.q : 0) << " samples " << cfg.samples << " seed " << cfg.seed << "\n\n";
  for (const auto& t : r.text) os << t << "\n";
  std::size_t w = 6;
  for (const auto& c : r.claims) w = std::max(w, c.id.size());
  os << "status | " << std::string("claim") << std::string(w - 5, ' ') << " | witness\n";
  int failed = 0;
  for (const auto& c : r.claims) {
    os << c.status << std::string(6 - std::min<std::size_t>(6, c.status.size()), ' ') << " | " << c.id << std::string(w - c.id.size(), ' ')
       << " | " << c.witness << "\n";
    failed += c.status == "fail";
  }
  os << "\n" << r.claims.size() << " claims, " << failed << " failed: " << (r.ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace sheetslice
