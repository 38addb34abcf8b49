#include "sheetslice/fforacle.hpp"
#include "sheetslice/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace sheetslice;
  CLI::App app{"Spherical-class sheets: catalog, slice certification and finite-field oracle"};
  RunConfig cfg;
  std::string type, isogeny = "sc";
  std::uint32_t q = 0;
  app.add_option("command", cfg.command, "catalog | verify-slice | oracle | sev-check | all")->required();
  app.add_option("--type", type, "root system type A-G");
  app.add_option("--rank", cfg.rank, "rank");
  app.add_option("--isogeny", isogeny, "sc | adj | classical");
  app.add_option("--sheet", cfg.sheet, "sheet label, e.g. S, S', S2, S_1");
  app.add_option("--q", q, "field size (default SHEETSLICE_P for verify-slice, 3 for oracle)");
  app.add_option("--samples", cfg.samples, "samples per component (default SHEETSLICE_SAMPLES)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--budget", cfg.budget, "oracle element budget (default SHEETSLICE_BUDGET)");
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  app.add_flag("!--no-slices", cfg.oracle_slices, "oracle: skip the slice-orbit suite");
  app.add_flag("!--no-containment", cfg.oracle_containment, "oracle: skip the containment check");
  app.add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", cfg.output, "write the report here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!type.empty()) {
      if (type.size() != 1) throw std::invalid_argument("--type is a single letter");
      cfg.type = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
    }
    cfg.isogeny = parse_isogeny(isogeny);
    if (q) cfg.q = q;
    Report rep = run(cfg);
    const std::string out = cfg.format == "json" ? to_json(rep) : to_text(rep);
    if (cfg.output.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + cfg.output);
      f << out;
    }
    return rep.ok() ? 0 : 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "; estimated cost " << e.estimated
              << " elements. Raise --budget or SHEETSLICE_BUDGET, or pick a smaller q.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
