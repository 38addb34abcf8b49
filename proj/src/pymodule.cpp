#include "sheetslice/fforacle.hpp"
#include "sheetslice/report.hpp"
#include "sheetslice/sliceverify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sheetslice;

namespace {

char type_char(const std::string& t) {
  if (t.size() != 1) throw std::invalid_argument("type is a single letter");
  return static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
}

py::dict sheet_dict(const SheetDescriptor& d) {
  py::dict r;
  r["id"] = d.id();
  r["label"] = d.label;
  r["semisimple"] = d.semisimple;
  r["unipotent"] = d.unipotent;
  r["pi"] = d.pi;
  r["length"] = d.length();
  r["minus_rank"] = d.minus_rank();
  r["class_dimension"] = d.class_dimension();
  r["components"] = d.components;
  r["component_shape"] = d.component_shape;
  r["sheet_smooth"] = d.sheet_smooth;
  r["stratum_smooth"] = d.stratum_smooth;
  r["in_hypothesis"] = d.in_hypothesis;
  r["citation"] = d.citation;
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sheets of spherical conjugacy classes: catalog, slice certification, finite-field oracle";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def(
      "catalog",
      [](const std::string& type, int rank, const std::string& isogeny) {
        py::list out;
        for (const auto& d : sheet_catalog(type_char(type), rank, parse_isogeny(isogeny))) out.append(sheet_dict(d));
        return out;
      },
      py::arg("type"), py::arg("rank"), py::arg("isogeny") = "sc");

  m.def(
      "certify",
      [](const std::string& type, int rank, const std::string& sheet, std::uint32_t p, int samples, std::uint64_t seed) {
        auto f = make_family(find_sheet(sheet_catalog(type_char(type), rank), sheet), p);
        SliceConfig cfg;
        cfg.p = p;
        cfg.n_in = cfg.n_out = samples;
        cfg.seed = seed;
        ComponentCertificate c;
        {
          py::gil_scoped_release release;
          c = certify_components(*f, cfg);
        }
        py::dict r;
        r["sheet"] = c.sheet;
        r["count"] = c.count;
        r["expected"] = c.expected;
        r["certified"] = c.certified;
        r["in_hypothesis"] = c.in_hypothesis;
        r["transcript"] = c.transcript;
        return r;
      },
      py::arg("type"), py::arg("rank"), py::arg("sheet"), py::arg("p") = 1009, py::arg("samples") = 64, py::arg("seed") = 1);

  m.def(
      "gamma_shape",
      [](const std::string& type, int rank, const std::string& sheet, const std::string& isogeny) {
        auto iso = parse_isogeny(isogeny);
        const auto cat = sheet_catalog(type_char(type), rank, iso);
        const auto& d = find_sheet(cat, sheet);
        auto g = gamma_w(torus_data(d.w, iso));
        return g.shape.divisors;
      },
      py::arg("type"), py::arg("rank"), py::arg("sheet"), py::arg("isogeny") = "sc");

  m.def(
      "equation_chain",
      [](int n) {
        auto s = equation_chain_suite(n);
        py::dict r;
        r["combinations"] = s.combinations;
        r["passed"] = s.passed;
        r["controls"] = s.controls;
        r["controls_caught"] = s.controls_caught;
        return r;
      },
      py::arg("n"));

  m.def(
      "witness",
      [](const std::string& type, int rank, const std::string& stratum, std::uint32_t p) {
        auto w = stratum_singularity_witness(type_char(type), rank, stratum, p);
        return py::make_tuple(w.found, w.witness);
      },
      py::arg("type"), py::arg("rank"), py::arg("stratum"), py::arg("p") = 13);

  m.def("group_order", &FiniteGroup::order_formula, py::arg("type"), py::arg("rank"), py::arg("q"));

  m.def(
      "oracle_classes",
      [](const std::string& type, int rank, std::uint32_t q, long long budget) {
        auto G = FiniteGroup::enumerate(type_char(type), rank, q, budget > 0 ? budget : default_budget());
        auto cd = conjugacy_classes(G);
        auto s = run_oracle_suite(G, cd);
        py::list rows;
        for (const auto& r : s.rows) {
          py::dict d;
          d["size"] = r.size;
          d["jordan"] = r.jordan;
          d["dimension"] = r.dimension;
          d["w_O"] = r.w_O;
          d["length"] = r.length;
          d["minus_rank"] = r.minus_rank;
          d["spherical"] = r.spherical;
          d["ok"] = r.ok();
          rows.append(d);
        }
        py::dict out;
        out["group"] = s.group;
        out["order"] = s.order;
        out["ok"] = s.ok();
        out["rows"] = rows;
        return out;
      },
      py::arg("type"), py::arg("rank"), py::arg("q"), py::arg("budget") = 0);

  m.def(
      "run_report",
      [](const std::string& command, const std::string& type, int rank, const std::string& sheet, std::uint32_t q, int samples,
         std::uint64_t seed) {
        RunConfig cfg;
        cfg.command = command;
        if (!type.empty()) cfg.type = type_char(type);
        cfg.rank = rank;
        cfg.sheet = sheet;
        if (q) cfg.q = q;
        cfg.samples = samples;
        cfg.seed = seed;
        std::string out;
        {
          py::gil_scoped_release release;
          out = to_json(run(cfg));
        }
        return out;
      },
      py::arg("command"), py::arg("type") = "", py::arg("rank") = 0, py::arg("sheet") = "", py::arg("q") = 0,
      py::arg("samples") = 0, py::arg("seed") = 1, "JSON report in the sheetslice-report/1 schema");

  m.attr("REPORT_SCHEMA") = kReportSchema;
}
