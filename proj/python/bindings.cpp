#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntacert/cli.hpp"
#include "ntacert/structure.hpp"

namespace py = pybind11;
using namespace ntacert;

namespace {

// Terms are given in SMT-LIB syntax over the listed variables.
std::vector<Term> parse_terms(const std::vector<std::string>& terms, const std::vector<std::string>& vars) {
  std::string text;
  for (const auto& v : vars) text += "(declare-fun " + v + " () Real)";
  for (const auto& t : terms) text += "(assert (= " + t + " 0))";
  const Formula f = parse_normalized(text);
  std::vector<Term> out;
  for (const auto& c : f.clauses) out.push_back(c.literals.at(0).term());
  return out;
}

py::dict stats_dict(const search::SearchStats& s) {
  py::dict d;
  d["points"] = s.points;
  d["selectors"] = s.selectors;
  d["instantiations"] = s.instantiations;
  d["box_searches"] = s.box_searches;
  d["degree_queries"] = s.degree_queries;
  d["forced_prunes"] = s.forced_prunes;
  d["self_check_failures"] = s.self_check_failures;
  d["dnf_restart"] = s.dnf_restart;
  d["dnf_conjuncts"] = s.dnf_conjuncts;
  d["timed_out"] = s.timed_out;
  d["seconds"] = s.seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ntacert, m) {
  m.doc() = "Certificate search and checking for SMT formulas over nonlinear real arithmetic";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<cert::CertificateError>(m, "CertificateError", PyExc_ValueError);

  py::enum_<search::BoxStrategy>(m, "BoxStrategy")
      .value("EPS", search::BoxStrategy::Eps)
      .value("GRID", search::BoxStrategy::Grid)
      .value("EPS_THEN_GRID", search::BoxStrategy::EpsThenGrid);

  py::class_<search::SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("sort_literals", &search::SearchConfig::sort_literals)
      .def_readwrite("check_forced_literals", &search::SearchConfig::check_forced_literals)
      .def_readwrite("filter_overconstr", &search::SearchConfig::filter_overconstr)
      .def_readwrite("filter_overconstr_v", &search::SearchConfig::filter_overconstr_v)
      .def_readwrite("filter_rank_deficient", &search::SearchConfig::filter_rank_deficient)
      .def_readwrite("kearfott_ordering", &search::SearchConfig::kearfott_ordering)
      .def_readwrite("boxes", &search::SearchConfig::boxes)
      .def_readwrite("polish_points", &search::SearchConfig::polish_points)
      .def_readwrite("eps_lit", &search::SearchConfig::eps_lit)
      .def_readwrite("k", &search::SearchConfig::k)
      .def_readwrite("timeout_ms", &search::SearchConfig::timeout_ms)
      .def_readwrite("seed", &search::SearchConfig::seed)
      .def_readwrite("degree_budget", &search::SearchConfig::degree_budget);

  m.def("preset", [](const std::string& id) {
    auto c = cli::preset(id);
    if (!c) throw py::value_error("unknown configuration '" + id + "'");
    return *c;
  }, py::arg("id"));
  m.def("preset_ids", &cli::preset_ids);

  m.def("normalize", [](const std::string& text) { return print_formula(parse_normalized(text)); },
        py::arg("text"), "Normalized formula as SMT-LIB text.");
  m.def("formula_digest", [](const std::string& text) { return cert::formula_digest(parse_normalized(text)); },
        py::arg("text"));

  m.def(
      "solve",
      [](const std::string& text, const search::SearchConfig& config) {
        const Formula phi = parse_normalized(text);
        search::SearchOutcome o;
        {
          py::gil_scoped_release release;
          o = search::solve(phi, config);
        }
        py::object certificate = py::none();
        if (o.certificate) certificate = py::str(cert::serialize(*o.certificate));
        return py::make_tuple(o.result == search::Result::Sat ? "sat" : "unknown", certificate,
                              stats_dict(o.stats));
      },
      py::arg("text"), py::arg("config") = search::SearchConfig{},
      "Returns (result, certificate JSON or None, statistics).");

  m.def(
      "check",
      [](const std::string& text, const std::string& certificate, std::size_t degree_budget) {
        const Formula phi = parse_normalized(text);
        py::dict d;
        cert::Certificate c;
        try {
          c = cert::deserialize(certificate);
        } catch (const cert::CertificateError& e) {
          d["verdict"] = "invalid";
          d["reason"] = std::string("format: ") + e.what();
          d["conditions"] = py::list();
          d["degree"] = py::none();
          d["seconds"] = 0.0;
          return d;
        }
        cert::CheckOptions opts;
        opts.degree_budget = degree_budget;
        cert::CheckReport r;
        {
          py::gil_scoped_release release;
          r = cert::check_certificate(phi, c, opts);
        }
        d["verdict"] = cert::verdict_name(r.verdict);
        d["reason"] = r.reason;
        py::list conds;
        for (const auto& cond : r.conditions)
          conds.append(py::make_tuple(cond.name, cond.checked, cond.passed, cond.detail));
        d["conditions"] = conds;
        d["degree"] = r.degree ? py::object(py::int_(*r.degree)) : py::object(py::none());
        d["warnings"] = r.warnings;
        d["seconds"] = r.seconds;
        return d;
      },
      py::arg("text"), py::arg("certificate"), py::arg("degree_budget") = topdeg::kDefaultBudget);

  m.def(
      "degree",
      [](const std::vector<std::string>& terms, const std::vector<std::string>& vars,
         const std::vector<std::pair<double, double>>& box, std::size_t budget) {
        if (box.size() != vars.size()) throw py::value_error("one interval per variable is required");
        std::vector<ia::Interval> ivs;
        for (const auto& [lo, hi] : box) ivs.push_back({lo, hi});
        const topdeg::DegreeResult r = topdeg::degree(parse_terms(terms, vars), ia::NamedBox(vars, ivs), budget);
        return py::make_tuple(topdeg::status_name(r.status),
                              r.status == topdeg::Status::Degree ? py::object(py::int_(r.degree)) : py::object(py::none()));
      },
      py::arg("terms"), py::arg("vars"), py::arg("box"), py::arg("budget") = topdeg::kDefaultBudget,
      "Returns (status, degree or None).");

  m.def(
      "dm_decompose",
      [](const std::vector<std::string>& terms, const std::vector<std::string>& vars) {
        const auto eqs = parse_terms(terms, vars);
        const auto g = structure::build_graph(eqs, vars);
        const auto d = structure::dm_decompose(g);
        auto part = [&](const structure::Part& p) {
          py::dict out;
          out["equations"] = p.equations;
          std::vector<std::string> names;
          for (auto v : p.variables) names.push_back(vars[v]);
          out["variables"] = names;
          return out;
        };
        py::dict out;
        out["over"] = part(d.over);
        out["under"] = part(d.under);
        out["well"] = part(d.well);
        return out;
      },
      py::arg("terms"), py::arg("vars"));
}
