#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/counting.hpp"
#include "hypercount/errors.hpp"
#include "hypercount/graph.hpp"
#include "hypercount/motive.hpp"
#include "hypercount/rationalfit.hpp"

namespace py = pybind11;
namespace hc = hypercount;

namespace {

py::int_ to_py(const hc::BigInt& v) { return py::int_(py::str(v.str())); }

hc::BigInt to_big(const py::int_& v) {
  return hc::BigInt(py::str(v).cast<std::string>());
}

py::list poly_coeffs(const hc::LPolynomial& p) {
  py::list out;
  for (const auto& c : p.coefficients()) out.append(to_py(c));
  return out;
}

py::dict record_dict(const hc::CountRecord& r) {
  py::dict d;
  d["graph"] = r.graph;
  d["q"] = r.q;
  d["p"] = r.p;
  d["k"] = r.k;
  d["method"] = r.method;
  d["count"] = to_py(r.count);
  d["n_y"] = r.n_y ? py::object(to_py(*r.n_y)) : py::none();
  d["n_z"] = r.n_z ? py::object(to_py(*r.n_z)) : py::none();
  d["elapsed_seconds"] = r.elapsed_seconds;
  return d;
}

hc::StratifiedMode parse_mode(const std::string& mode) {
  if (mode == "baseline") return hc::StratifiedMode::kBaseline;
  if (mode == "accelerated") return hc::StratifiedMode::kAccelerated;
  throw hc::UsageError("mode must be baseline or accelerated");
}

hc::Graph graph_from_selector(const std::string& sel) {
  if (sel == "xstrip") return hc::xstrip_graph();
  if (sel.rfind("ws:", 0) == 0) return hc::ws_graph(std::stoi(sel.substr(3)));
  if (sel.rfind("file:", 0) == 0) {
    std::ifstream in(sel.substr(5));
    if (!in) throw hc::UsageError("cannot open graph file: " + sel.substr(5));
    return hc::read_graph(in);
  }
  throw hc::UsageError("graph selector must be xstrip, ws:<n> or file:<path>");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact F_q point counts of graph hypersurfaces";

  py::register_exception<hc::NotAPrimePower>(m, "NotAPrimePower");
  py::register_exception<hc::BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<hc::TooFewPoints>(m, "TooFewPoints");
  py::register_exception<hc::DivisibilityViolation>(m, "DivisibilityViolation");
  py::register_exception<hc::NotACone>(m, "NotACone");

  py::class_<hc::Fq>(m, "Field")
      .def(py::init<std::uint64_t>(), py::arg("q"))
      .def_property_readonly("p", &hc::Fq::p)
      .def_property_readonly("k", &hc::Fq::k)
      .def_property_readonly("q", &hc::Fq::q)
      .def_property_readonly("modulus", &hc::Fq::modulus)
      .def("add", &hc::Fq::add)
      .def("sub", &hc::Fq::sub)
      .def("mul", &hc::Fq::mul)
      .def("neg", &hc::Fq::neg)
      .def("inv", &hc::Fq::inv)
      .def("pow", &hc::Fq::pow)
      .def("digits", &hc::Fq::digits)
      .def("elements", [](const hc::Fq& f) { return hc::enumerate_elements(f); });

  m.def("proj_space", [](int n) { return poly_coeffs(hc::proj_space(n)); });
  m.def("ws_y", [](int i) {
    hc::WsPair p = hc::ws_y(i);
    return py::make_tuple(poly_coeffs(p.y), poly_coeffs(p.y_prime));
  });
  m.def("ws_T", [](int n) { return poly_coeffs(hc::ws_T(n)); });
  m.def("ws_class", [](int n) { return poly_coeffs(hc::ws_class(n)); },
        "Coefficients (ascending powers of L) of the projective class of the "
        "wheel-with-spokes hypersurface");
  m.def("ws_class_str", [](int n) { return hc::ws_class(n).to_string(); });
  m.def("predicted_count",
        [](std::uint64_t q) { return to_py(hc::predicted_count(q)); });

  m.def("spanning_tree_count", [](const std::string& sel) {
    return to_py(hc::spanning_tree_count(graph_from_selector(sel)));
  });
  m.def("is_primitively_log_divergent", [](const std::string& sel) {
    return hc::is_primitively_log_divergent(graph_from_selector(sel));
  });

  m.def(
      "brute_force_count",
      [](const std::string& sel, std::uint32_t q, bool override_budget) {
        if (sel == "xstrip")
          return record_dict(hc::brute_force_count_xstrip(q, override_budget));
        if (sel.rfind("ws:", 0) == 0)
          return record_dict(
              hc::brute_force_count_ws(std::stoi(sel.substr(3)), q, override_budget));
        return record_dict(
            hc::brute_force_count(graph_from_selector(sel), sel, q, override_budget));
      },
      py::arg("graph"), py::arg("q"), py::arg("override_budget") = false);

  m.def(
      "stratified_count_xstrip",
      [](std::uint32_t q, const std::string& mode, int workers,
         const std::optional<std::string>& checkpoint) {
        if (workers == 1 && !checkpoint)
          return record_dict(hc::stratified_count_xstrip(q, parse_mode(mode)));
        if (!checkpoint)
          throw hc::UsageError("multi-worker runs need a checkpoint path");
        return record_dict(
            hc::run_sharded(q, parse_mode(mode), workers, *checkpoint));
      },
      py::arg("q"), py::arg("mode") = "accelerated", py::arg("workers") = 1,
      py::arg("checkpoint") = py::none());

  m.def("projective_count", [](const py::int_& affine, std::uint32_t q) {
    return to_py(hc::projective_count(to_big(affine), q));
  });

  m.def("lagrange_fit", [](const std::vector<std::pair<py::int_, py::int_>>& pts) {
    std::vector<std::pair<hc::BigInt, hc::BigInt>> cpts;
    cpts.reserve(pts.size());
    for (const auto& [x, y] : pts) cpts.emplace_back(to_big(x), to_big(y));
    return hc::lagrange_fit(cpts).coefficient_strings();
  });

  m.def("reduced_fit", [](const std::vector<std::pair<std::uint32_t, py::int_>>& vals) {
    std::vector<hc::CountRecord> records;
    records.reserve(vals.size());
    for (const auto& [q, count] : vals) {
      hc::CountRecord r;
      r.graph = "xstrip";
      r.q = q;
      r.method = "supplied";
      r.count = to_big(count);
      records.push_back(std::move(r));
    }
    hc::FitReport report = hc::reduced_fit(records);
    py::dict d;
    d["verdict"] = report.verdict();
    d["non_polynomial_witness"] = report.non_polynomial_witness;
    d["f_tilde"] = report.f_tilde.coefficient_strings();
    py::list held;
    for (const auto& h : report.held_out) {
      py::dict hd;
      hd["q"] = h.q;
      hd["match"] = h.match;
      held.append(hd);
    }
    d["held_out"] = held;
    return d;
  });

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
