#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "rtquant/engine.hpp"
#include "rtquant/oracle.hpp"
#include "rtquant/report.hpp"

namespace py = pybind11;
using namespace rtq;

namespace {

// Exact fractions cross the boundary as (num, den) strings; the Python side
// turns them into fractions.Fraction.
std::pair<std::string, std::string> frac(const Rational &r) { return {r.num_str(), r.den_str()}; }

std::vector<std::vector<std::string>> sets_of(const Generation &g) {
  std::vector<std::vector<std::string>> out;
  for (const auto &s : g.sets) {
    std::vector<std::string> nodes;
    for (const auto &n : s.nodes()) nodes.push_back(n.str());
    out.push_back(std::move(nodes));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_rtquant, m) {
  m.doc() = "Exact optimal quantizers for the nonhomogeneous R-triangle measure";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("vn", [](std::size_t n) { return frac(generation_at(n).vn); }, py::arg("n"));
  m.def("optimal_sets", [](std::size_t n) { return sets_of(generation_at(n)); }, py::arg("n"));
  m.def(
      "counts",
      [](std::size_t from, std::size_t to) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for_each_generation(to, [&](const Generation &g, const std::vector<TransitionEdge> &) {
          if (g.n >= from) out.emplace_back(g.n, g.sets.size());
        });
        return out;
      },
      py::arg("from_n"), py::arg("to_n"));
  m.def(
      "node_error",
      [](const std::string &node) { return frac(node_error(QuantNode::parse(node))); }, py::arg("node"));
  m.def(
      "node_point",
      [](const std::string &node) {
        const auto p = oracle::to_point2(QuantNode::parse(node).point());
        return std::pair{p.x, p.y};
      },
      py::arg("node"));
  m.def(
      "set_distortion",
      [](const std::vector<std::string> &nodes) {
        std::vector<QuantNode> parsed;
        for (const auto &s : nodes) parsed.push_back(QuantNode::parse(s));
        return frac(set_distortion(parsed));
      },
      py::arg("nodes"));

  m.def("enumeration_json", [](std::size_t n) { return enumeration_json(generation_at(n)); }, py::arg("n"));
  m.def("count_csv", &count_csv, py::arg("from_n"), py::arg("to_n"), py::arg("digits") = 6);
  m.def("tree_dot", &tree_dot, py::arg("from_n"), py::arg("to_n"));
  m.def(
      "plot_svg",
      [](std::size_t n, std::size_t depth, std::size_t set_index, double scale) {
        return plot_svg({.n = n, .depth = depth, .set_index = set_index, .scale = scale});
      },
      py::arg("n"), py::arg("depth") = 5, py::arg("set_index") = 0, py::arg("scale") = 600.0);

  m.def(
      "sample",
      [](std::size_t count, std::uint64_t seed) {
        const auto s = oracle::sample(count, seed);
        std::vector<std::pair<double, double>> out;
        out.reserve(s.points.size());
        for (const auto &p : s.points) out.emplace_back(p.x, p.y);
        return out;
      },
      py::arg("count"), py::arg("seed") = 1);
  m.def(
      "verify",
      [](std::size_t n, std::size_t samples, std::size_t restarts, std::uint64_t seed) {
        py::gil_scoped_release release;
        const auto r = verify({n, samples, restarts, seed});
        return std::pair{r.pass, r.text};
      },
      py::arg("n"), py::arg("samples") = 1'000'000, py::arg("restarts") = 20, py::arg("seed") = 1);
}
