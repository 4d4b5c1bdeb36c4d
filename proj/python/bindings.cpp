#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "pencilrank/commands.hpp"
#include "pencilrank/errors.hpp"

namespace py = pybind11;
namespace cmd = pencilrank::commands;
using pencilrank::io::Json;

namespace {

pencilrank::MatrixTuple tuple(const std::string& text) {
  return pencilrank::io::tuple_from_json(pencilrank::io::parse_json(text));
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact orbit-equivalence decisions for matrix tuples; documents are JSON strings.";

  // Translators are tried newest first, so the base class goes first.
  auto base = py::register_exception<pencilrank::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<pencilrank::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<pencilrank::FormatError>(m, "FormatError", base.ptr());
  py::register_exception<pencilrank::InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def(
      "similar",
      [](const std::string& a, const std::string& b, std::uint64_t seed, std::optional<std::string> involution) {
        std::optional<pencilrank::InvolutionKind> kind;
        if (involution) kind = pencilrank::parse_involution(*involution);
        return dump(cmd::similar(tuple(a), tuple(b), seed, kind));
      },
      py::arg("a"), py::arg("b"), py::arg("seed") = 0, py::arg("involution") = py::none());
  m.def(
      "lr_equiv", [](const std::string& a, const std::string& b, std::uint64_t seed) {
        return dump(cmd::lr_equiv(tuple(a), tuple(b), seed));
      },
      py::arg("a"), py::arg("b"), py::arg("seed") = 0);
  m.def(
      "sl_equiv",
      [](const std::string& a, const std::string& b, std::uint64_t seed, bool outside_nullcone) {
        return dump(cmd::sl_equiv(tuple(a), tuple(b), seed, outside_nullcone));
      },
      py::arg("a"), py::arg("b"), py::arg("seed") = 0, py::arg("outside_nullcone") = false);
  m.def(
      "witness", [](const std::string& a, const std::string& b, std::uint64_t seed) {
        return dump(cmd::witness(tuple(a), tuple(b), seed));
      },
      py::arg("a"), py::arg("b"), py::arg("seed") = 0);
  m.def(
      "verify", [](const std::string& verdict) { return cmd::verify(pencilrank::io::parse_json(verdict)); },
      py::arg("verdict"), "Empty string when the verdict checks out, otherwise the reason.");
  m.def(
      "pencil_rank",
      [](const std::string& pencil, const std::string& a) {
        return cmd::pencil_rank(pencilrank::io::parse_json(pencil), tuple(a));
      },
      py::arg("pencil"), py::arg("a"));
  m.def(
      "ncpoly_rank", [](const std::string& expr, const std::string& a) { return cmd::ncpoly_rank(expr, tuple(a)); },
      py::arg("expr"), py::arg("a"));
  m.def(
      "linearize",
      [](const std::string& expr, std::size_t vars, const std::string& field) {
        return dump(cmd::linearize(expr, vars, pencilrank::Field::parse(field)));
      },
      py::arg("expr"), py::arg("m"), py::arg("field") = "Q");
  m.def(
      "decompose", [](const std::string& a, bool quiver, std::uint64_t seed) {
        return dump(cmd::decompose(tuple(a), quiver, seed));
      },
      py::arg("a"), py::arg("quiver") = false, py::arg("seed") = 0);
  m.def(
      "demo",
      [](const std::string& name, std::uint64_t seed) {
        if (name == "counterexample") return dump(cmd::demo_counterexample(seed).to_json());
        if (name == "hadwin-larson") return dump(cmd::demo_hadwin_larson(seed).to_json());
        throw py::value_error("unknown demo '" + name + "'");
      },
      py::arg("name"), py::arg("seed") = 0);
}
