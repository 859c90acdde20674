#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "writ/analyses.hpp"
#include "writ/cli.hpp"
#include "writ/error.hpp"
#include "writ/harness.hpp"
#include "writ/parser.hpp"

namespace py = pybind11;
using namespace writ;

namespace {

std::optional<OracleSpec> oracle_arg(const std::optional<std::string>& g) {
  if (!g) return std::nullopt;
  return OracleSpec::parse_inline(*g);
}

AnalysisOptions options(std::uint64_t fuel) {
  AnalysisOptions o;
  o.fuel.max_steps = fuel;
  return o;
}

Signature sig_for(const Term& t, const std::optional<std::string>& sig, const std::optional<OracleSpec>& g) {
  if (!sig) return signature_for(t, g);
  Signature s = signature_by_name(*sig);
  if (g) s = with_oracle(s, *g);
  return s;
}

py::dict report_dict(const VerifyReport& r) {
  py::dict d;
  d["term"] = r.term_id;
  d["analysis"] = r.analysis;
  d["status"] = status_name(r.status);
  d["predicted"] = r.predicted;
  d["observed"] = r.observed;
  d["details"] = r.details;
  return d;
}

}  // namespace

PYBIND11_MODULE(_writ, m) {
  m.doc() = "Cost, continuity and majorant analyses for a call-by-value language with bar recursion";

  const auto error = py::register_exception<Error>(m, "WritError");
  py::register_exception<TypeError>(m, "WritTypeError", error.ptr());
  py::register_exception<FuelExhausted>(m, "FuelExhausted", error.ptr());

  m.def(
      "typecheck",
      [](const std::string& src, std::optional<std::string> sig) {
        const Term t = parse_term(src);
        return typecheck(sig_for(t, sig, std::nullopt), t).to_string();
      },
      py::arg("source"), py::arg("sig") = py::none());

  m.def(
      "eval",
      [](const std::string& src, std::optional<std::string> oracle, std::uint64_t fuel, std::optional<std::string> sig) {
        const Term t = parse_term(src);
        const auto g = oracle_arg(oracle);
        const EvalResult r = eval(sig_for(t, sig, g), t, Fuel{fuel});
        py::dict d;
        d["value"] = r.value.to_string();
        d["steps"] = r.steps;
        d["queries"] = r.queries;
        return d;
      },
      py::arg("source"), py::arg("oracle") = py::none(), py::arg("fuel") = Fuel::kDefaultSteps,
      py::arg("sig") = py::none());

  m.def(
      "translate",
      [](const std::string& src) {
        const Term t = parse_term(src);
        const Signature sig = signature_for(t);
        const MetaTerm mt = translate(sig, t);
        return py::make_tuple(meta_typecheck(sig, mt).to_string(), mt.to_shared_string());
      },
      py::arg("source"));

  m.def(
      "exact_cost",
      [](const std::string& src, std::uint64_t fuel) {
        const Term t = parse_term(src);
        const CostReport c = exact_cost(t, options(fuel));
        return py::make_tuple(c.predicted, c.semantic.to_string());
      },
      py::arg("source"), py::arg("fuel") = Fuel::kDefaultSteps);

  m.def(
      "bounded_cost",
      [](const std::string& src, std::uint64_t fuel) {
        const Term t = parse_term(src);
        const CostReport c = bounded_cost(t, options(fuel));
        return py::make_tuple(c.predicted, c.semantic.nat());
      },
      py::arg("source"), py::arg("fuel") = Fuel::kDefaultSteps);

  m.def(
      "majorant", [](const std::string& src, std::uint64_t fuel) { return majorant(parse_term(src), options(fuel)).to_string(); },
      py::arg("source"), py::arg("fuel") = Fuel::kDefaultSteps);

  m.def(
      "modulus",
      [](const std::string& src, const std::string& oracle, std::uint64_t fuel) {
        const ModulusReport r = modulus(parse_term(src), OracleSpec::parse_inline(oracle), options(fuel));
        py::dict d;
        d["phi"] = r.phi;
        d["support"] = r.support;
        d["value"] = r.value;
        return d;
      },
      py::arg("source"), py::arg("oracle") = "identity", py::arg("fuel") = Fuel::kDefaultSteps);

  m.def(
      "verify_corpus",
      [](const std::string& path, std::uint64_t seed, std::uint64_t trials) {
        CorpusOptions o;
        o.modulus.seed = seed;
        o.modulus.trials = trials;
        py::list out;
        for (const auto& r : run_corpus(path, o)) out.append(report_dict(r));
        return out;
      },
      py::arg("path"), py::arg("seed") = 0, py::arg("trials") = 100);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
