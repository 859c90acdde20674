#include "writ/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "writ/analyses.hpp"
#include "writ/error.hpp"
#include "writ/harness.hpp"
#include "writ/meta.hpp"
#include "writ/parser.hpp"

namespace writ {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string path;
  std::string oracle;
  std::string sig;
  std::string corpus;
  std::uint64_t fuel = Fuel::kDefaultSteps;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  bool text = false;
};

OracleSpec load_oracle(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return OracleSpec::from_json(ss.str());
  }
  return OracleSpec::parse_inline(arg);
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(std::ostream& out, const Json& j, bool text) {
  if (!text) {
    out << j.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << k << ":\n";
      for (const auto& row : v) {
        std::string line;
        for (const auto& [rk, rv] : row.items()) line += (line.empty() ? "  " : "  ") + rk + "=" + scalar_text(rv);
        out << line << "\n";
      }
    } else {
      out << k << ": " << scalar_text(v) << "\n";
    }
  }
}

Json report_json(const VerifyReport& r) {
  Json j;
  j["term"] = r.term_id;
  j["analysis"] = r.analysis;
  j["status"] = status_name(r.status);
  if (r.predicted) j["predicted"] = *r.predicted;
  if (r.observed) j["observed"] = *r.observed;
  if (r.trials) {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
  }
  j["details"] = r.details;
  return j;
}

int run_verify(const Config& cfg, const CorpusOptions& copts, std::ostream& out) {
  const std::string target = cfg.corpus.empty() ? cfg.path : cfg.corpus;
  if (target.empty()) throw CLI::ValidationError("verify", "needs a file or --corpus DIR");
  const auto reports = run_corpus(target, copts);
  std::uint64_t passed = 0, failed = 0, errors = 0;
  Json rows = Json::array();
  for (const auto& r : reports) {
    rows.push_back(report_json(r));
    if (r.status == VerifyReport::Status::Pass) ++passed;
    if (r.status == VerifyReport::Status::Fail) ++failed;
    if (r.status == VerifyReport::Status::Error) ++errors;
  }
  Json j;
  j["passed"] = passed;
  j["failed"] = failed;
  j["errors"] = errors;
  j["reports"] = rows;
  emit(out, j, cfg.text);
  if (errors) return kExitUsage;
  return failed ? kExitFail : kExitOk;
}

int dispatch(const Config& cfg, std::ostream& out) {
  const std::optional<OracleSpec> oracle =
      cfg.oracle.empty() ? std::nullopt : std::optional<OracleSpec>(load_oracle(cfg.oracle));
  AnalysisOptions opts;
  opts.fuel.max_steps = cfg.fuel;
  if (cfg.command == "verify") {
    CorpusOptions copts;
    copts.analysis = opts;
    copts.modulus.seed = cfg.seed;
    copts.modulus.trials = cfg.trials;
    return run_verify(cfg, copts, out);
  }

  if (!std::filesystem::is_regular_file(cfg.path)) throw CLI::ValidationError("file", "'" + cfg.path + "' does not exist");
  const SourceFile src = read_source_file(cfg.path);
  const Term& e = src.term;
  const std::optional<OracleSpec> alpha = cfg.command == "modulus" ? std::nullopt : oracle;
  Signature sig = signature_for(e, alpha);
  if (!cfg.sig.empty()) {
    sig = signature_by_name(cfg.sig);
    if (alpha) sig = with_oracle(sig, *alpha);
  }
  const Ty ty = typecheck(sig, e);

  Json j;
  if (cfg.command == "check") {
    j["type"] = ty.to_string();
    j["signature"] = sig.name();
  } else if (cfg.command == "eval") {
    const EvalResult r = eval(sig, e, opts.fuel);
    j["value"] = r.value.to_string();
    j["steps"] = r.steps;
    if (oracle) j["queries"] = r.queries;
  } else if (cfg.command == "translate") {
    const MetaTerm mt = translate(sig, e);
    j["type"] = meta_typecheck(sig, mt).to_string();
    j["term"] = mt.to_shared_string();
  } else if (cfg.command == "modulus") {
    const ModulusReport m = modulus(sig, e, oracle.value_or(OracleSpec::identity()), opts);
    j["phi"] = m.phi;
    j["support"] = m.support;
    j["value"] = m.value;
  } else if (cfg.command == "cost") {
    const CostReport c = exact_cost(sig, e, opts);
    j["predicted"] = c.predicted;
    j["semantic"] = c.semantic.to_string();
  } else if (cfg.command == "bound") {
    const CostReport c = bounded_cost(sig, e, opts);
    j["predicted"] = c.predicted;
    j["size"] = c.semantic.to_string();
  } else if (cfg.command == "majorize") {
    j["majorant"] = majorant(sig, e, opts).to_string();
  }
  emit(out, j, cfg.text);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost, continuity and majorant analyses for writ terms", "writ"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&cfg](CLI::App* sub, bool file_required) {
    auto* f = sub->add_option("file", cfg.path, "term source (.wt)");
    if (file_required) f->required();
    sub->add_option("--oracle", cfg.oracle, "oracle: JSON file, identity, constant:K or table:K=V/.../default=D");
    sub->add_option("--fuel", cfg.fuel, "step budget")->check(CLI::PositiveNumber);
    sub->add_option("--sig", cfg.sig, "signature: t, list or bar")->check(CLI::IsMember({"t", "list", "bar"}));
    auto* fmt = sub->add_flag("--text", cfg.text, "plain text output");
    sub->add_flag("--json{false}", cfg.text, "JSON output (default)")->excludes(fmt);
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check", "typecheck a term"},
      {"eval", "evaluate, counting rewrite steps"},
      {"translate", "print the monadic translation and its type"},
      {"modulus", "modulus of continuity of a type-two functional"},
      {"cost", "exact cost"},
      {"bound", "upper bound on cost and result size"},
      {"majorize", "majorant of a System T term"},
      {"verify", "check analyses against the evaluator"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, name != "verify");
    sub->callback([&cfg, name = name] { cfg.command = name; });
    if (name == "verify" || name == "modulus") {
      sub->add_option("--seed", cfg.seed, "seed for sampled perturbations");
      sub->add_option("--trials", cfg.trials, "perturbations per oracle")->check(CLI::PositiveNumber);
    }
    if (name == "verify") sub->add_option("--corpus", cfg.corpus, "directory of .wt files");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return dispatch(cfg, out);
  } catch (const FuelExhausted& e) {
    err << "writ: " << e.what() << "\n";
    return kExitFuel;
  } catch (const CLI::Error& e) {
    err << "writ: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "writ: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace writ
