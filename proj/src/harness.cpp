#include "writ/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "writ/error.hpp"
#include "writ/parser.hpp"

namespace writ {

const char* status_name(VerifyReport::Status s) {
  switch (s) {
    case VerifyReport::Status::Pass: return "pass";
    case VerifyReport::Status::Fail: return "fail";
    case VerifyReport::Status::Error: return "error";
  }
  return "?";
}

namespace {

VerifyReport make(std::string id, std::string analysis) {
  VerifyReport r;
  r.term_id = std::move(id);
  r.analysis = std::move(analysis);
  return r;
}

VerifyReport& fail(VerifyReport& r, std::string details) {
  r.status = VerifyReport::Status::Fail;
  r.details = std::move(details);
  return r;
}

// Engine or evaluator failures count as failures of the check.
template <class F>
VerifyReport guarded(VerifyReport r, F&& body) {
  try {
    body(r);
  } catch (const std::exception& ex) {
    r.status = VerifyReport::Status::Fail;
    r.details = ex.what();
  }
  return r;
}

std::string show(const std::vector<std::uint64_t>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

std::uint64_t numeral_of(const Term& v) {
  auto n = as_numeral(v);
  if (!n) throw ShapeMismatch("expected a numeral result, got " + v.to_string());
  return *n;
}

}  // namespace

VerifyReport verify_exact_cost(const Signature& sig, const Term& e, const AnalysisOptions& opts, std::string id) {
  return guarded(make(std::move(id), "cost"), [&](VerifyReport& r) {
    const EvalResult ev = eval(sig, e, opts.fuel);
    const CostReport c = exact_cost(sig, e, opts);
    r.predicted = c.predicted;
    r.observed = ev.steps;
    if (c.predicted != ev.steps) {
      fail(r, "predicted " + std::to_string(c.predicted) + " steps, evaluator took " + std::to_string(ev.steps));
      return;
    }
    if (auto d = semantic_datum(ev.value); d && d->to_string() != c.semantic.to_string()) {
      fail(r, "semantic value " + c.semantic.to_string() + " differs from result " + ev.value.to_string());
      return;
    }
    r.details = std::to_string(ev.steps) + " steps";
  });
}

VerifyReport verify_modulus(const Signature& sig, const Term& e, const OracleSpec& g, const ModulusCheck& check,
                            const AnalysisOptions& opts, std::string id) {
  VerifyReport r = make(std::move(id), "modulus(" + g.to_inline() + ")");
  r.trials = check.trials;
  r.seed = check.seed;
  return guarded(std::move(r), [&](VerifyReport& r) {
    const ModulusReport m = modulus(sig, e, g, opts);
    const Term applied = Term::app(e, Term::func("alpha"));
    const EvalResult ev = eval_with_oracle(sig, applied, g, opts.fuel);
    const std::uint64_t value = numeral_of(ev.value);
    r.predicted = m.value;
    r.observed = value;
    if (m.value != value) {
      fail(r, "predicted value " + std::to_string(m.value) + ", evaluator returned " + std::to_string(value));
      return;
    }
    const std::set<std::uint64_t> support(m.support.begin(), m.support.end());
    for (std::uint64_t q : ev.queries) {
      if (!support.count(q)) {
        fail(r, "query " + std::to_string(q) + " is outside the support " + show(m.support));
        return;
      }
    }

    std::mt19937_64 rng(check.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, 15);
    for (std::uint64_t t = 0; t < check.trials; ++t) {
      std::map<std::uint64_t, std::uint64_t> pairs;
      for (std::uint64_t i = 0; i < m.phi + check.window; ++i) pairs[i] = support.count(i) ? g(i) : pick(rng);
      const OracleSpec h = OracleSpec::table(std::move(pairs), pick(rng));
      const EvalResult eh = eval_with_oracle(sig, applied, h, opts.fuel);
      const std::uint64_t got = numeral_of(eh.value);
      if (got != value) {
        r.observed = got;
        fail(r, "trial " + std::to_string(t) + ": h = " + h.to_inline() + " agrees with g below phi = " +
                    std::to_string(m.phi) + " on the support but gives " + std::to_string(got) + " instead of " +
                    std::to_string(value));
        return;
      }
    }
    r.details = "phi " + std::to_string(m.phi) + ", support " + show(m.support) + ", queries " + show(ev.queries);
  });
}

VerifyReport verify_bound(const Signature& sig, const Term& e, const AnalysisOptions& opts, std::string id) {
  return guarded(make(std::move(id), "bound"), [&](VerifyReport& r) {
    const EvalResult ev = eval(sig, e, opts.fuel);
    const CostReport c = bounded_cost(sig, e, opts);
    r.predicted = c.predicted;
    r.observed = ev.steps;
    if (ev.steps > c.predicted) {
      fail(r, "evaluator took " + std::to_string(ev.steps) + " steps, above the bound " + std::to_string(c.predicted));
      return;
    }
    const std::uint64_t size_bound = c.semantic.nat();
    std::uint64_t size = 1;
    if (auto xs = as_list(ev.value)) size = xs->size();
    if (size > size_bound) {
      fail(r, "result " + ev.value.to_string() + " has size " + std::to_string(size) + ", above the bound " +
                  std::to_string(size_bound));
      return;
    }
    r.details = std::to_string(ev.steps) + " <= " + std::to_string(c.predicted) + " steps, size " +
                std::to_string(size) + " <= " + std::to_string(size_bound);
  });
}

VerifyReport verify_majorant(const Signature& sig, const Term& e, const AnalysisOptions& opts, std::string id) {
  return guarded(make(std::move(id), "majorant"), [&](VerifyReport& r) {
    const EvalResult ev = eval(sig, e, opts.fuel);
    const std::uint64_t value = numeral_of(ev.value);
    const std::uint64_t bound = majorant(sig, e, opts).nat();
    r.predicted = bound;
    r.observed = value;
    if (value > bound) {
      fail(r, "value " + std::to_string(value) + " exceeds majorant " + std::to_string(bound));
      return;
    }
    r.details = std::to_string(value) + " <= " + std::to_string(bound);
  });
}

std::optional<std::pair<Term, Term>> match_spector_instance(const Term& t) {
  if (t.spine_length() != 3) return std::nullopt;
  const auto args = t.spine_args();
  if (!(t.head() == spector_term())) return std::nullopt;
  if (!(args[2] == Term::cons("nil"))) return std::nullopt;
  return std::make_pair(args[0], args[1]);
}

VerifyReport verify_spector(const Term& omega, const Term& beta, const AnalysisOptions& opts, std::string id) {
  return guarded(make(std::move(id), "spector"), [&](VerifyReport& r) {
    const Signature sig = bar_rec();
    const Term spec = spector_instance(omega, beta);
    AnalysisOptions exact = opts;

    // (i) exact cost of the whole term
    const EvalResult ev = eval(sig, spec, opts.fuel);
    const CostReport c = exact_cost(sig, spec, exact);
    if (c.predicted != ev.steps) {
      r.predicted = c.predicted;
      r.observed = ev.steps;
      fail(r, "exact cost " + std::to_string(c.predicted) + " differs from " + std::to_string(ev.steps) + " steps");
      return;
    }

    // (ii) closed form against the unfolded recursion
    const SemVal om = exact_cost(sig, omega, exact).semantic;
    const SemVal be = exact_cost(sig, beta, exact).semantic;
    const std::uint64_t N = spector_bound(om, be, opts.fuel);
    const std::uint64_t closed = spector_closed_form(om, be, opts.fuel);
    const SemVal phi = spector_phi(om, be, {}, 4, opts.fuel);
    const std::uint64_t phi0 = carrier_nat(phi.first().carrier());
    r.predicted = closed;
    r.observed = phi0;
    if (closed != phi0) {
      fail(r, "closed form " + std::to_string(closed) + " differs from the unfolded recursion " + std::to_string(phi0));
      return;
    }

    // (iii) the search property
    const std::uint64_t n = numeral_of(ev.value);
    if (n != N || phi.second().nat() != N) {
      fail(r, "search returned " + std::to_string(n) + ", expected N = " + std::to_string(N));
      return;
    }
    std::vector<std::uint64_t> prefix;
    for (std::uint64_t i = 0; i < n; ++i) prefix.push_back(numeral_of(eval(sig, Term::app(beta, numeral(i)), opts.fuel).value));
    const Term probe = Term::app(omega, Term::app(Term::func("ext"), list_literal(prefix)));
    const std::uint64_t w = numeral_of(eval(sig, probe, opts.fuel).value);
    if (w >= n) {
      fail(r, "omega on the padded segment " + show(prefix) + " gives " + std::to_string(w) + ", not below " +
                  std::to_string(n));
      return;
    }

    // (iv) the evaluator's count in closed form: three outer beta steps and
    // h costing 2 + g_0 + f_0 per call.
    const std::uint64_t actual = spector_closed_form_k(om, be, 2, opts.fuel);
    if (ev.steps != actual + 3) {
      r.predicted = actual + 3;
      r.observed = ev.steps;
      fail(r, "steps " + std::to_string(ev.steps) + " differ from 3 + closed form " + std::to_string(actual));
      return;
    }
    r.details = "N " + std::to_string(N) + ", closed form " + std::to_string(closed) + ", steps " +
                std::to_string(ev.steps) + " = 3 + " + std::to_string(actual);
  });
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<AnalysisRequest> parse_analyses(const std::vector<std::string>& header) {
  std::vector<AnalysisRequest> out;
  for (const auto& line : header) {
    const std::string key = "analyses:";
    if (line.rfind(key, 0) != 0) continue;
    const std::string list = line.substr(key.size());
    std::string item;
    int depth = 0;
    auto flush = [&] {
      const auto b = item.find_first_not_of(" \t");
      if (b == std::string::npos) {
        item.clear();
        return;
      }
      const auto e = item.find_last_not_of(" \t");
      std::string s = item.substr(b, e - b + 1);
      AnalysisRequest req;
      const auto open = s.find('(');
      if (open != std::string::npos && s.back() == ')') {
        req.name = s.substr(0, open);
        req.argument = s.substr(open + 1, s.size() - open - 2);
      } else {
        req.name = s;
      }
      out.push_back(std::move(req));
      item.clear();
    };
    for (char c : list) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0)
        flush();
      else
        item += c;
    }
    flush();
  }
  return out;
}

VerifyReport run_request(const Signature& sig, const Term& e, const AnalysisRequest& req, const CorpusOptions& opts,
                         const std::string& id) {
  if (req.name == "cost") return verify_exact_cost(sig, e, opts.analysis, id);
  if (req.name == "bound") return verify_bound(sig, e, opts.analysis, id);
  if (req.name == "majorant") return verify_majorant(sig, e, opts.analysis, id);
  if (req.name == "modulus") {
    const OracleSpec g = OracleSpec::parse_inline(req.argument.empty() ? "identity" : req.argument);
    return verify_modulus(sig, e, g, opts.modulus, opts.analysis, id);
  }
  if (req.name == "spector") {
    auto parts = match_spector_instance(e);
    if (!parts) {
      VerifyReport r = make(id, "spector");
      r.status = VerifyReport::Status::Error;
      r.details = "term is not of the form spec omega beta nil";
      return r;
    }
    return verify_spector(parts->first, parts->second, opts.analysis, id);
  }
  VerifyReport r = make(id, req.name);
  r.status = VerifyReport::Status::Error;
  r.details = "unknown analysis '" + req.name + "'";
  return r;
}

std::vector<VerifyReport> run_corpus(const std::string& path, const CorpusOptions& opts) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_regular_file(path)) {
    files.emplace_back(path);
  } else {
    if (!fs::is_directory(path)) throw Error("corpus path '" + path + "' does not exist");
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".wt") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  }

  std::vector<VerifyReport> out;
  for (const auto& file : files) {
    const std::string id = file.stem().string();
    try {
      const SourceFile src = read_source_file(file.string());
      const Signature sig = signature_for(src.term);
      typecheck(sig, src.term);
      for (const auto& req : parse_analyses(src.header)) out.push_back(run_request(sig, src.term, req, opts, id));
    } catch (const std::exception& ex) {
      VerifyReport r = make(id, "load");
      r.status = VerifyReport::Status::Error;
      r.details = ex.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

Term sample_value(const Ty& ty, std::mt19937_64& rng) {
  if (ty.is_arrow()) return Term::lam("w", ty.dom(), sample_value(ty.cod(), rng));
  std::uniform_int_distribution<std::uint64_t> small(0, 5);
  if (ty.name() == "Nat") return numeral(small(rng));
  std::vector<std::uint64_t> xs(std::uniform_int_distribution<std::size_t>(0, 4)(rng));
  for (auto& x : xs) x = small(rng);
  return list_literal(xs);
}

std::size_t matching_rules(const FunctionDecl& f, std::span<const Term> args) {
  if (f.builtin) {
    try {
      f.builtin->delta(args);
      return 1;
    } catch (const Error&) {
      return 0;
    }
  }
  std::size_t n = 0;
  for (const auto& rule : f.rules)
    if (match_pattern(rule.lhs, args)) ++n;
  return n;
}

}  // namespace writ
