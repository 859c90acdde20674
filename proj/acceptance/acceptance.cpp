// One line per acceptance criterion: "[PASS] n. name: detail" or "[FAIL] ...".

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>

#include "writ/analyses.hpp"
#include "writ/error.hpp"
#include "writ/harness.hpp"
#include "writ/mutations.hpp"
#include "writ/parser.hpp"

using namespace writ;
namespace fs = std::filesystem;

namespace {

struct Entry {
  std::string id;
  Term term;
  Signature sig;
  std::vector<AnalysisRequest> requests;

  bool wants(const std::string& name) const {
    return std::any_of(requests.begin(), requests.end(), [&](const auto& r) { return r.name == name; });
  }
};

std::vector<Entry> load(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".wt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Entry> out;
  for (const auto& f : files) {
    const SourceFile src = read_source_file(f.string());
    out.push_back({f.stem().string(), src.term, signature_for(src.term), parse_analyses(src.header)});
  }
  return out;
}

bool uses_any(const Term& t, std::initializer_list<const char*> names) {
  std::vector<std::string> syms;
  collect_symbols(t, syms);
  for (const auto& s : syms)
    for (const char* n : names)
      if (s == n || s.rfind(std::string(n) + "[", 0) == 0) return true;
  return false;
}

class Criterion {
 public:
  Criterion(int n, std::string name) : n_(n), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& why) {
    if (!ok && failure_.empty()) failure_ = why;
    ok_ = ok_ && ok;
  }
  void note(std::string s) { detail_ = std::move(s); }
  void within(double seconds) {
    const double t = elapsed();
    check(t < seconds, "took " + std::to_string(t) + " s, limit " + std::to_string(seconds) + " s");
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool report() const {
    std::cout << (ok_ ? "[PASS] " : "[FAIL] ") << n_ << ". " << name_ << ": " << (ok_ ? detail_ : failure_) << "\n";
    return ok_;
  }

 private:
  int n_;
  std::string name_, detail_, failure_;
  bool ok_ = true;
  std::chrono::steady_clock::time_point start_;
};

template <class F>
void guard(Criterion& c, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : WRIT_CORPUS_DIR;
  const std::vector<Entry> corpus = load(dir);
  bool all = true;

  {
    Criterion c(1, "exact cost equals evaluator steps");
    guard(c, [&] {
      std::size_t n = 0;
      bool rec = false, fold = false, builtin = false, bar = false;
      for (const auto& e : corpus) {
        if (!e.wants("cost")) continue;
        if (!typecheck(e.sig, e.term).is_data()) continue;
        const VerifyReport r = verify_exact_cost(e.sig, e.term, {}, e.id);
        c.check(r.passed(), e.id + ": " + r.details);
        ++n;
        rec |= uses_any(e.term, {"rec"});
        fold |= uses_any(e.term, {"fold"});
        builtin |= uses_any(e.term, {"add", "mul", "lt", "len", "ext"});
        bar |= uses_any(e.term, {"bar", "bar1"});
      }
      c.check(n >= 30, "only " + std::to_string(n) + " cost terms");
      c.check(rec && fold && builtin && bar, "corpus does not span rec, fold, builtins and bar");
      c.note(std::to_string(n) + " terms, tolerance 0");
    });
    c.within(5);
    all &= c.report();
  }

  {
    Criterion c(2, "Spector search closed form");
    guard(c, [&] {
      std::size_t n = 0;
      bool reference = false;
      const Term five = parse_term("fn f:Nat->Nat => 5");
      for (const auto& e : corpus) {
        auto parts = match_spector_instance(e.term);
        if (!parts) continue;
        const VerifyReport r = verify_spector(parts->first, parts->second, {}, e.id);
        c.check(r.passed(), e.id + ": " + r.details);
        const VerifyReport cost = verify_exact_cost(e.sig, e.term, {}, e.id);
        c.check(cost.passed(), e.id + ": " + cost.details);
        const SemVal beta = exact_cost(e.sig, parts->second).semantic;
        const bool zero = beta(SemVal::base(0)).second().nat() == 0 && beta(SemVal::base(9)).second().nat() == 0;
        const SemVal omega = exact_cost(e.sig, parts->first).semantic;
        reference |= parts->first == five && zero && r.passed() && spector_bound(omega, beta) == 6;
        ++n;
      }
      c.check(n >= 5, "only " + std::to_string(n) + " instances");
      c.check(reference, "the (constant 5, constant 0) instance with N = 6 is missing or failing");
      c.note(std::to_string(n) + " instances, reference N = 6 with closed form 78");
    });
    c.within(2);
    all &= c.report();
  }

  {
    Criterion c(3, "modulus of continuity");
    guard(c, [&] {
      std::set<std::string> terms;
      std::size_t checks = 0;
      std::set<std::string> kinds;
      for (const auto& e : corpus) {
        for (const auto& req : e.requests) {
          if (req.name != "modulus") continue;
          const OracleSpec g = OracleSpec::parse_inline(req.argument);
          const VerifyReport r = verify_modulus(e.sig, e.term, g, {100, 0, 8}, {}, e.id);
          c.check(r.passed(), e.id + " " + r.analysis + ": " + r.details);
          kinds.insert(req.argument.substr(0, req.argument.find(':')));
          terms.insert(e.id);
          ++checks;
        }
      }
      c.check(terms.size() >= 15, "only " + std::to_string(terms.size()) + " type-two terms");
      c.check(kinds == std::set<std::string>{"identity", "constant", "table"}, "oracle kinds missing");
      c.check(checks >= 3 * terms.size(), "not every term is checked against three oracles");
      c.note(std::to_string(terms.size()) + " terms x 3 oracles x 100 perturbations, 0 failures");
    });
    c.within(10);
    all &= c.report();
  }

  {
    Criterion c(4, "bounded cost dominates steps and size");
    guard(c, [&] {
      std::size_t n = 0;
      for (const auto& e : corpus) {
        if (!e.wants("bound")) continue;
        const VerifyReport r = verify_bound(e.sig, e.term, {}, e.id);
        c.check(r.passed(), e.id + ": " + r.details);
        n += uses_any(e.term, {"nil", "cons", "fold", "len"}) || typecheck(e.sig, e.term) == Ty::list();
      }
      c.check(n >= 15, "only " + std::to_string(n) + " list terms");
      c.note(std::to_string(n) + " list terms, 0 violations");
    });
    all &= c.report();
  }

  {
    Criterion c(5, "majorants dominate values");
    guard(c, [&] {
      std::size_t n = 0;
      for (const auto& e : corpus) {
        if (!e.wants("majorant")) continue;
        const VerifyReport r = verify_majorant(e.sig, e.term, {}, e.id);
        c.check(r.passed(), e.id + ": " + r.details);
        ++n;
      }
      c.check(n >= 15, "only " + std::to_string(n) + " Nat terms");
      std::mt19937_64 rng(0);
      std::uniform_int_distribution<std::uint64_t> d(0, 40);
      std::vector<std::uint64_t> table(41);
      for (auto& x : table) x = d(rng);
      const auto g = [&table](std::uint64_t i) { return SemVal::base(table[i]); };
      for (int i = 0; i < 100; ++i) {
        std::uint64_t m = d(rng), m2 = d(rng);
        if (m > m2) std::swap(m, m2);
        c.check(monotone_majorant(g, m).nat() <= monotone_majorant(g, m2).nat(),
                "g^M not monotone at " + std::to_string(m) + " <= " + std::to_string(m2));
      }
      c.note(std::to_string(n) + " terms, g^M monotone on 100 pairs");
    });
    all &= c.report();
  }

  {
    Criterion c(6, "bar recursion terminates with a bounded search");
    guard(c, [&] {
      std::size_t n = 0;
      for (const auto& e : corpus) {
        if (!uses_any(e.term, {"bar", "bar1"}) && !match_spector_instance(e.term)) continue;
        const EvalResult r = eval(e.sig, e.term);
        ++n;
        if (auto parts = match_spector_instance(e.term)) {
          const std::uint64_t k = *as_numeral(r.value);
          std::vector<std::uint64_t> prefix;
          for (std::uint64_t i = 0; i < k; ++i)
            prefix.push_back(*as_numeral(eval(e.sig, Term::app(parts->second, numeral(i))).value));
          const Term probe = Term::app(parts->first, Term::app(Term::func("ext"), list_literal(prefix)));
          const std::uint64_t w = *as_numeral(eval(e.sig, probe).value);
          c.check(w < k, e.id + ": omega on the segment of length " + std::to_string(k) + " is " + std::to_string(w));
        }
      }
      c.check(n > 0, "no bar terms in the corpus");
      c.note(std::to_string(n) + " bar terms within default fuel");
    });
    all &= c.report();
  }

  {
    Criterion c(7, "translations are well typed");
    guard(c, [&] {
      for (const auto& e : corpus) {
        const MetaType want = MetaType::prod(MetaType::gamma(), lift(typecheck(e.sig, e.term)));
        const MetaType got = meta_typecheck(e.sig, translate(e.sig, e.term));
        c.check(got == want, e.id + ": " + got.to_string() + " != " + want.to_string());
      }
      c.note(std::to_string(corpus.size()) + " terms at gamma x |rho|");
    });
    all &= c.report();
  }

  {
    Criterion c(8, "pure and continuity semantics agree");
    guard(c, [&] {
      std::size_t n = 0;
      const Instantiation inst = continuity_inst(OracleSpec::identity());
      for (const auto& e : corpus) {
        if (!(typecheck(e.sig, e.term) == Ty::nat()) || uses_any(e.term, {"bar", "bar1", "ext", "alpha"})) continue;
        const SemVal pure = pure_denote(e.sig, {}, e.term);
        const SemVal r = denote(e.sig, inst, {}, translate(e.sig, e.term));
        c.check(pure.nat() == r.second().nat(), e.id + ": " + pure.to_string() + " != " + r.second().to_string());
        ++n;
      }
      c.note(std::to_string(n) + " Nat terms");
    });
    all &= c.report();
  }

  {
    Criterion c(9, "mutated instantiations are caught");
    guard(c, [&] {
      std::vector<std::string> caught;
      for (const Mutant& m : all_mutants(OracleSpec::identity())) {
        CorpusOptions opts;
        opts.analysis.inst = m.inst;
        bool flagged = false;
        for (const auto& e : corpus) {
          for (const auto& req : e.requests) {
            if (req.name != m.analysis) continue;
            if (m.analysis == "modulus" && req.argument != "identity") continue;
            if (run_request(e.sig, e.term, req, opts, e.id).status == VerifyReport::Status::Fail) flagged = true;
          }
          if (flagged) break;
        }
        c.check(flagged, m.name + " survives every " + m.analysis + " check");
        if (flagged) caught.push_back(m.name);
      }
      std::string list;
      for (const auto& s : caught) list += (list.empty() ? "" : ", ") + s;
      c.note(std::to_string(caught.size()) + " of 4 mutants caught (" + list + ")");
    });
    all &= c.report();
  }

  return all ? 0 : 1;
}
