// Acceptance gate: one line per criterion, PASS or FAIL, exit 1 on any FAIL.
// Budgets follow the documented bar: 10k preservation/progress expressions
// over 100 generated signatures, 50k measure steps, 5k peaks, 10k strategy
// triples, 5k coercions, 10k apartness triples, an exhaustive unification
// oracle, a totality sweep over 100 worlds, and corpus + 1000-program
// round-trips.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "cfc/core_typecheck.hpp"
#include "cfc/evaluator.hpp"
#include "cfc/metatheory.hpp"
#include "cfc/parser.hpp"
#include "cfc/printer.hpp"
#include "cfc/signature_check.hpp"
#include "cfc/surface_frontend.hpp"
#include "cfc/type_rewriter.hpp"
#include "cfc/unify.hpp"

using namespace cfc;

namespace {

int g_failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail,
            double secs) {
  std::printf("%s  %2d. %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
              secs, detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

template <typename F>
void criterion(int num, const std::string& name, F body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(num, name, ok, detail, secs);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& name) {
  return std::string(CORPUS_DIR) + "/" + name;
}

// --- criterion 1: corpus regressions ---------------------------------------

bool corpus_regressions(std::string& detail) {
  auto equ = parse_program(slurp(corpus("equ.cfc")));
  if (!equ.ok()) return detail = "equ.cfc does not parse", false;
  const Signature& esig = equ.value->sig;
  auto nf = [&](const Signature& s, const std::string& src) {
    auto t = parse_type(src, s);
    return show_ty(normalize(s, *t.value).first);
  };
  if (nf(esig, "Equ Int Bool") != "False") return detail = "Equ Int Bool", false;
  if (nf(esig, "Equ Int Int") != "True") return detail = "Equ Int Int", false;

  auto plus = parse_program(slurp(corpus("plus.cfc")));
  if (!plus.ok()) return detail = "plus.cfc does not parse", false;
  if (nf(plus.value->sig, "Plus (S (S Z)) (S Z)") != "S (S (S Z))")
    return detail = "Plus 2 1", false;

  auto only = parse_program(slurp(corpus("onlyint.cfc")));
  if (nf(only.value->sig, "OnlyInt Bool") != "OnlyInt Bool")
    return detail = "OnlyInt Bool should be stuck", false;

  auto bad = parse_program(slurp(corpus("loop_bad.cfc")));
  auto badsig = check_signature(bad.value->sig);
  bool rejected = false;
  for (const auto& d : badsig.diags) rejected = rejected || d.code == "FamilyInRHS";
  if (!rejected) return detail = "loop_bad not rejected with FamilyInRHS", false;

  auto loopy = parse_program(slurp(corpus("loopy.cfc")));
  if (!check_signature(loopy.value->sig).ok() ||
      !check_good_signature(loopy.value->sig).ok())
    return detail = "guarded loopy not accepted", false;

  // Elem as the associated family of Collects: minimal guard inference.
  SurfaceEnv env;
  env.sig.ty_cons = {{"IntList", 0}, {"Int", 0}};
  env.sig.families["Elem"] = {1, false};
  env.classes.classes["Collects"] = {1, {}, {"c"}, "Elem"};
  env.assoc.families["Elem"] = {"Collects", false};
  SType want = st_arrow(st_fam("Elem", {st_var("c")}),
                        st_arrow(st_var("c"), st_var("c")));
  std::vector<SPred> ps = infer_constraints(env, {"c"}, want);
  if (ps.size() != 1 || spred_show(ps[0]) != "Collects c")
    return detail = "Elem c -> c -> c constraints", false;
  return true;
}

// --- criteria 2..7, 9: suite sweeps ----------------------------------------

bool sweep(const std::string& suite, int worlds, int cases_per_world,
           std::string& detail, int size = 3) {
  long long cases = 0, passed = 0;
  for (int i = 0; i < worlds; ++i) {
    World w = gen_world(1000 + (uint64_t)i, size);
    SuiteReport rep = run_suite(suite, w, cases_per_world, 17 + (uint64_t)i);
    cases += rep.cases;
    passed += rep.passed;
    if (!rep.ok()) {
      detail = "seed " + std::to_string(1000 + i) + ": " +
               (rep.counterexamples.empty() ? "?" : rep.counterexamples[0]);
      return false;
    }
  }
  detail = std::to_string(passed) + "/" + std::to_string(cases) + " cases";
  return passed == cases;
}

// --- criterion 8: unification vs brute force -------------------------------

bool unification_oracle(std::string& detail) {
  // Two-constructor signature: A : 0, B : 1.  Open types up to height 3 over
  // variables {a, b}; ground substitution range B^k A, k ≤ 3.
  std::vector<std::vector<Ty>> open_by_h(4);
  open_by_h[1] = {ty_con("A", {}), ty_var("a"), ty_var("b")};
  for (int h = 2; h <= 3; ++h) {
    open_by_h[h] = open_by_h[h - 1];
    for (const Ty& t : open_by_h[h - 1]) open_by_h[h].push_back(ty_con("B", {t}));
  }
  const std::vector<Ty>& types = open_by_h[3];
  std::vector<Ty> ground;
  {
    Ty t = ty_con("A", {});
    ground.push_back(t);
    for (int k = 0; k < 3; ++k) ground.push_back(t = ty_con("B", {t}));
  }

  long long pairs = 0, mismatches = 0;
  for (const Ty& t1 : types)
    for (const Ty& t2 : types) {
      ++pairs;
      auto theta = unify_one(t1, t2);
      bool brute = false;
      for (const Ty& ga : ground) {
        for (const Ty& gb : ground) {
          Subst s;
          s.tys["a"] = ga;
          s.tys["b"] = gb;
          if (alpha_eq(subst_ty(s, t1), subst_ty(s, t2))) brute = true;
        }
      }
      if (theta.has_value() != brute) {
        ++mismatches;
        continue;
      }
      if (theta) {
        // Returned substitution is an idempotent unifier.
        Ty l = subst_ty(*theta, t1), r = subst_ty(*theta, t2);
        if (!alpha_eq(l, r)) ++mismatches;
        for (const auto& [v, t] : theta->tys)
          if (!alpha_eq(subst_ty(*theta, t), t)) ++mismatches;
      }
    }
  detail = std::to_string(pairs) + " pairs, " + std::to_string(mismatches) +
           " discrepancies";
  return mismatches == 0;
}

// --- criterion 10: round trips ---------------------------------------------

std::string render_program(const Program& p) {
  std::ostringstream out;
  out << show_signature(p.sig);
  for (const auto& [name, e] : p.terms)
    out << "term " << name << " = " << show_ex(e) << "\n";
  for (const auto& [name, cls] : p.classes.classes) {
    if (p.classes.closed_classes.count(name)) out << "closed ";
    out << "class ";
    if (!cls.supers.empty()) {
      out << "(";
      for (size_t i = 0; i < cls.supers.size(); ++i)
        out << (i ? ", " : "") << spred_show(cls.supers[i]);
      out << ") => ";
    }
    out << name;
    for (const auto& v : cls.params) out << " " << v;
    out << "\n";
  }
  for (const auto& [cls, insts] : p.classes.instances)
    for (const auto& inst : insts) {
      out << "instance ";
      if (!inst.context.empty()) {
        out << "(";
        for (size_t i = 0; i < inst.context.size(); ++i)
          out << (i ? ", " : "") << spred_show(inst.context[i]);
        out << ") => ";
      }
      out << spred_show(inst.head) << "\n";
    }
  return out.str();
}

bool same_program(const Program& a, const Program& b) {
  if (a.sig.ty_cons != b.sig.ty_cons || a.sig.ty_con_group != b.sig.ty_con_group)
    return false;
  if (a.sig.axioms.size() != b.sig.axioms.size()) return false;
  for (size_t i = 0; i < a.sig.axioms.size(); ++i) {
    const auto &xa = a.sig.axioms[i], &xb = b.sig.axioms[i];
    if (xa.name != xb.name || xa.equations.size() != xb.equations.size()) return false;
    for (size_t j = 0; j < xa.equations.size(); ++j) {
      const auto &ea = xa.equations[j], &eb = xb.equations[j];
      if (ea.fam != eb.fam || ea.assumps.size() != eb.assumps.size()) return false;
      Ty la = ea.rhs, lb = eb.rhs;  // compare lhs+rhs together, up to alpha
      TyList ca = ea.lhs, cb = eb.lhs;
      ca.push_back(la);
      cb.push_back(lb);
      Ty wa = ty_fam(ea.fam, ca), wb = ty_fam(eb.fam, cb);
      for (size_t k = ea.assumps.size(); k-- > 0;) {
        const auto &aa = ea.assumps[k], &ab = eb.assumps[k];
        if (aa.fam != ab.fam) return false;
        wa = ty_qual(ty_fam(aa.fam, aa.args), ty_var(aa.tv), wa);
        wb = ty_qual(ty_fam(ab.fam, ab.args), ty_var(ab.tv), wb);
      }
      std::set<std::string> avoid;
      if (!alpha_eq(wa, wb)) return false;
    }
  }
  for (const auto& [k, t] : a.sig.term_consts) {
    auto it = b.sig.term_consts.find(k);
    if (it == b.sig.term_consts.end() || !alpha_eq(t, it->second)) return false;
  }
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (a.terms[i].first != b.terms[i].first ||
        !alpha_eq(a.terms[i].second, b.terms[i].second))
      return false;
  return true;
}

bool round_trip(std::string& detail) {
  const char* files[] = {"plus.cfc",     "equ.cfc",   "onlyint.cfc",
                         "loop_bad.cfc", "loopy.cfc", "collects.cfc"};
  for (const char* f : files) {
    auto p1 = parse_program(slurp(corpus(f)));
    if (!p1.ok()) return detail = std::string(f) + " does not parse", false;
    auto p2 = parse_program(render_program(*p1.value));
    if (!p2.ok()) return detail = std::string(f) + " re-parse failed", false;
    if (!same_program(*p1.value, *p2.value))
      return detail = std::string(f) + " round trip differs", false;
  }
  int programs = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    World w = gen_world(seed, 1 + (int)(seed % 3));
    Program p;
    p.sig = w.sig;
    for (size_t i = 0; i < w.expr_pool.size() && i < 3; ++i)
      p.terms.emplace_back("t" + std::to_string(i), w.expr_pool[i]);
    auto p2 = parse_program(render_program(p));
    if (!p2.ok())
      return detail = "generated program (seed " + std::to_string(seed) +
                      ") re-parse failed",
             false;
    if (!same_program(p, *p2.value))
      return detail = "generated round trip differs (seed " + std::to_string(seed) + ")",
             false;
    ++programs;
  }
  detail = "6 corpus files + " + std::to_string(programs) + " generated programs";
  return true;
}

}  // namespace

int main() {
  criterion(1, "corpus regressions", corpus_regressions);
  criterion(2, "preservation suite (10k expressions, 100 signatures)",
            [](std::string& d) { return sweep("preservation", 100, 100, d); });
  criterion(3, "progress suite (10k expressions, 100 signatures)",
            [](std::string& d) { return sweep("progress", 100, 100, d); });
  criterion(4, "termination measure (50k Red steps)",
            [](std::string& d) { return sweep("measure", 25, 2000, d); });
  criterion(5, "local confluence (5k peaks) + strategy agreement (10k types)",
            [](std::string& d) {
              std::string d1, d2;
              bool a = sweep("local_confluence", 30, 200, d1);
              bool b = sweep("strategy", 50, 200, d2);
              d = d1 + "; " + d2;
              return a && b;
            });
  criterion(6, "consistency oracle (5k coercions)",
            [](std::string& d) { return sweep("consistency", 25, 200, d); });
  criterion(7, "apartness stability (10k triples)",
            [](std::string& d) { return sweep("apart_stability", 25, 400, d); });
  criterion(8, "unification vs brute-force oracle (exhaustive)", unification_oracle);
  criterion(9, "totality link (100 worlds, args up to size 4)",
            [](std::string& d) { return sweep("totality_link", 100, 2000, d, 2); });
  criterion(10, "round-trip parse/print", round_trip);

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
