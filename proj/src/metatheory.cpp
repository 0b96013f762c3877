#include "cfc/metatheory.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "cfc/core_typecheck.hpp"
#include "cfc/evaluator.hpp"
#include "cfc/printer.hpp"
#include "cfc/signature_check.hpp"
#include "cfc/type_rewriter.hpp"
#include "cfc/unify.hpp"

namespace cfc {

namespace {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  int irange(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  bool chance(int percent) { return irange(1, 100) <= percent; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[(size_t)irange(0, (int)v.size() - 1)];
  }
};

// --- world generation -------------------------------------------------------

// Closed member of the recursion group: S0^n Z0, n ≤ depth.
Ty peano(Gen& g, int depth) {
  Ty t = ty_con("Z0", {});
  int n = g.irange(0, depth);
  for (int i = 0; i < n; ++i) t = ty_con("S0", {t});
  return t;
}

// Closed proper type over the base constructors (no families).
Ty rand_proper(Gen& g, int depth) {
  if (depth <= 0 || g.chance(40)) return g.chance(50) ? ty_con("U", {}) : peano(g, 2);
  switch (g.irange(0, 2)) {
    case 0:
      return ty_con("P", {rand_proper(g, depth - 1), rand_proper(g, depth - 1)});
    case 1:
      return ty_arrow(rand_proper(g, depth - 1), rand_proper(g, depth - 1));
    default:
      return ty_con("S0", {peano(g, depth)});
  }
}

// Proper right-hand side over the available variables (no families).
Ty rand_rhs(Gen& g, const std::vector<std::string>& vars, int depth) {
  if (!vars.empty() && g.chance(45)) {
    Ty v = ty_var(g.pick(vars));
    if (g.chance(35)) return ty_con("S0", {v});
    if (g.chance(20)) return ty_con("P", {v, rand_proper(g, 1)});
    return v;
  }
  return rand_proper(g, depth);
}

TyList rand_fam_args(Gen& g, const Signature& sig, const std::string& fam, int depth);

// Closed type, biased toward family applications under constructors so that
// Red positions get exercised.
Ty rand_pool_ty(Gen& g, const Signature& sig, const std::vector<std::string>& fams,
                int depth) {
  if (!fams.empty() && depth > 0 && g.chance(55)) {
    const std::string& f = g.pick(fams);
    Ty app = ty_fam(f, rand_fam_args(g, sig, f, depth - 1));
    if (g.chance(30)) {
      // Bias: family application under a constructor.
      switch (g.irange(0, 2)) {
        case 0:
          return ty_con("S0", {app});
        case 1:
          return ty_con("P", {app, rand_pool_ty(g, sig, fams, depth - 1)});
        default:
          return ty_arrow(app, rand_proper(g, 1));
      }
    }
    return app;
  }
  return rand_proper(g, depth);
}

TyList rand_fam_args(Gen& g, const Signature& sig, const std::string& fam, int depth) {
  int arity = sig.families.at(fam).arity;
  TyList args;
  for (int i = 0; i < arity; ++i) {
    // Position 0 is the recursion position for generated total families;
    // group-0 numerals there guarantee a match.  Other positions are free.
    if (i == 0)
      args.push_back(peano(g, 3));
    else
      args.push_back(rand_proper(g, 2));
  }
  // Occasionally nest a family redex inside an argument: the outer redex is
  // then ineligible until the inner one fires, exercising innermost order.
  if (depth > 0 && g.chance(25) && args.size() > 1) {
    std::vector<std::string> totals;
    for (const auto& [f, d] : sig.families)
      if (d.total) totals.push_back(f);
    if (!totals.empty()) {
      const std::string& f2 = g.pick(totals);
      args.back() = ty_fam(f2, rand_fam_args(g, sig, f2, 0));
    }
  }
  return args;
}

Signature gen_signature(Gen& g, int size) {
  Signature sig;
  // Fixed base universe: one recursion group plus free constructors.
  sig.ty_cons = {{"Z0", 0}, {"S0", 1}, {"U", 0}, {"P", 2}};
  sig.ty_con_group = {{"Z0", "N0"}, {"S0", "N0"}};
  sig.term_consts = {{"ku", ty_con("U", {})},
                     {"kz", ty_con("Z0", {})},
                     {"kf", ty_arrow(ty_con("U", {}), ty_con("U", {}))}};

  int n_fam = std::min(size, 4);
  for (int i = 0; i < n_fam; ++i) {
    std::string f = "F" + std::to_string(i);
    int arity = g.irange(1, 2);
    sig.families[f] = {arity, true};

    std::vector<std::string> ys;
    for (int k = 1; k < arity; ++k) ys.push_back("y" + std::to_string(k));

    Equation base;
    base.tyvars = ys;
    base.fam = f;
    base.lhs.push_back(ty_con("Z0", {}));
    for (const auto& y : ys) base.lhs.push_back(ty_var(y));
    base.rhs = rand_rhs(g, ys, 2);

    Equation rec;
    rec.tyvars.push_back("x");
    for (const auto& y : ys) rec.tyvars.push_back(y);
    Assumption chi;
    chi.tv = "r";
    chi.cv = "c";
    chi.fam = f;
    chi.args.push_back(ty_var("x"));
    for (const auto& y : ys) chi.args.push_back(ty_var(y));
    rec.assumps.push_back(chi);
    rec.fam = f;
    rec.lhs.push_back(ty_con("S0", {ty_var("x")}));
    for (const auto& y : ys) rec.lhs.push_back(ty_var(y));
    std::vector<std::string> rhs_vars = {"r"};
    for (const auto& y : ys) rhs_vars.push_back(y);
    rec.rhs = rand_rhs(g, rhs_vars, 1);

    sig.axioms.push_back({"ax" + std::to_string(i), {base, rec}});
  }

  if (size >= 2) {
    // One partial family, defined only at U.
    sig.families["P0"] = {1, false};
    Equation eq;
    eq.fam = "P0";
    eq.lhs.push_back(ty_con("U", {}));
    eq.rhs = ty_con("U", {});
    sig.axioms.push_back({"axP0", {eq}});
  }
  return sig;
}

// Type-directed closed expression candidates; ill-typed combinations are
// filtered by infer_expr afterwards, so this only has to be usually right.
Ex rand_expr(Gen& g, const Signature& sig, const std::vector<std::string>& fams,
             int depth) {
  Ty U = ty_con("U", {});
  std::vector<Ex> atoms = {ex_const("ku"), ex_const("kz"), ex_const("kf"),
                           ex_lam("x", U, ex_var("x")),
                           ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x")))};
  if (depth <= 0) return g.pick(atoms);
  switch (g.irange(0, 8)) {
    case 0:
      // Constants are opaque: applying kf would be a stuck non-value, so
      // applications always have lambda (or castable lambda) heads.
      return ex_app(ex_lam("y", U, ex_var("y")),
                    ex_cast(rand_expr(g, sig, fams, depth - 1), co_refl(U)));
    case 1:
      return ex_app(ex_lam("x", U, ex_var("x")), rand_expr(g, sig, fams, depth - 1));
    case 2: {
      Ty t = rand_proper(g, 1);
      return ex_tapp(ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x"))), t);
    }
    case 3:
      return ex_app(ex_tapp(ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x"))), U),
                    rand_expr(g, sig, fams, depth - 1));
    case 4:
      return ex_cast(rand_expr(g, sig, fams, depth - 1), co_refl(U));
    case 5:
      return ex_cast(ex_cast(ex_const("ku"), co_refl(U)), co_refl(U));
    case 6: {
      // Cast blocking an application: exercises S_Push.
      Ex lam = ex_lam("x", U, ex_var("x"));
      Co arrow = co_arrow(co_refl(U), co_refl(U));
      return ex_app(ex_cast(lam, arrow), rand_expr(g, sig, fams, depth - 1));
    }
    case 7: {
      Ex clam = ex_clam("c", Prop{U, U}, ex_cast(ex_const("ku"), co_var("c")));
      return ex_capp(clam, co_refl(U));
    }
    default: {
      if (fams.empty()) return g.pick(atoms);
      const std::string& f = g.pick(fams);
      Assumption chi{"a0", "c0", f, rand_fam_args(g, sig, f, 0)};
      return ex_assume(chi, rand_expr(g, sig, fams, depth - 1));
    }
  }
}

std::vector<std::string> total_fams(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& [f, d] : sig.families)
    if (d.total) out.push_back(f);
  return out;
}

std::vector<std::string> all_fams(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& [f, d] : sig.families) {
    (void)d;
    out.push_back(f);
  }
  return out;
}

// --- coercion generation ----------------------------------------------------

// Congruence wrapper proving t ~ plug(t, path, to), where `proof` proves
// subterm_at(t, path) ~ to.  Paths never cross binders in pool types.
Co wrap_at_path(const Ty& t, const std::vector<int>& steps, size_t i, const Co& proof) {
  if (i == steps.size()) return proof;
  int k = steps[i];
  CoList kids;
  for (int j = 0; j < (int)t->kids.size(); ++j)
    kids.push_back(j == k ? wrap_at_path(t->kids[j], steps, i + 1, proof)
                          : co_refl(t->kids[j]));
  switch (t->kind) {
    case TyKind::Con:
      return co_con(t->name, kids);
    case TyKind::Arrow:
      return co_arrow(kids[0], kids[1]);
    case TyKind::Fam:
      return co_fam(t->name, kids);
    case TyKind::Qual:
      return co_qual(kids[0], kids[1], kids[2]);
    default:
      return proof;  // unreachable for closed pool types
  }
}

// A coercion with left endpoint t, together with its right endpoint.
std::pair<Co, Ty> rand_co_from(Gen& g, const Signature& sig, const Ty& t, int depth) {
  if (depth > 0 && g.chance(65)) {
    // Prove one Red step somewhere in t, then keep going from the reduct.
    auto redexes = eligible_redexes(t);
    std::vector<std::pair<Redex, Resolution>> firable;
    for (const auto& r : redexes)
      if (auto q = resolve(sig, r.fam, r.args)) firable.push_back({r, *q});
    if (!firable.empty()) {
      const auto& [r, q] = firable[(size_t)g.irange(0, (int)firable.size() - 1)];
      Co one = wrap_at_path(t, r.path.steps, 0, q.proof);
      Ty next = plug(t, r.path, q.witness);
      auto [rest, end] = rand_co_from(g, sig, next, depth - 1);
      return {co_trans(one, rest), end};
    }
  }
  if (depth > 0 && t->kind == TyKind::Con && !t->kids.empty() && g.chance(40)) {
    CoList kids;
    TyList ends;
    for (const Ty& k : t->kids) {
      auto [ck, ek] = rand_co_from(g, sig, k, depth - 1);
      kids.push_back(ck);
      ends.push_back(ek);
    }
    return {co_con(t->name, kids), ty_con(t->name, ends)};
  }
  if (depth > 0 && g.chance(25)) {
    // A detour: t ~ u ~ t via sym, then continue.
    auto [g1, u] = rand_co_from(g, sig, t, depth - 1);
    auto [rest, end] = rand_co_from(g, sig, t, depth - 1);
    return {co_trans(g1, co_trans(co_sym(g1), rest)), end};
  }
  return {co_refl(t), t};
}

// --- shrinking --------------------------------------------------------------

// Greedy shrink: repeatedly replace the whole type by one of its subterms
// while the failure predicate still holds.
template <typename Pred>
Ty shrink_ty(Ty t, Pred still_fails) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Redex> rs = find_redexes(t);
    std::vector<Ty> candidates;
    for (const Ty& k : t->kids) candidates.push_back(k);
    for (const auto& r : rs) candidates.push_back(ty_fam(r.fam, r.args));
    for (const Ty& c : candidates) {
      if (c != t && still_fails(c)) {
        t = c;
        changed = true;
        break;
      }
    }
  }
  return t;
}

template <typename Pred>
Ex shrink_ex(Ex e, Pred still_fails) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Ex& k : e->kids) {
      if (still_fails(k)) {
        e = k;
        changed = true;
        break;
      }
    }
  }
  return e;
}

// --- suites -----------------------------------------------------------------

void record_fail(SuiteReport& rep, const std::string& cx) {
  ++rep.failed;
  if (rep.counterexamples.size() < 10) rep.counterexamples.push_back(cx);
}

SuiteReport suite_preservation(const World& w, int cases, Gen& g) {
  SuiteReport rep{"preservation"};
  if (w.expr_pool.empty()) return rep;
  for (int i = 0; i < cases; ++i) {
    const Ex& e0 = g.pick(w.expr_pool);
    ++rep.cases;
    auto t0 = infer_expr(w.sig, Context{}, e0);
    if (!t0.ok()) {
      record_fail(rep, "pool expression no longer typechecks: " + show_ex(e0));
      continue;
    }
    Ex cur = e0;
    Ty ty = *t0.value;
    bool bad = false;
    for (int s = 0; s < 64; ++s) {
      StepResult sr = step(w.sig, cur);
      if (sr.kind != StepResult::Stepped) break;
      auto t1 = infer_expr(w.sig, Context{}, sr.expr);
      if (!t1.ok() || !alpha_eq(*t1.value, ty)) {
        auto fails = [&](const Ex& cand) {
          auto a = infer_expr(w.sig, Context{}, cand);
          if (!a.ok()) return false;
          StepResult s2 = step(w.sig, cand);
          if (s2.kind != StepResult::Stepped) return false;
          auto b = infer_expr(w.sig, Context{}, s2.expr);
          return !b.ok() || !alpha_eq(*a.value, *b.value);
        };
        record_fail(rep, "type not preserved: " + show_ex(shrink_ex(cur, fails)));
        bad = true;
        break;
      }
      cur = sr.expr;
    }
    if (!bad) ++rep.passed;
  }
  return rep;
}

SuiteReport suite_progress(const World& w, int cases, Gen& g) {
  SuiteReport rep{"progress"};
  if (w.expr_pool.empty()) return rep;
  for (int i = 0; i < cases; ++i) {
    const Ex& e = g.pick(w.expr_pool);
    ++rep.cases;
    EvalResult r = eval(w.sig, e, 512);
    if (r.final.kind == StepResult::Stuck) {
      auto fails = [&](const Ex& cand) {
        return infer_expr(w.sig, Context{}, cand).ok() &&
               eval(w.sig, cand, 512).final.kind == StepResult::Stuck;
      };
      record_fail(rep, "stuck: " + show_ex(shrink_ex(e, fails)) +
                           " (reason: " + r.final.reason + ")");
    } else {
      ++rep.passed;
    }
  }
  return rep;
}

SuiteReport suite_measure(const World& w, int cases, Gen& g) {
  SuiteReport rep{"measure"};
  if (w.type_pool.empty()) return rep;
  while (rep.cases < cases) {
    Ty t = g.pick(w.type_pool);
    bool progressed = false;
    for (int s = 0; s < 64 && rep.cases < cases; ++s) {
      auto redexes = eligible_redexes(t);
      if (redexes.empty()) break;
      // Random eligible redex, not just the leftmost, to sample Red broadly.
      size_t idx = (size_t)g.irange(0, (int)redexes.size() - 1);
      size_t global = 0;
      {  // map eligible index back to find_redexes index
        auto all = find_redexes(t);
        size_t seen = 0;
        for (size_t j = 0; j < all.size(); ++j) {
          bool eligible = true;
          for (const Ty& a : all[j].args)
            if (fam_count(a) > 0) eligible = false;
          if (eligible && seen++ == idx) {
            global = j;
            break;
          }
        }
      }
      auto next = step_type_at(w.sig, t, global);
      if (!next) {
        // Stuck redex (partial family); fall back to the strategy step.
        next = step_type(w.sig, t);
        if (!next) break;
      }
      ++rep.cases;
      if (fam_count(*next) != fam_count(t) - 1) {
        auto fails = [&](const Ty& cand) {
          auto n2 = step_type(w.sig, cand);
          return n2 && fam_count(*n2) != fam_count(cand) - 1;
        };
        record_fail(rep, "measure violated at: " + show_ty(shrink_ty(t, fails)));
      } else {
        ++rep.passed;
      }
      t = *next;
      progressed = true;
    }
    if (!progressed) {
      // Pool type already normal; count it as a (vacuous) pass.
      ++rep.cases;
      ++rep.passed;
    }
  }
  return rep;
}

SuiteReport suite_local_confluence(const World& w, int cases, Gen& g) {
  SuiteReport rep{"local_confluence"};
  if (w.type_pool.empty()) return rep;
  int attempts = 0;
  while (rep.cases < cases && attempts < cases * 20) {
    ++attempts;
    // Build peaks by pairing pool types under a constructor when a single
    // pool draw has fewer than two firable redexes.
    Ty t = g.pick(w.type_pool);
    if (g.chance(50)) t = ty_con("P", {t, g.pick(w.type_pool)});
    auto all = find_redexes(t);
    std::vector<size_t> firable;
    for (size_t j = 0; j < all.size(); ++j)
      if (step_type_at(w.sig, t, j)) firable.push_back(j);
    if (firable.size() < 2) continue;
    int k1 = g.irange(0, (int)firable.size() - 1);
    int k2 = g.irange(0, (int)firable.size() - 2);
    if (k2 >= k1) ++k2;
    size_t i1 = firable[(size_t)k1], i2 = firable[(size_t)k2];
    ++rep.cases;
    Ty t1 = *step_type_at(w.sig, t, i1);
    Ty t2 = *step_type_at(w.sig, t, i2);
    Ty n1 = normalize(w.sig, t1).first;
    Ty n2 = normalize(w.sig, t2).first;
    if (alpha_eq(n1, n2)) {
      ++rep.passed;
    } else {
      record_fail(rep, "peak does not join: " + show_ty(t) + " via " + show_ty(t1) +
                           " / " + show_ty(t2));
    }
  }
  return rep;
}

Ty normalize_rightmost(const Signature& sig, const Ty& t0) {
  Ty t = t0;
  while (true) {
    auto all = find_redexes(t);
    bool stepped = false;
    for (size_t j = all.size(); j-- > 0;) {
      if (auto next = step_type_at(sig, t, j)) {
        t = *next;
        stepped = true;
        break;
      }
    }
    if (!stepped) return t;
  }
}

Ty normalize_random(const Signature& sig, const Ty& t0, Gen& g) {
  Ty t = t0;
  while (true) {
    auto all = find_redexes(t);
    std::vector<size_t> firable;
    for (size_t j = 0; j < all.size(); ++j)
      if (step_type_at(sig, t, j)) firable.push_back(j);
    if (firable.empty()) return t;
    t = *step_type_at(sig, t, firable[(size_t)g.irange(0, (int)firable.size() - 1)]);
  }
}

SuiteReport suite_strategy(const World& w, int cases, Gen& g) {
  SuiteReport rep{"strategy"};
  if (w.type_pool.empty()) return rep;
  for (int i = 0; i < cases; ++i) {
    Ty t = g.pick(w.type_pool);
    ++rep.cases;
    Ty a = normalize(w.sig, t).first;
    Ty b = normalize_rightmost(w.sig, t);
    Ty c = normalize_random(w.sig, t, g);
    if (alpha_eq(a, b) && alpha_eq(a, c)) {
      ++rep.passed;
    } else {
      auto fails = [&](const Ty& cand) {
        Ty x = normalize(w.sig, cand).first;
        return !alpha_eq(x, normalize_rightmost(w.sig, cand));
      };
      record_fail(rep, "strategies disagree on: " + show_ty(shrink_ty(t, fails)));
    }
  }
  return rep;
}

SuiteReport suite_consistency(const World& w, int cases, Gen& g) {
  SuiteReport rep{"consistency"};
  if (w.type_pool.empty()) return rep;
  for (int i = 0; i < cases; ++i) {
    Ty start = g.pick(w.type_pool);
    auto [co, end] = rand_co_from(g, w.sig, start, 3);
    (void)end;
    ++rep.cases;
    auto prop = check_coercion(w.sig, Context{}, co);
    if (!prop.ok()) {
      record_fail(rep, "generated coercion fails to check: " + show_co(co));
      continue;
    }
    auto cw = consistent_endpoints(w.sig, co);
    if (!cw.ok() || !cw.value->consistent) {
      record_fail(rep, "endpoints do not join: " + show_co(co));
      continue;
    }
    const Ty &l = prop.value->lhs, &r = prop.value->rhs;
    if (fam_count(l) == 0 && fam_count(r) == 0 && !alpha_eq(l, r)) {
      record_fail(rep, "proper endpoints differ: " + show_ty(l) + " vs " + show_ty(r));
      continue;
    }
    ++rep.passed;
  }
  return rep;
}

// Open type with variables, for apartness sampling.
Ty rand_open(Gen& g, const std::vector<std::string>& vars, int depth) {
  if (depth <= 0 || g.chance(35)) {
    if (!vars.empty() && g.chance(50)) return ty_var(g.pick(vars));
    return g.chance(50) ? ty_con("U", {}) : ty_con("Z0", {});
  }
  switch (g.irange(0, 2)) {
    case 0:
      return ty_con("S0", {rand_open(g, vars, depth - 1)});
    case 1:
      return ty_con("P", {rand_open(g, vars, depth - 1), rand_open(g, vars, depth - 1)});
    default:
      return ty_arrow(rand_open(g, vars, depth - 1), rand_open(g, vars, depth - 1));
  }
}

SuiteReport suite_apart_stability(const World& w, int cases, Gen& g) {
  SuiteReport rep{"apart_stability"};
  std::vector<std::string> lv = {"a", "b"}, rv = {"u", "v"};
  int attempts = 0;
  while (rep.cases < cases && attempts < cases * 30) {
    ++attempts;
    int n = g.irange(1, 2);
    TyList sigma, tau;
    for (int k = 0; k < n; ++k) {
      sigma.push_back(rand_open(g, lv, 2));
      tau.push_back(rand_open(g, rv, 2));
    }
    if (!apart(sigma, tau)) continue;
    Subst theta;
    for (const auto& v : rv)
      if (g.chance(70)) theta.tys[v] = rand_proper(g, 2);
    TyList tau2;
    for (const Ty& t : tau) tau2.push_back(subst_ty(theta, t));
    ++rep.cases;
    if (apart(sigma, tau2)) {
      ++rep.passed;
    } else {
      std::string cx = "apartness lost under substitution:";
      for (const Ty& t : sigma) cx += " " + show_ty(t);
      cx += " vs";
      for (const Ty& t : tau2) cx += " " + show_ty(t);
      record_fail(rep, cx);
    }
  }
  return rep;
}

SuiteReport suite_totality_link(const World& w, int cases, Gen&) {
  SuiteReport rep{"totality_link"};
  // Closed proper types, small.
  std::vector<Ty> proper = enumerate_small(w.sig, 4, 0);
  for (const auto& [f, decl] : w.sig.families) {
    if (!decl.total) continue;
    // Per-position domain: if every equation binds the position with a bare
    // variable, any closed proper type is in the domain; otherwise only
    // closed members of the datatype the constructor patterns come from.
    std::vector<std::vector<Ty>> domains(decl.arity);
    for (int i = 0; i < decl.arity; ++i) {
      std::set<std::string> groups;
      bool all_vars = true;
      for (const auto& ax : w.sig.axioms)
        for (const auto& eq : ax.equations) {
          if (eq.fam != f || (int)eq.lhs.size() <= i) continue;
          if (eq.lhs[i]->kind == TyKind::Con) {
            all_vars = false;
            auto it = w.sig.ty_con_group.find(eq.lhs[i]->name);
            if (it != w.sig.ty_con_group.end()) groups.insert(it->second);
          }
        }
      if (all_vars) {
        domains[i] = proper;
      } else {
        for (const Ty& t : proper) {
          bool in_group = true;
          std::function<void(const Ty&)> walk = [&](const Ty& u) {
            if (u->kind != TyKind::Con || !w.sig.ty_con_group.count(u->name) ||
                !groups.count(w.sig.ty_con_group.at(u->name)))
              in_group = false;
            for (const Ty& k : u->kids) walk(k);
          };
          walk(t);
          if (in_group) domains[i].push_back(t);
        }
      }
    }
    std::vector<TyList> tuples = {{}};
    for (int i = 0; i < decl.arity; ++i) {
      std::vector<TyList> next;
      for (const auto& tup : tuples)
        for (const Ty& a : domains[i]) {
          TyList t2 = tup;
          t2.push_back(a);
          next.push_back(std::move(t2));
        }
      tuples = std::move(next);
    }
    for (const auto& tup : tuples) {
      if (rep.cases >= cases) break;
      ++rep.cases;
      auto q = total_eval(w.sig, f, tup);
      if (!q.ok()) {
        record_fail(rep, "total family stuck: " + show_ty(ty_fam(f, tup)));
        continue;
      }
      auto prop = check_coercion(w.sig, Context{}, q.value->proof);
      if (!prop.ok() || !alpha_eq(prop.value->rhs, q.value->witness)) {
        record_fail(rep, "resolution proof does not check: " + show_ty(ty_fam(f, tup)));
        continue;
      }
      ++rep.passed;
    }
  }
  return rep;
}

}  // namespace

World gen_world(uint64_t seed, int size) {
  World w;
  if (size <= 0) return w;
  Gen g(seed);
  w.sig = gen_signature(g, size);
  auto good = check_good_signature(w.sig);
  if (!good.ok())
    throw std::logic_error("gen_world produced a bad signature (internal error)");

  std::vector<std::string> fams = all_fams(w.sig);
  std::vector<std::string> totals = total_fams(w.sig);
  int n = 10 + 10 * size;
  for (int i = 0; i < n; ++i) w.type_pool.push_back(rand_pool_ty(g, w.sig, fams, 3));
  int kept = 0, tries = 0;
  while (kept < n && tries < n * 10) {
    ++tries;
    Ex e = rand_expr(g, w.sig, totals, 3);
    if (infer_expr(w.sig, Context{}, e).ok()) {
      w.expr_pool.push_back(e);
      ++kept;
    }
  }
  return w;
}

SuiteReport run_suite(const std::string& name, const World& world, int cases,
                      uint64_t seed) {
  Gen g(seed * 0x9e3779b97f4a7c15ull + 1);
  if (name == "preservation") return suite_preservation(world, cases, g);
  if (name == "progress") return suite_progress(world, cases, g);
  if (name == "measure") return suite_measure(world, cases, g);
  if (name == "local_confluence") return suite_local_confluence(world, cases, g);
  if (name == "strategy") return suite_strategy(world, cases, g);
  if (name == "consistency") return suite_consistency(world, cases, g);
  if (name == "apart_stability") return suite_apart_stability(world, cases, g);
  if (name == "totality_link") return suite_totality_link(world, cases, g);
  SuiteReport rep{name};
  rep.counterexamples.push_back("unknown suite: " + name);
  ++rep.failed;
  return rep;
}

std::vector<Ty> enumerate_small(const Signature& sig, int max_nodes, int fam_bound) {
  // by_size[n] = all closed types with exactly n nodes, deterministic order.
  std::vector<std::vector<Ty>> by_size(std::max(max_nodes, 0) + 1);
  struct Head {
    std::string name;
    int arity;
    bool fam;
  };
  std::vector<Head> heads;
  for (const auto& [h, a] : sig.ty_cons) heads.push_back({h, a, false});
  for (const auto& [f, d] : sig.families) heads.push_back({f, d.arity, true});
  std::sort(heads.begin(), heads.end(),
            [](const Head& a, const Head& b) { return a.name < b.name; });

  // All argument tuples of the given arity whose sizes sum to budget.
  std::function<std::vector<TyList>(int, int)> tuples = [&](int arity,
                                                            int budget) {
    std::vector<TyList> out;
    if (arity == 0) {
      if (budget == 0) out.push_back({});
      return out;
    }
    for (int k = 1; k + (arity - 1) <= budget; ++k)
      for (const Ty& child : by_size[(size_t)k])
        for (const TyList& rest : tuples(arity - 1, budget - k)) {
          TyList t{child};
          t.insert(t.end(), rest.begin(), rest.end());
          out.push_back(std::move(t));
        }
    return out;
  };

  for (int n = 1; n <= max_nodes; ++n) {
    for (const auto& h : heads)
      for (TyList& args : tuples(h.arity, n - 1))
        by_size[(size_t)n].push_back(h.fam ? ty_fam(h.name, std::move(args))
                                           : ty_con(h.name, std::move(args)));
    for (TyList& args : tuples(2, n - 1))
      by_size[(size_t)n].push_back(ty_arrow(args[0], args[1]));
  }
  std::vector<Ty> all;
  for (int n = 1; n <= max_nodes; ++n)
    for (const Ty& t : by_size[(size_t)n])
      if (fam_bound < 0 || fam_count(t) <= fam_bound) all.push_back(t);
  return all;
}

Co gen_coercion(const World& world, uint64_t seed) {
  Gen g(seed);
  if (world.type_pool.empty()) return co_refl(ty_con("U", {}));
  Ty start = g.pick(world.type_pool);
  return rand_co_from(g, world.sig, start, 3).first;
}

}  // namespace cfc
