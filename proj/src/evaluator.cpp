#include "cfc/evaluator.hpp"

#include "cfc/type_rewriter.hpp"

namespace cfc {

bool is_value(const Ex& e) {
  switch (e->kind) {
    case ExKind::Const:
    case ExKind::Lam:
    case ExKind::TLam:
    case ExKind::CLam:
      return true;
    default:
      return false;
  }
}

namespace {

bool is_coerced_value(const Ex& e) {
  return e->kind == ExKind::Cast && is_value(e->kids[0]);
}

StepResult stepped(Ex e) { return {StepResult::Stepped, std::move(e), {}}; }
StepResult stuck(const Ex& e, std::string why) {
  return {StepResult::Stuck, e, std::move(why)};
}

Subst beta_subst_tm(const std::string& x, const Ex& arg) {
  Subst s;
  s.exs[x] = arg;
  return s;
}

Subst beta_subst_co(const std::string& c, const Co& g) {
  Subst s;
  s.cos[c] = g;
  return s;
}

}  // namespace

StepResult step(const Signature& sig, const Ex& e) {
  switch (e->kind) {
    case ExKind::Const:
    case ExKind::Lam:
    case ExKind::TLam:
    case ExKind::CLam:
      return {StepResult::Value, e, {}};
    case ExKind::Var:
      return stuck(e, "free variable " + e->name);

    case ExKind::Cast: {
      const Ex& b = e->kids[0];
      if (is_coerced_value(b))  // S_Trans: (v |> g1) |> g2 -> v |> (g1 ; g2)
        return stepped(ex_cast(b->kids[0], co_trans(b->co, e->co)));
      if (is_value(b)) return {StepResult::CoercedValue, e, {}};
      StepResult r = step(sig, b);  // S_Cast congruence
      if (r.kind == StepResult::Stepped) return stepped(ex_cast(r.expr, e->co));
      return stuck(e, r.reason.empty() ? "cast body cannot step" : r.reason);
    }

    case ExKind::App: {
      const Ex& f = e->kids[0];
      if (f->kind == ExKind::Lam)  // S_Beta (call-by-name)
        return stepped(subst_ex(beta_subst_tm(f->name, e->kids[1]), f->kids[0]));
      if (is_coerced_value(f)) {
        // S_Push: (v |> g) e -> (v (e |> sym (nth 0 g))) |> nth 1 g
        Co g = f->co;
        Ex arg = ex_cast(e->kids[1], co_sym(co_nth(0, g)));
        return stepped(ex_cast(ex_app(f->kids[0], arg), co_nth(1, g)));
      }
      StepResult r = step(sig, f);  // S_App congruence
      if (r.kind == StepResult::Stepped) return stepped(ex_app(r.expr, e->kids[1]));
      return stuck(e, "application head cannot step");
    }

    case ExKind::TApp: {
      const Ex& f = e->kids[0];
      if (f->kind == ExKind::TLam)  // S_TBeta
        return stepped(subst_ex(Subst::of_ty(f->name, e->ty), f->kids[0]));
      if (is_coerced_value(f))  // S_TPush: (v |> g) t -> (v t) |> (g @ t)
        return stepped(ex_cast(ex_tapp(f->kids[0], e->ty), co_inst(f->co, e->ty)));
      StepResult r = step(sig, f);  // S_TApp congruence
      if (r.kind == StepResult::Stepped) return stepped(ex_tapp(r.expr, e->ty));
      return stuck(e, "type application head cannot step");
    }

    case ExKind::CApp: {
      const Ex& f = e->kids[0];
      if (f->kind == ExKind::CLam)  // S_CBeta
        return stepped(subst_ex(beta_subst_co(f->name, e->co), f->kids[0]));
      if (is_coerced_value(f)) {
        // S_CPush: (v |> h) g -> (v (nth 0 h ; g ; sym (nth 1 h))) |> nth 2 h
        Co h = f->co;
        Co inner = co_trans(co_nth(0, h), co_trans(e->co, co_sym(co_nth(1, h))));
        return stepped(ex_cast(ex_capp(f->kids[0], inner), co_nth(2, h)));
      }
      StepResult r = step(sig, f);  // S_CApp congruence
      if (r.kind == StepResult::Stepped) return stepped(ex_capp(r.expr, e->co));
      return stuck(e, "coercion application head cannot step");
    }

    case ExKind::Assume: {
      // S_Resolve: evaluate the family application, substitute the
      // resolution for the assumption.
      const Assumption& chi = *e->chi;
      auto q = total_eval(sig, chi.fam, chi.args);
      if (!q.ok()) return stuck(e, q.diags.front().message);
      return stepped(subst_ex(resolution_subst(*q, chi), e->kids[0]));
    }
  }
  return stuck(e, "malformed expression");
}

EvalResult eval(const Signature& sig, const Ex& e, int fuel) {
  EvalResult out;
  Ex cur = e;
  out.trace.push_back(cur);
  for (int i = 0; i < fuel; ++i) {
    StepResult r = step(sig, cur);
    if (r.kind != StepResult::Stepped) {
      out.final = r;
      return out;
    }
    cur = r.expr;
    out.trace.push_back(cur);
  }
  out.final = stuck(cur, "fuel exhausted");
  out.fuel_exhausted = true;
  return out;
}

Result<Resolution> total_eval(const Signature& sig, const std::string& fam,
                              const TyList& args) {
  auto it = sig.families.find(fam);
  if (it == sig.families.end() || !it->second.total)
    return Result<Resolution>::failure(
        diag("NoMatchingEquation", "family " + fam + " is not total"));
  auto q = resolve(sig, fam, args);
  if (!q)
    return Result<Resolution>::failure(
        diag("NoMatchingEquation",
             "total family " + fam + " is stuck — totality checking was bypassed"));
  return Result<Resolution>::success(std::move(*q));
}

}  // namespace cfc
