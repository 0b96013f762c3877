#include "cfc/core_typecheck.hpp"

#include <sstream>

#include "cfc/signature_check.hpp"
#include "cfc/unify.hpp"

namespace cfc {

namespace {

std::string show_kind(TyKind k) {
  switch (k) {
    case TyKind::Con: return "constructor";
    case TyKind::Arrow: return "arrow";
    case TyKind::Var: return "variable";
    case TyKind::Forall: return "forall";
    case TyKind::Qual: return "qualified";
    case TyKind::Fam: return "family application";
  }
  return "?";
}

// check_type with a configurable code for family nodes, so the same walk
// serves proper-type positions (FamilyOutsideProp) and prop argument
// positions (NestedFamilyInProp).
void check_type_rec(const Signature& sig, const Context& ctx, const Ty& t,
                    const char* fam_code, Diagnostics& out);

void check_prop_rec(const Signature& sig, const Context& ctx, const Prop& p, Diagnostics& out) {
  if (p.lhs->kind == TyKind::Fam) {
    // P_Family
    auto it = sig.families.find(p.lhs->name);
    if (it == sig.families.end())
      out.push_back(diag("UndeclaredFamily", "family " + p.lhs->name + " is not declared"));
    else if ((size_t)it->second.arity != p.lhs->kids.size())
      out.push_back(diag("ArityMismatch", "family " + p.lhs->name + " expects " +
                                              std::to_string(it->second.arity) + " arguments"));
    for (const auto& a : p.lhs->kids)
      check_type_rec(sig, ctx, a, "NestedFamilyInProp", out);
    check_type_rec(sig, ctx, p.rhs, "NestedFamilyInProp", out);
  } else {
    // P_Types
    check_type_rec(sig, ctx, p.lhs, "NestedFamilyInProp", out);
    check_type_rec(sig, ctx, p.rhs, "NestedFamilyInProp", out);
  }
}

void check_type_rec(const Signature& sig, const Context& ctx, const Ty& t,
                    const char* fam_code, Diagnostics& out) {
  switch (t->kind) {
    case TyKind::Var:
      if (!ctx.has(BindKind::TyVar, t->name))
        out.push_back(diag("UnboundTyVar", "type variable " + t->name + " is not in scope"));
      return;
    case TyKind::Con: {
      auto it = sig.ty_cons.find(t->name);
      if (it == sig.ty_cons.end())
        out.push_back(diag("UndeclaredTyCon", "type constructor " + t->name + " is not declared"));
      else if ((size_t)it->second != t->kids.size())
        out.push_back(diag("ArityMismatch", "constructor " + t->name + " expects " +
                                                std::to_string(it->second) + " arguments, got " +
                                                std::to_string(t->kids.size())));
      for (const auto& k : t->kids) check_type_rec(sig, ctx, k, fam_code, out);
      return;
    }
    case TyKind::Arrow:
      check_type_rec(sig, ctx, t->kids[0], fam_code, out);
      check_type_rec(sig, ctx, t->kids[1], fam_code, out);
      return;
    case TyKind::Forall: {
      Context ctx2 = ctx.extended({BindKind::TyVar, t->name, std::nullopt, nullptr});
      check_type_rec(sig, ctx2, t->kids[0], fam_code, out);
      return;
    }
    case TyKind::Qual: {
      check_prop_rec(sig, ctx, Prop{t->kids[0], t->kids[1]}, out);
      check_type_rec(sig, ctx, t->kids[2], fam_code, out);
      return;
    }
    case TyKind::Fam:
      out.push_back(diag(fam_code, "family application " + t->name + " not allowed here"));
      return;
  }
}

Result<Ok> wrap(Diagnostics out) {
  if (!out.empty()) return Result<Ok>::failure(std::move(out));
  return Result<Ok>::success(Ok{});
}

}  // namespace

Result<Ok> check_type(const Signature& sig, const Context& ctx, const Ty& t) {
  Diagnostics out;
  check_type_rec(sig, ctx, t, "FamilyOutsideProp", out);
  return wrap(std::move(out));
}

Result<Ok> check_prop(const Signature& sig, const Context& ctx, const Prop& p) {
  Diagnostics out;
  check_prop_rec(sig, ctx, p, out);
  return wrap(std::move(out));
}

Result<Ok> check_ctx(const Signature& sig, const Context& ctx) {
  Diagnostics out;
  Context prefix;
  for (const auto& b : ctx.binds) {
    if (prefix.has(b.kind, b.name))
      out.push_back(diag("DuplicateBinding", "duplicate binding for " + b.name));
    if (b.kind == BindKind::CoVar && b.prop) {
      auto r = check_prop(sig, prefix, *b.prop);
      if (!r.ok())
        out.push_back(diag("IllFormedBindingType", "ill-formed proposition for " + b.name +
                                                       ": " + r.diags.front().message));
    }
    if (b.kind == BindKind::TmVar && b.ty) {
      auto r = check_type(sig, prefix, b.ty);
      if (!r.ok())
        out.push_back(diag("IllFormedBindingType",
                           "ill-formed type for " + b.name + ": " + r.diags.front().message));
    }
    prefix = prefix.extended(b);
  }
  return wrap(std::move(out));
}

// ---------------------------------------------------------------------------
// Coercion validity

namespace {

using PropResult = Result<Prop>;

PropResult co_fail(std::string code, std::string msg) {
  return PropResult::failure(diag(std::move(code), std::move(msg)));
}

// Pretype validity: scoping and arity only, family applications allowed
// anywhere.  Used for refl, which may relate pretypes.
void check_pretype_rec(const Signature& sig, const Context& ctx, const Ty& t, Diagnostics& out) {
  switch (t->kind) {
    case TyKind::Var:
      if (!ctx.has(BindKind::TyVar, t->name))
        out.push_back(diag("UnboundTyVar", "type variable " + t->name + " is not in scope"));
      return;
    case TyKind::Con: {
      auto it = sig.ty_cons.find(t->name);
      if (it == sig.ty_cons.end())
        out.push_back(diag("UndeclaredTyCon", "type constructor " + t->name + " is not declared"));
      else if ((size_t)it->second != t->kids.size())
        out.push_back(diag("ArityMismatch", "constructor " + t->name + " arity mismatch"));
      break;
    }
    case TyKind::Fam: {
      auto it = sig.families.find(t->name);
      if (it == sig.families.end())
        out.push_back(diag("UndeclaredFamily", "family " + t->name + " is not declared"));
      else if ((size_t)it->second.arity != t->kids.size())
        out.push_back(diag("ArityMismatch", "family " + t->name + " arity mismatch"));
      break;
    }
    case TyKind::Forall: {
      Context ctx2 = ctx.extended({BindKind::TyVar, t->name, std::nullopt, nullptr});
      check_pretype_rec(sig, ctx2, t->kids[0], out);
      return;
    }
    default: break;
  }
  if (t->kind != TyKind::Forall)
    for (const auto& k : t->kids) check_pretype_rec(sig, ctx, k, out);
}

}  // namespace

Result<Ok> check_resolutions(const Signature& sig, const Context& ctx,
                             const std::vector<Resolution>& qs,
                             const std::vector<Assumption>& chis) {
  if (qs.size() != chis.size())
    return Result<Ok>::failure(diag("LengthMismatch",
                                    "expected " + std::to_string(chis.size()) + " resolutions, got " +
                                        std::to_string(qs.size())));
  Subst theta;  // earlier witnesses, threaded into later assumptions
  for (size_t k = 0; k < qs.size(); ++k) {
    const auto& q = qs[k];
    const auto& chi = chis[k];
    auto wr = check_type(sig, ctx, q.witness);
    if (!wr.ok())
      return Result<Ok>::failure(diag("ImproperWitness",
                                      "witness for assumption " + std::to_string(k) +
                                          " is not a proper type: " + wr.diags.front().message));
    auto pr = check_coercion(sig, ctx, q.proof);
    if (!pr.ok()) return Result<Ok>::failure(pr.diags);
    TyList args;
    for (const auto& a : chi.args) args.push_back(subst_ty(theta, a));
    Prop want{ty_fam(chi.fam, args), q.witness};
    if (!alpha_eq(pr->lhs, want.lhs) || !alpha_eq(pr->rhs, want.rhs))
      return Result<Ok>::failure(diag("ProofPropMismatch",
                                      "resolution proof " + std::to_string(k) +
                                          " does not prove the assumption's proposition"));
    theta.tys[chi.tv] = q.witness;
  }
  return Result<Ok>::success(Ok{});
}

Result<Prop> check_coercion(const Signature& sig, const Context& ctx, const Co& g) {
  switch (g->kind) {
    case CoKind::Refl: {
      // Coercion regularity is not part of the system; refl may mention
      // pretypes, so we only require scoping, not properness.
      Diagnostics ds;
      check_pretype_rec(sig, ctx, g->tys[0], ds);
      if (!ds.empty()) return PropResult::failure(std::move(ds));
      return PropResult::success(Prop{g->tys[0], g->tys[0]});
    }
    case CoKind::Sym: {
      auto r = check_coercion(sig, ctx, g->kids[0]);
      if (!r.ok()) return r;
      return PropResult::success(Prop{r->rhs, r->lhs});
    }
    case CoKind::Trans: {
      auto r1 = check_coercion(sig, ctx, g->kids[0]);
      if (!r1.ok()) return r1;
      auto r2 = check_coercion(sig, ctx, g->kids[1]);
      if (!r2.ok()) return r2;
      if (!alpha_eq(r1->rhs, r2->lhs))
        return co_fail("CoercionMismatch", "transitivity endpoints do not meet");
      return PropResult::success(Prop{r1->lhs, r2->rhs});
    }
    case CoKind::ConCong: {
      auto it = sig.ty_cons.find(g->name);
      if (it == sig.ty_cons.end())
        return co_fail("UndeclaredTyCon", "type constructor " + g->name + " is not declared");
      if ((size_t)it->second != g->kids.size())
        return co_fail("ArityMismatch", "constructor congruence arity mismatch for " + g->name);
      TyList ls, rs;
      for (const auto& k : g->kids) {
        auto r = check_coercion(sig, ctx, k);
        if (!r.ok()) return r;
        ls.push_back(r->lhs);
        rs.push_back(r->rhs);
      }
      return PropResult::success(Prop{ty_con(g->name, ls), ty_con(g->name, rs)});
    }
    case CoKind::FamCong: {
      auto it = sig.families.find(g->name);
      if (it == sig.families.end())
        return co_fail("UndeclaredFamily", "family " + g->name + " is not declared");
      if ((size_t)it->second.arity != g->kids.size())
        return co_fail("ArityMismatch", "family congruence arity mismatch for " + g->name);
      TyList ls, rs;
      for (const auto& k : g->kids) {
        auto r = check_coercion(sig, ctx, k);
        if (!r.ok()) return r;
        ls.push_back(r->lhs);
        rs.push_back(r->rhs);
      }
      return PropResult::success(Prop{ty_fam(g->name, ls), ty_fam(g->name, rs)});
    }
    case CoKind::ArrowCong: {
      auto r1 = check_coercion(sig, ctx, g->kids[0]);
      if (!r1.ok()) return r1;
      auto r2 = check_coercion(sig, ctx, g->kids[1]);
      if (!r2.ok()) return r2;
      return PropResult::success(
          Prop{ty_arrow(r1->lhs, r2->lhs), ty_arrow(r1->rhs, r2->rhs)});
    }
    case CoKind::ForallCong: {
      Context ctx2 = ctx.extended({BindKind::TyVar, g->name, std::nullopt, nullptr});
      auto r = check_coercion(sig, ctx2, g->kids[0]);
      if (!r.ok()) return r;
      return PropResult::success(
          Prop{ty_forall(g->name, r->lhs), ty_forall(g->name, r->rhs)});
    }
    case CoKind::QualCong: {
      auto r1 = check_coercion(sig, ctx, g->kids[0]);
      if (!r1.ok()) return r1;
      auto r2 = check_coercion(sig, ctx, g->kids[1]);
      if (!r2.ok()) return r2;
      auto r3 = check_coercion(sig, ctx, g->kids[2]);
      if (!r3.ok()) return r3;
      return PropResult::success(Prop{ty_qual(r1->lhs, r2->lhs, r3->lhs),
                                      ty_qual(r1->rhs, r2->rhs, r3->rhs)});
    }
    case CoKind::Nth: {
      auto r = check_coercion(sig, ctx, g->kids[0]);
      if (!r.ok()) return r;
      const Ty& l = r->lhs;
      const Ty& rr = r->rhs;
      if (l->kind != rr->kind || l->kind == TyKind::Fam)
        return co_fail("BadDecomposition", "nth applied to a non-decomposable proposition");
      if (l->kind == TyKind::Con) {
        if (l->name != rr->name || l->kids.size() != rr->kids.size())
          return co_fail("BadDecomposition", "nth across distinct constructors");
        if (g->index < 0 || (size_t)g->index >= l->kids.size())
          return co_fail("BadDecomposition", "nth index out of range");
        return PropResult::success(Prop{l->kids[g->index], rr->kids[g->index]});
      }
      if (l->kind == TyKind::Arrow) {
        if (g->index < 0 || g->index > 1)
          return co_fail("BadDecomposition", "nth index out of range for arrow");
        return PropResult::success(Prop{l->kids[g->index], rr->kids[g->index]});
      }
      if (l->kind == TyKind::Qual) {
        if (g->index < 0 || g->index > 2)
          return co_fail("BadDecomposition", "nth index out of range for qualified type");
        return PropResult::success(Prop{l->kids[g->index], rr->kids[g->index]});
      }
      return co_fail("BadDecomposition", "nth applied to " + show_kind(l->kind));
    }
    case CoKind::Inst: {
      auto r = check_coercion(sig, ctx, g->kids[0]);
      if (!r.ok()) return r;
      if (r->lhs->kind != TyKind::Forall || r->rhs->kind != TyKind::Forall)
        return co_fail("BadDecomposition", "instantiation of a non-forall proposition");
      auto tr = check_type(sig, ctx, g->tys[0]);
      if (!tr.ok()) return PropResult::failure(tr.diags);
      Ty l = subst_ty(Subst::of_ty(r->lhs->name, g->tys[0]), r->lhs->kids[0]);
      Ty rr = subst_ty(Subst::of_ty(r->rhs->name, g->tys[0]), r->rhs->kids[0]);
      return PropResult::success(Prop{l, rr});
    }
    case CoKind::Var: {
      const Binding* b = ctx.lookup(BindKind::CoVar, g->name);
      if (!b || !b->prop)
        return co_fail("UnboundCoVar", "coercion variable " + g->name + " is not in scope");
      return PropResult::success(*b->prop);
    }
    case CoKind::Axiom: {
      const AxiomDecl* ax = sig.find_axiom(g->name);
      if (!ax) return co_fail("UndeclaredAxiom", "axiom " + g->name + " is not declared");
      if (g->index < 0 || (size_t)g->index >= ax->equations.size())
        return co_fail("AxiomIndexOutOfRange", "equation index " + std::to_string(g->index) +
                                                   " out of range for axiom " + g->name);
      const Equation& eq = ax->equations[g->index];
      if (g->tys.size() != eq.tyvars.size())
        return co_fail("ResolutionMismatch",
                       "axiom " + g->name + " expects " + std::to_string(eq.tyvars.size()) +
                           " type arguments, got " + std::to_string(g->tys.size()));
      Subst inst;
      for (size_t k = 0; k < eq.tyvars.size(); ++k) {
        auto tr = check_type(sig, ctx, g->tys[k]);
        if (!tr.ok()) return PropResult::failure(tr.diags);
        inst.tys[eq.tyvars[k]] = g->tys[k];
      }
      // Resolutions check against the assumptions instantiated at σ̄.
      std::vector<Assumption> chis;
      for (const auto& chi : eq.assumps) {
        Assumption c2 = chi;
        TyList args;
        for (const auto& a : chi.args) args.push_back(subst_ty(inst, a));
        c2.args = std::move(args);
        chis.push_back(std::move(c2));
      }
      auto rr = check_resolutions(sig, ctx, g->res, chis);
      if (!rr.ok()) {
        Diagnostics ds = rr.diags;
        if (!ds.empty() && ds.front().code == "LengthMismatch")
          ds.front().code = "ResolutionMismatch";
        return PropResult::failure(std::move(ds));
      }
      for (int j = 0; j < g->index; ++j)
        if (!no_conflict(ax->equations, g->index, g->tys, j))
          return co_fail("ConflictWithEarlierEquation",
                         "equation " + std::to_string(g->index) + " of " + g->name +
                             " conflicts with earlier equation " + std::to_string(j));
      TyList lhs_args;
      for (const auto& t : eq.lhs) lhs_args.push_back(subst_ty(inst, t));
      Subst full = inst;
      for (size_t k = 0; k < chis.size(); ++k) full.tys[chis[k].tv] = g->res[k].witness;
      return PropResult::success(Prop{ty_fam(eq.fam, lhs_args), subst_ty(full, eq.rhs)});
    }
  }
  return co_fail("CoercionMismatch", "malformed coercion node");
}

// ---------------------------------------------------------------------------
// Expression typing

Result<Ty> infer_expr(const Signature& sig, const Context& ctx, const Ex& e) {
  using R = Result<Ty>;
  switch (e->kind) {
    case ExKind::Var: {
      const Binding* b = ctx.lookup(BindKind::TmVar, e->name);
      if (!b) return R::failure(diag("UnboundVar", "variable " + e->name + " is not in scope"));
      return R::success(b->ty);
    }
    case ExKind::Const: {
      auto it = sig.term_consts.find(e->name);
      if (it == sig.term_consts.end())
        return R::failure(diag("UnboundVar", "constant " + e->name + " is not declared"));
      return R::success(it->second);
    }
    case ExKind::Lam: {
      auto tr = check_type(sig, ctx, e->ty);
      if (!tr.ok()) return R::failure(tr.diags);
      Context ctx2 = ctx.extended({BindKind::TmVar, e->name, std::nullopt, e->ty});
      auto br = infer_expr(sig, ctx2, e->kids[0]);
      if (!br.ok()) return br;
      return R::success(ty_arrow(e->ty, *br));
    }
    case ExKind::App: {
      auto fr = infer_expr(sig, ctx, e->kids[0]);
      if (!fr.ok()) return fr;
      if ((*fr)->kind != TyKind::Arrow)
        return R::failure(diag("AppShapeMismatch", "application head is not a function"));
      auto ar = infer_expr(sig, ctx, e->kids[1]);
      if (!ar.ok()) return ar;
      if (!alpha_eq(*ar, (*fr)->kids[0]))
        return R::failure(diag("AppShapeMismatch", "argument type does not match the domain"));
      return R::success((*fr)->kids[1]);
    }
    case ExKind::TLam: {
      Context ctx2 = ctx.extended({BindKind::TyVar, e->name, std::nullopt, nullptr});
      auto br = infer_expr(sig, ctx2, e->kids[0]);
      if (!br.ok()) return br;
      return R::success(ty_forall(e->name, *br));
    }
    case ExKind::TApp: {
      auto fr = infer_expr(sig, ctx, e->kids[0]);
      if (!fr.ok()) return fr;
      if ((*fr)->kind != TyKind::Forall)
        return R::failure(diag("AppShapeMismatch", "type application head is not polymorphic"));
      auto tr = check_type(sig, ctx, e->ty);
      if (!tr.ok()) return R::failure(tr.diags);
      return R::success(subst_ty(Subst::of_ty((*fr)->name, e->ty), (*fr)->kids[0]));
    }
    case ExKind::CLam: {
      auto pr = check_prop(sig, ctx, *e->prop);
      if (!pr.ok()) return R::failure(pr.diags);
      Context ctx2 = ctx.extended({BindKind::CoVar, e->name, e->prop, nullptr});
      auto br = infer_expr(sig, ctx2, e->kids[0]);
      if (!br.ok()) return br;
      return R::success(ty_qual(e->prop->lhs, e->prop->rhs, *br));
    }
    case ExKind::CApp: {
      auto fr = infer_expr(sig, ctx, e->kids[0]);
      if (!fr.ok()) return fr;
      if ((*fr)->kind != TyKind::Qual)
        return R::failure(diag("AppShapeMismatch", "coercion application head is not qualified"));
      auto gr = check_coercion(sig, ctx, e->co);
      if (!gr.ok()) return R::failure(gr.diags);
      if (!alpha_eq(gr->lhs, (*fr)->kids[0]) || !alpha_eq(gr->rhs, (*fr)->kids[1]))
        return R::failure(diag("AppShapeMismatch",
                               "coercion does not prove the qualified type's proposition"));
      return R::success((*fr)->kids[2]);
    }
    case ExKind::Cast: {
      auto br = infer_expr(sig, ctx, e->kids[0]);
      if (!br.ok()) return br;
      auto gr = check_coercion(sig, ctx, e->co);
      if (!gr.ok()) return R::failure(gr.diags);
      if (!alpha_eq(*br, gr->lhs))
        return R::failure(diag("CastPropMismatch",
                               "cast source does not match the expression's type"));
      auto tr = check_type(sig, ctx, gr->rhs);
      if (!tr.ok())
        return R::failure(diag("ImproperCastTarget",
                               "cast target is not a proper type: " + tr.diags.front().message));
      return R::success(gr->rhs);
    }
    case ExKind::Assume: {
      const Assumption& chi = *e->chi;
      auto it = sig.families.find(chi.fam);
      if (it == sig.families.end())
        return R::failure(diag("UndeclaredFamily", "family " + chi.fam + " is not declared"));
      if (!it->second.total)
        return R::failure(diag("AssumeOnPartialFamily",
                               "assume requires a total family; " + chi.fam + " is partial"));
      if ((size_t)it->second.arity != chi.args.size())
        return R::failure(diag("ArityMismatch", "family " + chi.fam + " expects " +
                                                    std::to_string(it->second.arity) + " arguments"));
      // The assumption's proposition F τ̄ ~ α must be valid with α in scope;
      // its arguments live in the outer scope.
      for (const auto& a : chi.args) {
        auto ar = check_type(sig, ctx, a);
        if (!ar.ok()) return R::failure(ar.diags);
      }
      Context ctx2 = ctx.extended({BindKind::TyVar, chi.tv, std::nullopt, nullptr});
      ctx2 = ctx2.extended(
          {BindKind::CoVar, chi.cv, Prop{ty_fam(chi.fam, chi.args), ty_var(chi.tv)}, nullptr});
      auto br = infer_expr(sig, ctx2, e->kids[0]);
      if (!br.ok()) return br;
      if (free_ty_vars(*br).count(chi.tv))
        return R::failure(diag("SkolemEscape", "assumed variable " + chi.tv +
                                                   " escapes into the result type"));
      return R::success(*br);
    }
  }
  return R::failure(diag("UnboundVar", "malformed expression node"));
}

}  // namespace cfc
