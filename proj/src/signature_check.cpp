#include "cfc/signature_check.hpp"

#include <sstream>

#include "cfc/unify.hpp"

namespace cfc {

namespace {

std::string eq_label(const std::string& axiom, size_t i) {
  std::ostringstream os;
  os << "axiom " << axiom << ", equation " << i;
  return os.str();
}

void check_equation(const Signature& sig, const std::string& axiom, size_t idx,
                    const Equation& e, Diagnostics& out) {
  std::string where = eq_label(axiom, idx);

  auto fit = sig.families.find(e.fam);
  if (fit == sig.families.end()) {
    out.push_back(diag("UndeclaredFamily", where + ": family " + e.fam + " is not declared"));
  } else if ((size_t)fit->second.arity != e.lhs.size()) {
    out.push_back(diag("ArityMismatch", where + ": " + e.fam + " expects " +
                                            std::to_string(fit->second.arity) + " arguments, got " +
                                            std::to_string(e.lhs.size())));
  }

  std::set<std::string> scope(e.tyvars.begin(), e.tyvars.end());

  // Assumptions: declared family of matching arity, proper args, args scoped
  // over ᾱ and earlier assumption variables.  Each χ binds its variable for
  // everything to its right.
  for (const auto& chi : e.assumps) {
    auto cit = sig.families.find(chi.fam);
    if (cit == sig.families.end()) {
      out.push_back(diag("BadAssumption", where + ": assumption family " + chi.fam + " is not declared"));
    } else if ((size_t)cit->second.arity != chi.args.size()) {
      out.push_back(diag("BadAssumption", where + ": assumption family " + chi.fam + " expects " +
                                              std::to_string(cit->second.arity) + " arguments, got " +
                                              std::to_string(chi.args.size())));
    }
    for (const auto& a : chi.args) {
      if (fam_count(a) > 0)
        out.push_back(diag("BadAssumption", where + ": assumption argument of " + chi.fam +
                                                " contains a family application"));
      for (const auto& v : free_ty_vars(a))
        if (!scope.count(v))
          out.push_back(diag("BadAssumption",
                             where + ": variable " + v + " out of scope in assumption for " + chi.fam));
    }
    scope.insert(chi.tv);
  }

  std::set<std::string> lhs_scope(e.tyvars.begin(), e.tyvars.end());
  for (const auto& t : e.lhs) {
    if (fam_count(t) > 0)
      out.push_back(diag("FamilyInLHS", where + ": family application in left-hand side"));
    for (const auto& v : free_ty_vars(t))
      if (!lhs_scope.count(v))
        out.push_back(diag("IllScopedEquation", where + ": variable " + v + " out of scope in left-hand side"));
  }

  if (fam_count(e.rhs) > 0)
    out.push_back(diag("FamilyInRHS", where + ": family application in right-hand side"));
  for (const auto& v : free_ty_vars(e.rhs))
    if (!scope.count(v))
      out.push_back(diag("IllScopedEquation", where + ": variable " + v + " out of scope in right-hand side"));
}

}  // namespace

Result<Ok> check_signature(const Signature& sig) {
  Diagnostics out;
  // Term constant types may not mention undeclared families either, but
  // their shape is otherwise unconstrained here; the type checker rules on
  // properness at use sites.
  for (const auto& ax : sig.axioms)
    for (size_t i = 0; i < ax.equations.size(); ++i)
      check_equation(sig, ax.name, i, ax.equations[i], out);
  if (!out.empty()) return Result<Ok>::failure(std::move(out));
  return Result<Ok>::success(Ok{});
}

Ty expand_assumption_vars(const Equation& e) {
  Ty rhs = e.rhs;
  // Right to left: later assumptions may mention earlier assumption
  // variables in their arguments, so the earlier substitution must run last.
  for (auto it = e.assumps.rbegin(); it != e.assumps.rend(); ++it)
    rhs = subst_ty(Subst::of_ty(it->tv, ty_fam(it->fam, it->args)), rhs);
  return rhs;
}

bool compat(const Equation& e1, const Equation& e2) {
  auto theta = unify(e1.lhs, e2.lhs);
  if (!theta) return true;  // Co_Distinct
  Ty r1 = subst_ty(*theta, expand_assumption_vars(e1));
  Ty r2 = subst_ty(*theta, expand_assumption_vars(e2));
  return alpha_eq(r1, r2);  // Co_Coinc
}

namespace {

Equation rename_equation(const Equation& e, std::set<std::string>& avoid) {
  Subst ren;
  Equation out = e;
  auto freshen = [&](std::string& v) {
    std::string v2 = fresh_name(v, avoid);
    avoid.insert(v2);
    if (v2 != v) ren.tys[v] = ty_var(v2);
    v = v2;
  };
  for (auto& v : out.tyvars) freshen(v);
  for (auto& chi : out.assumps) {
    TyList args;
    for (auto& a : chi.args) args.push_back(subst_ty(ren, a));
    chi.args = std::move(args);
    freshen(chi.tv);
  }
  TyList lhs;
  for (auto& t : out.lhs) lhs.push_back(subst_ty(ren, t));
  out.lhs = std::move(lhs);
  out.rhs = subst_ty(ren, out.rhs);
  return out;
}

std::set<std::string> equation_vars(const Equation& e) {
  std::set<std::string> vs(e.tyvars.begin(), e.tyvars.end());
  for (const auto& chi : e.assumps) vs.insert(chi.tv);
  for (const auto& t : e.lhs)
    for (const auto& v : free_ty_vars(t)) vs.insert(v);
  for (const auto& v : free_ty_vars(e.rhs)) vs.insert(v);
  return vs;
}

}  // namespace

bool compat_fresh(const Equation& e1, const Equation& e2) {
  std::set<std::string> avoid = equation_vars(e1);
  for (const auto& v : equation_vars(e2)) avoid.insert(v);
  Equation e2f = rename_equation(e2, avoid);
  return compat(e1, e2f);
}

bool no_conflict(const std::vector<Equation>& eqs, size_t i, const TyList& rho,
                 size_t j) {
  const Equation& ei = eqs[i];
  const Equation& ej = eqs[j];
  Subst inst;
  for (size_t k = 0; k < ei.tyvars.size() && k < rho.size(); ++k)
    inst.tys[ei.tyvars[k]] = rho[k];
  TyList lhs_i;
  for (const auto& t : ei.lhs) lhs_i.push_back(subst_ty(inst, t));
  std::set<std::string> avoid = free_ty_vars(lhs_i);
  Equation ejf = rename_equation(ej, avoid);
  if (apart(ejf.lhs, lhs_i)) return true;  // NC_Apart
  return compat_fresh(ei, ej);             // NC_Compatible
}

Result<Ok> check_good_signature(const Signature& sig) {
  Diagnostics out;

  // (1) one family per axiom
  for (const auto& ax : sig.axioms) {
    for (const auto& e : ax.equations)
      if (e.fam != ax.equations.front().fam) {
        out.push_back(diag("MixedFamilyAxiom",
                           "axiom " + ax.name + " mixes families " + ax.equations.front().fam +
                               " and " + e.fam));
        break;
      }
  }

  // (2) fv(lhs) = quantified variables, exactly
  for (const auto& ax : sig.axioms)
    for (size_t i = 0; i < ax.equations.size(); ++i) {
      const Equation& e = ax.equations[i];
      auto fv = free_ty_vars(e.lhs);
      std::set<std::string> quant(e.tyvars.begin(), e.tyvars.end());
      if (fv != quant)
        out.push_back(diag("UnboundOrUnusedTyVar",
                           eq_label(ax.name, i) +
                               ": quantified variables must be exactly the left-hand side's free variables"));
    }

  // (3) a multi-equation (closed) axiom owns its family outright
  for (const auto& ax : sig.axioms) {
    if (ax.equations.empty()) continue;
    const std::string& fam = ax.equations.front().fam;
    if (ax.equations.size() > 1) {
      for (const auto* other : sig.axioms_for(fam))
        if (other->name != ax.name)
          out.push_back(diag("ClosedFamilyClash", "family " + fam + " has closed axiom " + ax.name +
                                                      " but also axiom " + other->name));
    }
  }

  // (4) open axioms over a shared family must be pairwise compatible
  std::map<std::string, std::vector<const AxiomDecl*>> open_by_fam;
  for (const auto& ax : sig.axioms)
    if (ax.equations.size() == 1) open_by_fam[ax.equations.front().fam].push_back(&ax);
  for (const auto& [fam, axs] : open_by_fam)
    for (size_t a = 0; a < axs.size(); ++a)
      for (size_t b = a + 1; b < axs.size(); ++b)
        if (!compat_fresh(axs[a]->equations[0], axs[b]->equations[0]))
          out.push_back(diag("IncompatibleOpenEquations",
                             "open axioms " + axs[a]->name + " and " + axs[b]->name + " over " + fam +
                                 " are incompatible"));

  if (!out.empty()) return Result<Ok>::failure(std::move(out));
  return Result<Ok>::success(Ok{});
}

}  // namespace cfc
