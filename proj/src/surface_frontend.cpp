#include "cfc/surface_frontend.hpp"

#include <algorithm>
#include <sstream>

#include "cfc/printer.hpp"
#include "cfc/unify.hpp"

namespace cfc {

SType st_var(std::string name) { return std::make_shared<STypeNode>(STypeNode{SKind::Var, std::move(name), {}, {}}); }
SType st_con(std::string name, std::vector<SType> args) {
  return std::make_shared<STypeNode>(STypeNode{SKind::Con, std::move(name), std::move(args), {}});
}
SType st_arrow(SType dom, SType cod) {
  return std::make_shared<STypeNode>(STypeNode{SKind::Arrow, "", {std::move(dom), std::move(cod)}, {}});
}
SType st_fam(std::string name, std::vector<SType> args) {
  return std::make_shared<STypeNode>(STypeNode{SKind::Fam, std::move(name), std::move(args), {}});
}
SType st_forall(std::string binder, SType body) {
  return std::make_shared<STypeNode>(STypeNode{SKind::Forall, std::move(binder), {std::move(body)}, {}});
}
SType st_qual(std::vector<SPred> preds, SType body) {
  return std::make_shared<STypeNode>(STypeNode{SKind::Qual, "", {std::move(body)}, std::move(preds)});
}

bool spred_eq(const SPred& a, const SPred& b) {
  return a.cls == b.cls && alpha_eq(a.args, b.args);
}

std::string spred_show(const SPred& p) {
  std::string s = p.cls;
  for (const auto& a : p.args) {
    std::string t = show_ty(a);
    s += " " + (t.find(' ') == std::string::npos ? t : "(" + t + ")");
  }
  return s;
}

Ty strip_surface(const SType& s) {
  switch (s->kind) {
    case SKind::Var: return ty_var(s->name);
    case SKind::Con: {
      TyList ks;
      for (const auto& k : s->kids) ks.push_back(strip_surface(k));
      return ty_con(s->name, ks);
    }
    case SKind::Fam: {
      TyList ks;
      for (const auto& k : s->kids) ks.push_back(strip_surface(k));
      return ty_fam(s->name, ks);
    }
    case SKind::Arrow:
      return ty_arrow(strip_surface(s->kids[0]), strip_surface(s->kids[1]));
    case SKind::Forall:
      return ty_forall(s->name, strip_surface(s->kids[0]));
    case SKind::Qual:
      // Predicates have no core counterpart; the body carries the shape.
      return strip_surface(s->kids[0]);
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Entailment

namespace {

Subst pred_params_subst(const ClassDecl& cls, const SPred& inst) {
  Subst s;
  for (size_t i = 0; i < cls.params.size() && i < inst.args.size(); ++i)
    s.tys[cls.params[i]] = inst.args[i];
  return s;
}

SPred subst_pred(const Subst& s, const SPred& p) {
  SPred out{p.cls, {}};
  for (const auto& a : p.args) out.args.push_back(subst_ty(s, a));
  return out;
}

// All predicates reachable from P through superclass declarations.
std::vector<SPred> superclass_closure(const SurfaceEnv& env, std::vector<SPred> P) {
  for (size_t i = 0; i < P.size(); ++i) {
    auto it = env.classes.classes.find(P[i].cls);
    if (it == env.classes.classes.end()) continue;
    Subst s = pred_params_subst(it->second, P[i]);
    for (const auto& sup : it->second.supers) {
      SPred q = subst_pred(s, sup);
      bool seen = false;
      for (const auto& p : P)
        if (spred_eq(p, q)) { seen = true; break; }
      if (!seen) P.push_back(std::move(q));
    }
  }
  return P;
}

EntailResult entails_rec(const SurfaceEnv& env, const std::vector<SPred>& closure,
                         const SPred& goal, int depth) {
  if (depth <= 0) return {Entailment::DepthExceeded, "depth limit reached at " + spred_show(goal)};
  for (const auto& p : closure)
    if (spred_eq(p, goal)) return {Entailment::Proved, "assumption " + spred_show(goal)};

  auto it = env.classes.instances.find(goal.cls);
  if (it == env.classes.instances.end()) return {Entailment::Failed, "no instances for " + goal.cls};
  bool closed = env.classes.closed_classes.count(goal.cls) > 0;
  for (const auto& inst : it->second) {
    // Freshen the instance's pattern variables away from the goal, keeping
    // the renaming so the context can follow.
    Subst ren;
    {
      std::set<std::string> avoid = free_ty_vars(goal.args);
      for (const auto& v : free_ty_vars(inst.head.args)) {
        std::string v2 = fresh_name(v, avoid);
        avoid.insert(v2);
        if (v2 != v) ren.tys[v] = ty_var(v2);
      }
    }
    TyList pat;
    for (const auto& a : inst.head.args) pat.push_back(subst_ty(ren, a));
    auto theta = match(pat, goal.args);
    if (!theta) continue;
    std::string deriv = "instance " + spred_show(inst.head);
    bool all_ok = true;
    for (const auto& c : inst.context) {
      SPred sub = subst_pred(*theta, subst_pred(ren, c));
      EntailResult r = entails_rec(env, closure, sub, depth - 1);
      if (r.status == Entailment::DepthExceeded) return r;
      if (r.status == Entailment::Failed) {
        all_ok = false;
        deriv += "; blocked on " + spred_show(sub);
        break;
      }
      deriv += "; " + r.derivation;
    }
    if (all_ok) return {Entailment::Proved, deriv};
    // Closed classes commit to the first matching head, even if its context
    // fails; open classes keep searching.
    if (closed) return {Entailment::Failed, deriv};
  }
  return {Entailment::Failed, "no matching instance for " + spred_show(goal)};
}

}  // namespace

EntailResult entails(const SurfaceEnv& env, const std::vector<SPred>& P, const SPred& goal,
                     int depth_limit) {
  return entails_rec(env, superclass_closure(env, P), goal, depth_limit);
}

// ---------------------------------------------------------------------------
// Surface type checking

namespace {

void st_check_rec(const SurfaceEnv& env, const std::vector<SPred>& P,
                  std::set<std::string> tyvars, const SType& s, Diagnostics& out) {
  switch (s->kind) {
    case SKind::Var:
      if (!tyvars.count(s->name))
        out.push_back(diag("UnboundTyVar", "type variable " + s->name + " is not in scope"));
      return;
    case SKind::Con: {
      auto it = env.sig.ty_cons.find(s->name);
      if (it == env.sig.ty_cons.end())
        out.push_back(diag("UndeclaredTyCon", "type constructor " + s->name + " is not declared"));
      else if ((size_t)it->second != s->kids.size())
        out.push_back(diag("ArityMismatch", "constructor " + s->name + " arity mismatch"));
      for (const auto& k : s->kids) st_check_rec(env, P, tyvars, k, out);
      return;
    }
    case SKind::Arrow:
      st_check_rec(env, P, tyvars, s->kids[0], out);
      st_check_rec(env, P, tyvars, s->kids[1], out);
      return;
    case SKind::Forall: {
      tyvars.insert(s->name);
      st_check_rec(env, P, tyvars, s->kids[0], out);
      return;
    }
    case SKind::Qual: {
      std::vector<SPred> P2 = P;
      for (const auto& p : s->preds) P2.push_back(p);
      st_check_rec(env, P2, tyvars, s->kids[0], out);
      return;
    }
    case SKind::Fam: {
      for (const auto& k : s->kids) st_check_rec(env, P, tyvars, k, out);
      auto it = env.assoc.families.find(s->name);
      bool total = false;
      std::string guard;
      auto ft = env.sig.families.find(s->name);
      if (it != env.assoc.families.end()) {
        guard = it->second.first;
        total = it->second.second;
      } else {
        if (ft == env.sig.families.end()) {
          out.push_back(diag("UndeclaredFamily", "family " + s->name + " is not declared"));
          return;
        }
        total = ft->second.total;
        guard = "C" + s->name;
      }
      if (ft != env.sig.families.end() && (size_t)ft->second.arity != s->kids.size())
        out.push_back(diag("ArityMismatch", "family " + s->name + " arity mismatch"));
      if (total) return;  // ST_TFamily
      TyList args;
      for (const auto& k : s->kids) args.push_back(strip_surface(k));
      SPred goal{guard, args};
      EntailResult r = entails(env, P, goal);
      if (r.status != Entailment::Proved)
        out.push_back(diag("UnguardedFamilyUse",
                           "cannot satisfy " + spred_show(goal) + " for this use of " + s->name));
      return;
    }
  }
}

}  // namespace

Result<Ok> st_check_type(const SurfaceEnv& env, const std::vector<SPred>& P,
                         const std::set<std::string>& tyvars, const SType& s) {
  Diagnostics out;
  st_check_rec(env, P, tyvars, s, out);
  if (!out.empty()) return Result<Ok>::failure(std::move(out));
  return Result<Ok>::success(Ok{});
}

// ---------------------------------------------------------------------------
// Constraint inference

namespace {

void collect_guards(const SurfaceEnv& env, const SType& s, std::vector<SPred> consumed,
                    std::vector<SPred>& out) {
  switch (s->kind) {
    case SKind::Var:
    case SKind::Con:
      for (const auto& k : s->kids) collect_guards(env, k, consumed, out);
      return;
    case SKind::Arrow:
    case SKind::Forall:
      for (const auto& k : s->kids) collect_guards(env, k, consumed, out);
      return;
    case SKind::Qual: {
      for (const auto& p : s->preds) consumed.push_back(p);
      collect_guards(env, s->kids[0], consumed, out);
      return;
    }
    case SKind::Fam: {
      for (const auto& k : s->kids) collect_guards(env, k, consumed, out);
      bool total = false;
      std::string guard = "C" + s->name;
      auto it = env.assoc.families.find(s->name);
      if (it != env.assoc.families.end()) {
        guard = it->second.first;
        total = it->second.second;
      } else {
        auto ft = env.sig.families.find(s->name);
        if (ft != env.sig.families.end()) total = ft->second.total;
      }
      if (total) return;
      TyList args;
      for (const auto& k : s->kids) args.push_back(strip_surface(k));
      SPred goal{guard, args};
      // Quantifier-bound predicates already discharge this use (ST_Qual).
      if (entails(env, consumed, goal).status == Entailment::Proved) return;
      for (const auto& p : out)
        if (spred_eq(p, goal)) return;
      out.push_back(std::move(goal));
      return;
    }
  }
}

}  // namespace

std::vector<SPred> infer_constraints(const SurfaceEnv& env, const std::set<std::string>& tyvars,
                                     const SType& s) {
  (void)tyvars;
  std::vector<SPred> raw;
  collect_guards(env, s, {}, raw);
  // Minimize: drop any predicate the remaining ones (plus instances) entail.
  std::vector<SPred> keep = raw;
  for (size_t i = 0; i < keep.size();) {
    std::vector<SPred> rest;
    for (size_t j = 0; j < keep.size(); ++j)
      if (j != i) rest.push_back(keep[j]);
    if (entails(env, rest, keep[i]).status == Entailment::Proved)
      keep.erase(keep.begin() + i);
    else
      ++i;
  }
  return keep;
}

// ---------------------------------------------------------------------------
// Elaboration

ElaboratedFamily elaborate_family_decl(const SurfaceEnv& env, const SurfaceFamilyDecl& decl) {
  ElaboratedFamily out;
  out.class_name = "C" + decl.name;
  out.cls.arity = decl.arity;
  for (int i = 0; i < decl.arity; ++i) out.cls.params.push_back("t" + std::to_string(i));
  out.cls.assoc_family = decl.name;
  for (const auto& [lhs, rhs] : decl.instances) {
    InstanceDecl inst;
    inst.head = SPred{out.class_name, lhs};
    std::set<std::string> vars = free_ty_vars(lhs);
    // Context = minimal constraints of the instance right-hand side.  An
    // unsatisfiable self-guard (the Loopy pattern) is accepted as declared.
    inst.context = infer_constraints(env, vars, rhs);
    out.instances.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Totality

namespace {

// Is a strictly a subterm of b?
bool strict_subterm(const Ty& a, const Ty& b) {
  for (const auto& k : b->kids)
    if (alpha_eq(a, k) || strict_subterm(a, k)) return true;
  return false;
}

struct Matrix {
  std::vector<TyList> rows;
};

// Returns an uncovered constructor tuple, or nothing if the rows cover all
// combinations drawn from the datatype groups present in each column.
std::optional<TyList> find_uncovered(const Signature& sig, const Matrix& m, size_t width);

std::optional<TyList> uncovered_with_head(const Signature& sig, const Matrix& m, size_t col,
                                          const std::string& con, int arity, size_t width) {
  Matrix spec;
  for (const auto& row : m.rows) {
    const Ty& p = row[col];
    TyList nrow;
    for (size_t j = 0; j < row.size(); ++j) {
      if (j != col) {
        nrow.push_back(row[j]);
        continue;
      }
      if (p->kind == TyKind::Var) {
        for (int k = 0; k < arity; ++k) nrow.push_back(ty_var("_"));
      } else if (p->kind == TyKind::Con && p->name == con) {
        for (const auto& sub : p->kids) nrow.push_back(sub);
      } else {
        nrow.clear();
        goto skip;
      }
    }
    spec.rows.push_back(std::move(nrow));
  skip:;
  }
  auto sub = find_uncovered(sig, spec, width + arity - 1);
  if (!sub) return std::nullopt;
  // Reassemble the counterexample with this constructor at the column.
  TyList out;
  size_t si = 0;
  for (size_t j = 0; j < width; ++j) {
    if (j != col) {
      out.push_back((*sub)[si++]);
      continue;
    }
    TyList kids;
    for (int k = 0; k < arity; ++k) kids.push_back((*sub)[si++]);
    out.push_back(ty_con(con, kids));
  }
  return out;
}

std::optional<TyList> find_uncovered(const Signature& sig, const Matrix& m, size_t width) {
  if (width == 0) {
    if (m.rows.empty()) return TyList{};
    return std::nullopt;
  }
  if (m.rows.empty()) {
    TyList any;
    for (size_t i = 0; i < width; ++i) any.push_back(ty_var("_"));
    return any;
  }
  // Pick the first column holding a constructor pattern.
  size_t col = width;
  for (size_t j = 0; j < width && col == width; ++j)
    for (const auto& row : m.rows)
      if (row[j]->kind != TyKind::Var) {
        col = j;
        break;
      }
  if (col == width) return std::nullopt;  // some row is all variables? no: every row all-vars
  // Universe: every constructor of every datatype group named in the column.
  std::set<std::string> universe;
  bool open_universe = false;
  for (const auto& row : m.rows) {
    const Ty& p = row[col];
    if (p->kind == TyKind::Var) continue;
    if (p->kind != TyKind::Con) {
      open_universe = true;  // arrows etc. in patterns: give up on coverage
      continue;
    }
    auto g = sig.ty_con_group.find(p->name);
    if (g == sig.ty_con_group.end()) {
      open_universe = true;  // ungrouped constructor: datatype unknown
      universe.insert(p->name);
    } else {
      for (const auto& member : sig.group_members(g->second)) universe.insert(member);
    }
  }
  if (open_universe) {
    // Only a variable row can cover an open universe; find a witness outside
    // the named constructors via a fresh marker constructor.
    Matrix vars_only;
    for (const auto& row : m.rows)
      if (row[col]->kind == TyKind::Var) vars_only.rows.push_back(row);
    if (vars_only.rows.empty()) {
      TyList out;
      for (size_t j = 0; j < width; ++j)
        out.push_back(j == col ? ty_con("<other>") : ty_var("_"));
      return out;
    }
    Matrix stripped;
    for (auto row : vars_only.rows) {
      row.erase(row.begin() + col);
      stripped.rows.push_back(std::move(row));
    }
    auto sub = find_uncovered(sig, stripped, width - 1);
    if (!sub) return std::nullopt;
    sub->insert(sub->begin() + col, ty_con("<other>"));
    return sub;
  }
  for (const auto& con : universe) {
    int arity = sig.ty_cons.count(con) ? sig.ty_cons.at(con) : 0;
    if (auto cx = uncovered_with_head(sig, m, col, con, arity, width)) return cx;
  }
  return std::nullopt;
}

}  // namespace

TotalityResult check_totality(const Signature& sig, const std::string& fam,
                              bool pragma_override) {
  TotalityResult out;
  auto fit = sig.families.find(fam);
  if (fit == sig.families.end()) {
    out.reason = "family " + fam + " is not declared";
    return out;
  }
  std::vector<Equation> eqs;
  for (const auto* ax : sig.axioms_for(fam))
    for (const auto& e : ax->equations) eqs.push_back(e);

  if (pragma_override) {
    out.total = true;
    out.unsafe_override = true;
    out.reason = "accepted by TOTAL pragma without proof";
    return out;
  }

  // (b) structural decrease: recursive calls must shrink one argument in
  // place; calls to other families must target families already known total.
  for (const auto& e : eqs)
    for (const auto& chi : e.assumps) {
      if (chi.fam == fam) {
        bool decreasing = false;
        for (size_t k = 0; k < chi.args.size() && k < e.lhs.size(); ++k)
          if (strict_subterm(chi.args[k], e.lhs[k])) {
            decreasing = true;
            break;
          }
        if (!decreasing) {
          out.reason = "recursive call " + spred_show(SPred{chi.fam, chi.args}) +
                       " does not decrease any argument";
          return out;
        }
      } else {
        auto oit = sig.families.find(chi.fam);
        if (oit == sig.families.end() || !oit->second.total) {
          out.reason = "assumption calls family " + chi.fam + ", which is not total";
          return out;
        }
      }
    }

  // (a) coverage.
  Matrix m;
  size_t width = (size_t)fit->second.arity;
  for (const auto& e : eqs)
    if (e.lhs.size() == width) m.rows.push_back(e.lhs);
  if (width > 0 && m.rows.empty()) {
    out.reason = "no equations";
    return out;
  }
  if (auto cx = find_uncovered(sig, m, width)) {
    out.uncovered = *cx;
    std::string shown;
    for (const auto& t : *cx) shown += (shown.empty() ? "" : " ") + show_ty(t);
    out.reason = "uncovered arguments: " + shown;
    return out;
  }
  out.total = true;
  return out;
}

}  // namespace cfc
