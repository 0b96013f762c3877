#include "cfc/unify.hpp"

#include <deque>

namespace cfc {

namespace {

bool occurs(const std::string& v, const Ty& t) {
  if (t->kind == TyKind::Var) return t->name == v;
  if (t->kind == TyKind::Forall && t->name == v) return false;
  for (const auto& k : t->kids)
    if (occurs(v, k)) return true;
  return false;
}

// Structural head match for non-variable nodes.  Forall binders are handled
// by renaming both sides to a shared fresh variable.
bool same_head(const Ty& a, const Ty& b) {
  return a->kind == b->kind && a->name == b->name && a->kids.size() == b->kids.size();
}

bool unify_rec(Ty a, Ty b, Subst& acc, int& fresh_counter);

bool bind(const std::string& v, const Ty& t, Subst& acc) {
  if (t->kind == TyKind::Var && t->name == v) return true;
  if (occurs(v, t)) return false;
  // Keep acc idempotent: substitute into the existing range.
  Subst unit = Subst::of_ty(v, t);
  for (auto& [w, u] : acc.tys) u = subst_ty(unit, u);
  acc.tys[v] = t;
  return true;
}

bool unify_rec(Ty a, Ty b, Subst& acc, int& fresh_counter) {
  a = subst_ty(acc, a);
  b = subst_ty(acc, b);
  if (a->kind == TyKind::Var) return bind(a->name, b, acc);
  if (b->kind == TyKind::Var) return bind(b->name, a, acc);
  if (a->kind == TyKind::Forall && b->kind == TyKind::Forall) {
    // Rename both binders to a shared marker constant; a marker cannot be
    // bound by the unifier, which is exactly the freshness we need.
    std::string marker = "$skolem" + std::to_string(fresh_counter++);
    Ty ma = subst_ty(Subst::of_ty(a->name, ty_con(marker)), a->kids[0]);
    Ty mb = subst_ty(Subst::of_ty(b->name, ty_con(marker)), b->kids[0]);
    return unify_rec(ma, mb, acc, fresh_counter);
  }
  if (!same_head(a, b)) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!unify_rec(a->kids[i], b->kids[i], acc, fresh_counter)) return false;
  return true;
}

}  // namespace

std::optional<Subst> unify(const TyList& lhs, const TyList& rhs) {
  if (lhs.size() != rhs.size()) return std::nullopt;
  Subst acc;
  int fresh_counter = 0;
  for (size_t i = 0; i < lhs.size(); ++i)
    if (!unify_rec(lhs[i], rhs[i], acc, fresh_counter)) return std::nullopt;
  // Skolem markers witness scoping only; a binding containing one would be
  // an escaped bound variable.
  for (const auto& [v, t] : acc.tys) {
    (void)v;
    std::deque<Ty> work{t};
    while (!work.empty()) {
      Ty cur = work.front();
      work.pop_front();
      if (cur->kind == TyKind::Con && cur->name.rfind("$skolem", 0) == 0) return std::nullopt;
      for (const auto& k : cur->kids) work.push_back(k);
    }
  }
  return acc;
}

std::optional<Subst> unify_one(const Ty& lhs, const Ty& rhs) {
  return unify(TyList{lhs}, TyList{rhs});
}

namespace {

bool match_rec(const Ty& pat, const Ty& subj, Subst& acc, int& fresh_counter) {
  if (pat->kind == TyKind::Var) {
    auto it = acc.tys.find(pat->name);
    if (it != acc.tys.end()) return alpha_eq(it->second, subj);
    acc.tys[pat->name] = subj;
    return true;
  }
  if (pat->kind == TyKind::Forall && subj->kind == TyKind::Forall) {
    std::string marker = "$skolem" + std::to_string(fresh_counter++);
    Ty mp = subst_ty(Subst::of_ty(pat->name, ty_con(marker)), pat->kids[0]);
    Ty ms = subst_ty(Subst::of_ty(subj->name, ty_con(marker)), subj->kids[0]);
    return match_rec(mp, ms, acc, fresh_counter);
  }
  if (!same_head(pat, subj)) return false;
  for (size_t i = 0; i < pat->kids.size(); ++i)
    if (!match_rec(pat->kids[i], subj->kids[i], acc, fresh_counter)) return false;
  return true;
}

}  // namespace

std::optional<Subst> match(const TyList& pattern, const TyList& subject) {
  if (pattern.size() != subject.size()) return std::nullopt;
  Subst acc;
  int fresh_counter = 0;
  for (size_t i = 0; i < pattern.size(); ++i)
    if (!match_rec(pattern[i], subject[i], acc, fresh_counter)) return std::nullopt;
  return acc;
}

bool apart(const TyList& lhs, const TyList& rhs) { return !unify(lhs, rhs).has_value(); }

TyList rename_disjoint(const TyList& ts, std::set<std::string>& avoid) {
  auto fvs = free_ty_vars(ts);
  Subst ren;
  for (const auto& v : fvs) {
    std::string v2 = fresh_name(v, avoid);
    avoid.insert(v2);
    if (v2 != v) ren.tys[v] = ty_var(v2);
  }
  TyList out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(subst_ty(ren, t));
  return out;
}

}  // namespace cfc
