#pragma once

#include <optional>

#include "cfc/syntax.hpp"

// First-order syntactic unification, one-sided matching, and apartness over
// lists of proper (family-free) types.  The occurs check is always on; callers
// are responsible for renaming variable sets disjoint where apartness requires
// it.

namespace cfc {

// Most general idempotent unifier of the two lists, or nullopt.
// Traversal is leftmost-first so failures are reproducible.
std::optional<Subst> unify(const TyList& lhs, const TyList& rhs);
std::optional<Subst> unify_one(const Ty& lhs, const Ty& rhs);

// One-sided: θ with dom(θ) ⊆ fv(pattern) and pattern[θ] = subject.
std::optional<Subst> match(const TyList& pattern, const TyList& subject);

// apart(σ̄, τ̄) iff unify(σ̄, τ̄) fails.
bool apart(const TyList& lhs, const TyList& rhs);

// Rename every free type variable of the given types to a name outside
// `avoid`, extending `avoid` with the new names.  Used to meet unify/apart
// variable-disjointness preconditions.
TyList rename_disjoint(const TyList& ts, std::set<std::string>& avoid);

}  // namespace cfc
