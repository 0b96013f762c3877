#pragma once

#include "cfc/diagnostics.hpp"
#include "cfc/syntax.hpp"

namespace cfc {

// Signature validity: every axiom equation is over a declared family of the
// right arity, lhs arguments and rhs are proper (family-free) types, and all
// variables are in scope.  All failures are reported, not just the first.
Result<Ok> check_signature(const Signature& sig);

// Good-signature conditions, checked after check_signature:
//   1. every equation in an axiom is over the same family
//   2. fv(lhs) equals the quantified type variables, exactly
//   3. a multi-equation axiom is the only axiom for its family
//   4. single-equation axioms sharing a family are pairwise compatible
Result<Ok> check_good_signature(const Signature& sig);

// Equation compatibility: the lhs lists fail to unify, or they unify with θ
// and both rhs agree after expanding assumption variables to their family
// applications and applying θ.  Callers must have renamed the two equations'
// variables disjoint.
bool compat(const Equation& e1, const Equation& e2);

// As compat, but freshens the equations apart first.
bool compat_fresh(const Equation& e1, const Equation& e2);

// Conflict check used when equation i fires with instantiation rho for its
// quantified variables: earlier equation j must be apart from the
// instantiated lhs or compatible with equation i.
bool no_conflict(const std::vector<Equation>& eqs, size_t i, const TyList& rho,
                 size_t j);

// rhs with every assumption variable replaced by its family application,
// expanded right to left so earlier assumptions see later witnesses.
Ty expand_assumption_vars(const Equation& e);

}  // namespace cfc
