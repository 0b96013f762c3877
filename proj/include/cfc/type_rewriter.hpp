#pragma once

#include "cfc/diagnostics.hpp"
#include "cfc/syntax.hpp"

namespace cfc {

// Why a candidate equation did not fire.
struct BlockInfo {
  enum Kind { NoMatch, ConflictBlocked, AssumptionStuck } kind;
  std::string axiom;
  int equation;
};

// Top-level reduction of a saturated family application with closed,
// family-free arguments.  Scans equations in declaration order; the first
// one that matches, passes the conflict check against earlier equations,
// and whose assumptions all resolve, fires.  Absent means stuck (legitimate
// for partial families); `blocked`, when given, records every rejected
// candidate.
std::optional<Ty> top_reduce(const Signature& sig, const std::string& fam,
                             const TyList& args,
                             std::vector<BlockInfo>* blocked = nullptr);

// Proof-carrying top_reduce: witness plus the axiom-use coercion proving
// F τ̄ ~ witness.  Shared by the evaluator's total_eval and the test
// generators.
std::optional<Resolution> resolve(const Signature& sig, const std::string& fam,
                                  const TyList& args);

// One Red step at the given redex (by index into find_redexes).  Absent if
// the index is out of range, the redex has family applications in its
// arguments, or top_reduce is stuck there.
std::optional<Ty> step_type_at(const Signature& sig, const Ty& t, size_t redex_index);

// One Red step at the leftmost eligible redex.
std::optional<Ty> step_type(const Signature& sig, const Ty& t);

// Redexes whose arguments are family-free — the only ones Red can fire on.
std::vector<Redex> eligible_redexes(const Ty& t);

// Deterministic normal form, leftmost-innermost, with the number of Red
// steps taken.
std::pair<Ty, int> normalize(const Signature& sig, const Ty& t);

// Common reduct of two closed types, via uniqueness of normal forms.
std::optional<Ty> join(const Signature& sig, const Ty& t1, const Ty& t2);

struct ConsistencyWitness {
  bool consistent;
  Ty witness;  // common reduct when consistent
};

// Endpoint consistency of a closed coercion: its proposition's sides are
// joinable.
Result<ConsistencyWitness> consistent_endpoints(const Signature& sig, const Co& g);

}  // namespace cfc
