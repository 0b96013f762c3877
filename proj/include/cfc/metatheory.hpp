#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfc/syntax.hpp"

namespace cfc {

// A generated test world: a well-formed signature plus pools of closed
// types and well-typed closed expressions drawn over it.
struct World {
  Signature sig;
  std::vector<Ty> type_pool;  // closed, possibly containing family redexes
  std::vector<Ex> expr_pool;  // closed, infer_expr succeeds on each
};

// Deterministic per (seed, size).  size 0 yields the empty world. The
// generated signature passes check_good_signature by construction (and is
// re-checked; a failure here is an internal invariant violation).
World gen_world(uint64_t seed, int size);

struct SuiteReport {
  std::string suite;
  int cases = 0;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> counterexamples;  // minimized, printed
  bool ok() const { return failed == 0; }
};

// name in {preservation, progress, measure, local_confluence, strategy,
// consistency, apart_stability, totality_link}.  Deterministic per
// (world, cases, seed).
SuiteReport run_suite(const std::string& name, const World& world, int cases,
                      uint64_t seed = 1);

// Exhaustive enumeration of closed types over the signature's constructors
// and families, up to the given node count, in a deterministic order.
// fam_bound ≥ 0 additionally restricts to types with fam_count ≤ fam_bound
// (0 keeps only proper types).
std::vector<Ty> enumerate_small(const Signature& sig, int max_nodes, int fam_bound = -1);

// A random well-typed closed coercion over the world's signature, built
// from refl/sym/trans/congruence/axiom forms; used by the consistency
// suite and exposed for the CLI fuzzer.
Co gen_coercion(const World& world, uint64_t seed);

}  // namespace cfc
