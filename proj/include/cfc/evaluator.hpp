#pragma once

#include "cfc/diagnostics.hpp"
#include "cfc/syntax.hpp"

namespace cfc {

struct StepResult {
  enum Kind { Stepped, Value, CoercedValue, Stuck } kind;
  Ex expr;             // successor for Stepped, the term itself otherwise
  std::string reason;  // Stuck only
};

// One small step.  Deterministic: leftmost congruence position, push rules
// for casts blocking an elimination form, S_Trans cast fusion, S_Resolve for
// assumptions over total families.  Intended for closed terms.
StepResult step(const Signature& sig, const Ex& e);

struct EvalResult {
  StepResult final;       // Value, CoercedValue, or Stuck
  std::vector<Ex> trace;  // every intermediate term, initial included
  bool fuel_exhausted = false;
};

EvalResult eval(const Signature& sig, const Ex& e, int fuel = 10000);

// F τ̄ ⇓ q for a total family: witness plus proof, built from the matching
// equation with recursively evaluated assumptions.
Result<Resolution> total_eval(const Signature& sig, const std::string& fam,
                              const TyList& args);

bool is_value(const Ex& e);

}  // namespace cfc
