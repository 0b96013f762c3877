#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfc {

// Source position, 1-based; line 0 means "no span" (synthesized input).
struct Span {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  std::string code;     // stable machine code, e.g. "FamilyOutsideProp"
  std::string message;
  Span span;
};

using Diagnostics = std::vector<Diagnostic>;

// Result of a checking/inference operation: either a value or diagnostics.
// A successful result may still carry warnings in `diags`.
template <typename T>
struct Result {
  std::optional<T> value;
  Diagnostics diags;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }

  static Result success(T v) { return {std::move(v), {}}; }
  static Result failure(Diagnostic d) { return {std::nullopt, {std::move(d)}}; }
  static Result failure(Diagnostics ds) { return {std::nullopt, std::move(ds)}; }
};

struct Ok {};  // unit payload for pure checks

inline Diagnostic diag(std::string code, std::string message, Span span = {}) {
  return {std::move(code), std::move(message), span};
}

}  // namespace cfc
