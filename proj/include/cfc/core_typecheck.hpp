#pragma once

#include "cfc/diagnostics.hpp"
#include "cfc/syntax.hpp"

namespace cfc {

// Γ ⊢ τ type: proper types, no family application anywhere.
Result<Ok> check_type(const Signature& sig, const Context& ctx, const Ty& t);

// Γ ⊢ φ prop: both sides proper, or lhs a saturated family application with
// proper arguments and proper rhs.
Result<Ok> check_prop(const Signature& sig, const Context& ctx, const Prop& p);

// ⊢ Γ ctx: bindings well-formed under their prefix, names distinct per
// namespace.
Result<Ok> check_ctx(const Signature& sig, const Context& ctx);

// Γ ⊢ γ : φ — returns the proposition a coercion proves.
Result<Prop> check_coercion(const Signature& sig, const Context& ctx, const Co& g);

// Γ ⊢ q̄ : χ̄ — resolutions against assumptions, threading earlier witnesses
// through later assumptions' arguments.
Result<Ok> check_resolutions(const Signature& sig, const Context& ctx,
                             const std::vector<Resolution>& qs,
                             const std::vector<Assumption>& chis);

// Γ ⊢ e : τ.
Result<Ty> infer_expr(const Signature& sig, const Context& ctx, const Ex& e);

}  // namespace cfc
