#include "cfc/type_rewriter.hpp"

#include "cfc/core_typecheck.hpp"
#include "cfc/signature_check.hpp"
#include "cfc/unify.hpp"

namespace cfc {

namespace {

bool fam_free(const TyList& ts) {
  for (const auto& t : ts)
    if (fam_count(t) > 0) return false;
  return true;
}

// RTop derivations for ill-behaved partial families (Loop ~ List r with
// r | c : Loop ~ r) have no finite form; a depth cap turns the infinite
// premise chase into "stuck".  Honest total families recurse structurally
// and stay far below it.
constexpr int kMaxResolveDepth = 256;

std::optional<Resolution> resolve_at(const Signature& sig, const std::string& fam,
                                     const TyList& args, int depth);

// Attempt to fire one equation of one axiom; on success fills rho (the
// instantiation of the quantified variables) and the resolutions of the
// assumptions, and returns the reduct.
std::optional<Ty> fire(const Signature& sig, const AxiomDecl& ax, size_t i,
                       const TyList& args, TyList* rho_out,
                       std::vector<Resolution>* res_out,
                       std::vector<BlockInfo>* blocked, int depth) {
  const Equation& eq = ax.equations[i];
  auto theta = match(eq.lhs, args);
  if (!theta) {
    if (blocked) blocked->push_back({BlockInfo::NoMatch, ax.name, (int)i});
    return std::nullopt;
  }
  TyList rho;
  for (const auto& v : eq.tyvars) {
    auto it = theta->tys.find(v);
    rho.push_back(it != theta->tys.end() ? it->second : ty_var(v));
  }
  for (size_t j = 0; j < i; ++j)
    if (!no_conflict(ax.equations, i, rho, j)) {
      if (blocked) blocked->push_back({BlockInfo::ConflictBlocked, ax.name, (int)i});
      return std::nullopt;
    }
  // Assumptions resolve left to right; each witness feeds the later
  // assumptions' arguments and the right-hand side.
  Subst full = *theta;
  std::vector<Resolution> res;
  for (const auto& chi : eq.assumps) {
    TyList cargs;
    for (const auto& a : chi.args) cargs.push_back(subst_ty(full, a));
    auto q = resolve_at(sig, chi.fam, cargs, depth + 1);
    if (!q) {
      if (blocked) blocked->push_back({BlockInfo::AssumptionStuck, ax.name, (int)i});
      return std::nullopt;
    }
    full.tys[chi.tv] = q->witness;
    res.push_back(std::move(*q));
  }
  if (rho_out) *rho_out = std::move(rho);
  if (res_out) *res_out = std::move(res);
  return subst_ty(full, eq.rhs);
}

std::optional<Resolution> resolve_at(const Signature& sig, const std::string& fam,
                                     const TyList& args, int depth) {
  if (depth > kMaxResolveDepth) return std::nullopt;
  if (!fam_free(args)) return std::nullopt;
  for (const auto* ax : sig.axioms_for(fam))
    for (size_t i = 0; i < ax->equations.size(); ++i) {
      TyList rho;
      std::vector<Resolution> res;
      if (auto t = fire(sig, *ax, i, args, &rho, &res, nullptr, depth))
        return Resolution{*t, co_axiom(ax->name, (int)i, rho, res)};
    }
  return std::nullopt;
}

}  // namespace

std::optional<Ty> top_reduce(const Signature& sig, const std::string& fam,
                             const TyList& args, std::vector<BlockInfo>* blocked) {
  if (!fam_free(args)) return std::nullopt;
  for (const auto* ax : sig.axioms_for(fam))
    for (size_t i = 0; i < ax->equations.size(); ++i)
      if (auto t = fire(sig, *ax, i, args, nullptr, nullptr, blocked, 0)) return t;
  return std::nullopt;
}

std::optional<Resolution> resolve(const Signature& sig, const std::string& fam,
                                  const TyList& args) {
  return resolve_at(sig, fam, args, 0);
}

std::vector<Redex> eligible_redexes(const Ty& t) {
  std::vector<Redex> out;
  for (auto& r : find_redexes(t))
    if (fam_free(r.args)) out.push_back(std::move(r));
  return out;
}

std::optional<Ty> step_type_at(const Signature& sig, const Ty& t, size_t redex_index) {
  auto rs = find_redexes(t);
  if (redex_index >= rs.size()) return std::nullopt;
  const Redex& r = rs[redex_index];
  if (!fam_free(r.args)) return std::nullopt;
  auto reduct = top_reduce(sig, r.fam, r.args);
  if (!reduct) return std::nullopt;
  return plug(t, r.path, *reduct);
}

std::optional<Ty> step_type(const Signature& sig, const Ty& t) {
  for (const auto& r : eligible_redexes(t)) {
    auto reduct = top_reduce(sig, r.fam, r.args);
    if (reduct) return plug(t, r.path, *reduct);
  }
  return std::nullopt;
}

std::pair<Ty, int> normalize(const Signature& sig, const Ty& t) {
  Ty cur = t;
  int steps = 0;
  while (auto next = step_type(sig, cur)) {
    cur = *next;
    ++steps;
  }
  return {cur, steps};
}

std::optional<Ty> join(const Signature& sig, const Ty& t1, const Ty& t2) {
  Ty n1 = normalize(sig, t1).first;
  Ty n2 = normalize(sig, t2).first;
  if (alpha_eq(n1, n2)) return n1;
  return std::nullopt;
}

Result<ConsistencyWitness> consistent_endpoints(const Signature& sig, const Co& g) {
  auto pr = check_coercion(sig, Context::empty(), g);
  if (!pr.ok())
    return Result<ConsistencyWitness>::failure(
        diag("IllTypedCoercion", "coercion does not check: " + pr.diags.front().message));
  auto w = join(sig, pr->lhs, pr->rhs);
  if (w) return Result<ConsistencyWitness>::success({true, *w});
  return Result<ConsistencyWitness>::success({false, nullptr});
}

}  // namespace cfc
