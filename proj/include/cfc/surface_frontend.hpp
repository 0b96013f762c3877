#pragma once

#include "cfc/diagnostics.hpp"
#include "cfc/syntax.hpp"

namespace cfc {

// Class predicate C τ̄ over core-type arguments (family applications allowed
// inside arguments at the surface).
struct SPred {
  std::string cls;
  TyList args;
};

bool spred_eq(const SPred& a, const SPred& b);
std::string spred_show(const SPred& p);

// Surface types: proper shapes plus guarded family applications anywhere and
// predicate contexts on qualified types.
enum class SKind { Var, Con, Arrow, Fam, Forall, Qual };

struct STypeNode;
using SType = std::shared_ptr<const STypeNode>;

struct STypeNode {
  SKind kind;
  std::string name;           // Var/Con/Fam name, Forall binder
  std::vector<SType> kids;    // args / {dom,cod} / {body}
  std::vector<SPred> preds;   // Qual
};

SType st_var(std::string name);
SType st_con(std::string name, std::vector<SType> args = {});
SType st_arrow(SType dom, SType cod);
SType st_fam(std::string name, std::vector<SType> args = {});
SType st_forall(std::string binder, SType body);
SType st_qual(std::vector<SPred> preds, SType body);

struct ClassDecl {
  int arity = 1;
  std::vector<SPred> supers;  // over the class parameters a1..an
  std::vector<std::string> params;
  std::optional<std::string> assoc_family;
};

struct InstanceDecl {
  std::vector<SPred> context;
  SPred head;  // args are patterns over their free variables
};

struct ClassTable {
  std::map<std::string, ClassDecl> classes;
  std::map<std::string, std::vector<InstanceDecl>> instances;  // declaration order
  std::set<std::string> closed_classes;
};

// F -> (guard class, total).  Total families need no guard.
struct FamilyAssoc {
  std::map<std::string, std::pair<std::string, bool>> families;
};

struct SurfaceEnv {
  Signature sig;  // type constructors and core families
  ClassTable classes;
  FamilyAssoc assoc;
};

// P | Γ ⊢ σ type: every partial family use F τ̄ needs P ⊩ C τ̄ for its guard
// class; total families pass unconditionally.
Result<Ok> st_check_type(const SurfaceEnv& env, const std::vector<SPred>& P,
                         const std::set<std::string>& tyvars, const SType& s);

enum class Entailment { Proved, Failed, DepthExceeded };

struct EntailResult {
  Entailment status;
  std::string derivation;  // human-readable trace of the committed path
};

// Standard class entailment: assumption, superclass closure, or instance
// with recursively entailed context.  Closed classes commit to the first
// instance whose head matches.
EntailResult entails(const SurfaceEnv& env, const std::vector<SPred>& P, const SPred& goal,
                     int depth_limit = 32);

// Minimal predicate set making st_check_type succeed: one guard predicate
// per partial family use, in source order, then pruned of anything the rest
// already entails.
std::vector<SPred> infer_constraints(const SurfaceEnv& env, const std::set<std::string>& tyvars,
                                     const SType& s);

// Elaboration of a free-standing family into its guard class + instances.
struct SurfaceFamilyDecl {
  std::string name;
  int arity = 0;
  bool total = false;
  std::vector<std::pair<TyList, SType>> instances;  // lhs patterns, rhs
};

struct ElaboratedFamily {
  std::string class_name;  // "C" + family name
  ClassDecl cls;
  std::vector<InstanceDecl> instances;
};

ElaboratedFamily elaborate_family_decl(const SurfaceEnv& env, const SurfaceFamilyDecl& decl);

struct TotalityResult {
  bool total = false;
  bool unsafe_override = false;  // accepted only because of a TOTAL pragma
  std::string reason;            // why not total
  std::optional<TyList> uncovered;  // a constructor tuple no equation matches
};

// Coverage (constructor-exhaustiveness over the datatype groups appearing in
// the patterns) plus structural decrease of recursive assumption calls.
TotalityResult check_totality(const Signature& sig, const std::string& fam,
                              bool pragma_override = false);

// Surface type stripped to a core pretype (predicates dropped); used by the
// elaborator's tests and the CLI printer.
Ty strip_surface(const SType& s);

}  // namespace cfc
