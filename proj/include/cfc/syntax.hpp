#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

// Core syntax for System CFC: pretypes, coercions, expressions, signatures,
// typing contexts, and substitutions.  All nodes are immutable and shared;
// construction goes through the factory functions below.

namespace cfc {

// ---------------------------------------------------------------------------
// Types (pretypes; "proper type" is a judgment, not a representation)

enum class TyKind { Con, Arrow, Var, Forall, Qual, Fam };

struct TypeNode;
using Ty = std::shared_ptr<const TypeNode>;
using TyList = std::vector<Ty>;

struct TypeNode {
  TyKind kind;
  std::string name;  // Con/Fam head, Var name, Forall binder
  // Con/Fam: argument list.  Arrow: {dom, cod}.  Forall: {body}.
  // Qual: {prop.lhs, prop.rhs, body}.
  TyList kids;
};

Ty ty_con(std::string head, TyList args = {});
Ty ty_arrow(Ty dom, Ty cod);
Ty ty_var(std::string name);
Ty ty_forall(std::string binder, Ty body);
Ty ty_qual(Ty prop_lhs, Ty prop_rhs, Ty body);
Ty ty_fam(std::string fam, TyList args = {});

struct Prop {
  Ty lhs;
  Ty rhs;
};

// ---------------------------------------------------------------------------
// Coercions

enum class CoKind {
  Refl,        // <τ>
  Sym,         // sym γ
  Trans,       // γ1 ; γ2
  ConCong,     // H γ̄
  ArrowCong,   // γ1 -> γ2
  ForallCong,  // forall α. γ
  QualCong,    // (γ1 ~ γ2) => γ3
  FamCong,     // F γ̄
  Nth,         // nth i γ
  Inst,        // γ @ τ
  Var,         // c
  Axiom,       // ξ_i τ̄ q̄
};

struct CoNode;
using Co = std::shared_ptr<const CoNode>;
using CoList = std::vector<Co>;

// Evaluation resolution q = (τ | γ)
struct Resolution {
  Ty witness;
  Co proof;
};

struct CoNode {
  CoKind kind;
  std::string name;  // ConCong/FamCong head, ForallCong binder, Var name, Axiom name
  int index = 0;     // Nth projection index, Axiom equation index
  CoList kids;
  TyList tys;  // Refl: {τ}; Inst: {τ}; Axiom: type arguments
  std::vector<Resolution> res;  // Axiom resolutions
};

Co co_refl(Ty t);
Co co_sym(Co g);
Co co_trans(Co g1, Co g2);
Co co_con(std::string head, CoList args);
Co co_arrow(Co dom, Co cod);
Co co_forall(std::string binder, Co body);
Co co_qual(Co lhs, Co rhs, Co body);
Co co_fam(std::string fam, CoList args);
Co co_nth(int i, Co g);
Co co_inst(Co g, Ty t);
Co co_var(std::string name);
Co co_axiom(std::string axiom, int eq_index, TyList ty_args,
            std::vector<Resolution> resolutions);

// ---------------------------------------------------------------------------
// Expressions

enum class ExKind { Var, Const, Lam, App, TLam, TApp, CLam, CApp, Cast, Assume };

struct ExprNode;
using Ex = std::shared_ptr<const ExprNode>;

// Evaluation assumption χ = (α | c : F τ̄ ~ α); α and c bind in what follows.
struct Assumption {
  std::string tv;
  std::string cv;
  std::string fam;
  TyList args;
};

struct ExprNode {
  ExKind kind;
  std::string name;  // Var/Const name, Lam/TLam/CLam binder
  std::vector<Ex> kids;
  Ty ty;                            // Lam annotation, TApp argument
  std::optional<Prop> prop;         // CLam annotation
  Co co;                            // CApp argument, Cast coercion
  std::optional<Assumption> chi;    // Assume
};

Ex ex_var(std::string name);
Ex ex_const(std::string name);
Ex ex_lam(std::string binder, Ty ann, Ex body);
Ex ex_app(Ex fn, Ex arg);
Ex ex_tlam(std::string binder, Ex body);
Ex ex_tapp(Ex fn, Ty arg);
Ex ex_clam(std::string binder, Prop ann, Ex body);
Ex ex_capp(Ex fn, Co arg);
Ex ex_cast(Ex body, Co g);
Ex ex_assume(Assumption chi, Ex body);

// ---------------------------------------------------------------------------
// Signatures

// E = ∀ ᾱ χ̄. F τ̄ ~ τ0
struct Equation {
  std::vector<std::string> tyvars;
  std::vector<Assumption> assumps;
  std::string fam;
  TyList lhs;
  Ty rhs;
};

struct FamilyDecl {
  int arity = 0;
  bool total = false;
};

struct AxiomDecl {
  std::string name;
  std::vector<Equation> equations;
};

struct Signature {
  std::map<std::string, int> ty_cons;              // H -> arity
  std::map<std::string, std::string> ty_con_group; // H -> datatype group (optional)
  std::map<std::string, Ty> term_consts;           // K -> type
  std::map<std::string, FamilyDecl> families;
  std::vector<AxiomDecl> axioms;  // declaration order matters for open families

  const AxiomDecl* find_axiom(const std::string& name) const;
  // Axioms whose equations are over F, in declaration order.
  std::vector<const AxiomDecl*> axioms_for(const std::string& fam) const;
  // Constructors belonging to a datatype group, in name order.
  std::vector<std::string> group_members(const std::string& group) const;
};

// ---------------------------------------------------------------------------
// Typing contexts

enum class BindKind { TyVar, CoVar, TmVar };

struct Binding {
  BindKind kind;
  std::string name;
  std::optional<Prop> prop;  // CoVar
  Ty ty;                     // TmVar
};

struct Context {
  std::vector<Binding> binds;

  bool has(BindKind k, const std::string& name) const;
  const Binding* lookup(BindKind k, const std::string& name) const;
  Context extended(Binding b) const;
  static Context empty() { return {}; }
};

// ---------------------------------------------------------------------------
// Substitutions

struct Subst {
  std::map<std::string, Ty> tys;
  std::map<std::string, Co> cos;
  std::map<std::string, Ex> exs;

  bool empty() const { return tys.empty() && cos.empty() && exs.empty(); }
  static Subst of_ty(const std::string& v, Ty t);
};

// q/χ: maps the assumption's type variable to the witness and its coercion
// variable to the proof.
Subst resolution_subst(const Resolution& q, const Assumption& chi);

Ty subst_ty(const Subst& s, const Ty& t);
Co subst_co(const Subst& s, const Co& g);
Ex subst_ex(const Subst& s, const Ex& e);
Prop subst_prop(const Subst& s, const Prop& p);
Assumption subst_assumption_rhs(const Subst& s, const Assumption& chi);

// Composition: apply(compose(s1, s2), t) == apply(s1, apply(s2, t)).
Subst compose(const Subst& s1, const Subst& s2);

// ---------------------------------------------------------------------------
// Free variables (three namespaces)

void collect_free_ty_vars(const Ty& t, std::set<std::string>& out);
std::set<std::string> free_ty_vars(const Ty& t);
std::set<std::string> free_ty_vars(const TyList& ts);
std::set<std::string> free_ty_vars(const Co& g);
std::set<std::string> free_ty_vars(const Ex& e);
std::set<std::string> free_co_vars(const Co& g);
std::set<std::string> free_co_vars(const Ex& e);
std::set<std::string> free_tm_vars(const Ex& e);

// ---------------------------------------------------------------------------
// Alpha equivalence

bool alpha_eq(const Ty& a, const Ty& b);
bool alpha_eq(const TyList& a, const TyList& b);
bool alpha_eq(const Prop& a, const Prop& b);
bool alpha_eq(const Co& a, const Co& b);
bool alpha_eq(const Ex& a, const Ex& b);

// ---------------------------------------------------------------------------
// Fresh names

// First name of the form base, base', base'', ... not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// ---------------------------------------------------------------------------
// Family-application measure and redex enumeration

int fam_count(const Ty& t);

// A one-hole context: the position of the hole in the enclosing type,
// as a child-index path from the root.
struct TyPath {
  std::vector<int> steps;
};

struct Redex {
  TyPath path;
  std::string fam;
  TyList args;
};

// Every FamApp occurrence in left-to-right preorder.
std::vector<Redex> find_redexes(const Ty& t);

// Rebuild t with the subterm at path replaced.
Ty plug(const Ty& t, const TyPath& path, const Ty& replacement);
Ty subterm_at(const Ty& t, const TyPath& path);

}  // namespace cfc
