#include "doctest.h"

#include "cfc/core_typecheck.hpp"
#include "cfc/parser.hpp"
#include "cfc/printer.hpp"
#include "cfc/signature_check.hpp"
#include "fixtures.hpp"

using namespace cfc;

namespace {

const char* kPlusSrc = R"(
-- natural numbers with a total addition family
data Nat : 0 of Nat
data Z : 0 of Nat
data S : 1 of Nat
family Plus : 2 total
axiom plusAx : Plus {
  forall n . Plus Z n ~ n ;
  forall m n [r | c : Plus m n ~ r] . Plus (S m) n ~ S r
}
)";

Ty parse_ty_ok(const std::string& s, const Signature& sig) {
  auto r = parse_type(s, sig);
  REQUIRE(r.ok());
  return *r.value;
}

Co parse_co_ok(const std::string& s, const Signature& sig) {
  auto r = parse_coercion(s, sig);
  REQUIRE(r.ok());
  return *r.value;
}

Ex parse_ex_ok(const std::string& s, const Signature& sig) {
  auto r = parse_expr(s, sig);
  REQUIRE(r.ok());
  return *r.value;
}

}  // namespace

TEST_CASE("parse_program reads the Plus signature") {
  auto r = parse_program(kPlusSrc);
  REQUIRE(r.ok());
  const Signature& sig = r.value->sig;
  CHECK(sig.ty_cons.at("S") == 1);
  CHECK(sig.ty_con_group.at("Z") == "Nat");
  CHECK(sig.families.at("Plus").arity == 2);
  CHECK(sig.families.at("Plus").total);
  REQUIRE(sig.axioms.size() == 1);
  const AxiomDecl& ax = sig.axioms[0];
  CHECK(ax.name == "plusAx");
  REQUIRE(ax.equations.size() == 2);
  // [DERIVED] equation 1 is forall m n [r|c: Plus m n ~ r]. Plus (S m) n ~ S r
  const Equation& e1 = ax.equations[1];
  CHECK(e1.tyvars == std::vector<std::string>{"m", "n"});
  REQUIRE(e1.assumps.size() == 1);
  CHECK(e1.assumps[0].tv == "r");
  CHECK(e1.assumps[0].cv == "c");
  CHECK(e1.assumps[0].fam == "Plus");
  CHECK(alpha_eq(e1.lhs[0], ty_con("S", {ty_var("m")})));
  CHECK(alpha_eq(e1.rhs, ty_con("S", {ty_var("r")})));
  // The parsed signature is good.
  CHECK(check_good_signature(sig).ok());
  // And alpha-equal to the hand-built fixture, equation by equation.
  Signature fix = fixtures::plus_sig();
  for (int i = 0; i < 2; ++i) {
    CHECK(alpha_eq(ax.equations[i].rhs, fix.axioms[0].equations[i].rhs));
  }
}

TEST_CASE("type parsing: precedence and family resolution") {
  Signature sig = fixtures::plus_sig();
  // [DERIVED] arrow is right-associative; application binds tighter.
  Ty t = parse_ty_ok("S Z -> Nat -> Nat", sig);
  CHECK(alpha_eq(t, ty_arrow(ty_con("S", {ty_con("Z", {})}),
                             ty_arrow(ty_con("Nat", {}), ty_con("Nat", {})))));
  // Plus is declared as a family, so it parses as Fam, not Con.
  Ty p = parse_ty_ok("Plus Z (S Z)", sig);
  CHECK(p->kind == TyKind::Fam);
  CHECK(fam_count(p) == 1);
  // Quantifier and qualified types.
  Ty q = parse_ty_ok("forall a. (Plus a Z ~ a) => a -> a", sig);
  REQUIRE(q->kind == TyKind::Forall);
  CHECK(q->kids[0]->kind == TyKind::Qual);
  // Parenthesized qual as an argument type.
  Ty q2 = parse_ty_ok("((Nat ~ Nat) => Nat) -> Nat", sig);
  CHECK(q2->kind == TyKind::Arrow);
  CHECK(q2->kids[0]->kind == TyKind::Qual);
}

TEST_CASE("coercion parsing covers every form") {
  Signature sig = fixtures::plus_sig();
  Co g = parse_co_ok("sym (refl Nat) ; refl Nat", sig);
  CHECK(g->kind == CoKind::Trans);
  CHECK(g->kids[0]->kind == CoKind::Sym);
  Co ax0 = parse_co_ok("plusAx[0] Z", sig);
  CHECK(ax0->kind == CoKind::Axiom);
  CHECK(ax0->index == 0);
  REQUIRE(ax0->tys.size() == 1);
  // [DERIVED] plusAx[0] Z proves Plus Z Z ~ Z.
  auto pr = check_coercion(sig, Context{}, ax0);
  REQUIRE(pr.ok());
  CHECK(alpha_eq(pr.value->rhs, ty_con("Z", {})));
  // Axiom with a resolution list.
  Co ax1 = parse_co_ok("plusAx[1] Z Z { (Z | plusAx[0] Z) }", sig);
  auto pr1 = check_coercion(sig, Context{}, ax1);
  REQUIRE(pr1.ok());
  CHECK(alpha_eq(pr1.value->rhs, ty_con("S", {ty_con("Z", {})})));
  // nth / inst / congruence forms.
  Co n = parse_co_ok("nth 0 (S (refl Z))", sig);
  CHECK(n->kind == CoKind::Nth);
  CHECK(n->kids[0]->kind == CoKind::ConCong);
  Co inst = parse_co_ok("(forall a. refl a) @ Nat", sig);
  CHECK(inst->kind == CoKind::Inst);
  Co arr = parse_co_ok("refl Nat -> refl Nat", sig);
  CHECK(arr->kind == CoKind::ArrowCong);
}

TEST_CASE("expression parsing covers every form") {
  Signature sig = fixtures::plus_sig();
  sig.term_consts["Zero"] = ty_con("Nat", {});
  Ex lam = parse_ex_ok("\\x:Nat. x", sig);
  CHECK(lam->kind == ExKind::Lam);
  Ex tlam = parse_ex_ok("/\\a. \\x:a. x", sig);
  CHECK(tlam->kind == ExKind::TLam);
  Ex clam = parse_ex_ok("\\c:(Nat ~ Nat). Zero |> c", sig);
  CHECK(clam->kind == ExKind::CLam);
  CHECK(clam->kids[0]->kind == ExKind::Cast);
  // Lam whose annotation is a parenthesized qual type: not a CLam.
  Ex lam2 = parse_ex_ok("\\x:((Nat ~ Nat) => Nat). x", sig);
  CHECK(lam2->kind == ExKind::Lam);
  CHECK(lam2->ty->kind == TyKind::Qual);
  Ex apps = parse_ex_ok("(/\\a. \\x:a. x) [Nat] Zero", sig);
  CHECK(apps->kind == ExKind::App);
  CHECK(apps->kids[0]->kind == ExKind::TApp);
  Ex capp = parse_ex_ok("(\\c:(Nat ~ Nat). Zero) <refl Nat>", sig);
  CHECK(capp->kind == ExKind::CApp);
  Ex asm_ = parse_ex_ok("assume (r | c : Plus Z Z ~ r) in Zero |> sym c", sig);
  CHECK(asm_->kind == ExKind::Assume);
  CHECK(asm_->chi->fam == "Plus");
  CHECK(asm_->kids[0]->kind == ExKind::Cast);
  Ex asm2 = parse_ex_ok("assume (r | c : Plus Z Z ~ r) in Zero", sig);
  auto t = infer_expr(sig, Context{}, asm2);
  REQUIRE(t.ok());
  CHECK(alpha_eq(*t.value, ty_con("Nat", {})));
}

TEST_CASE("round trip: parse after print is alpha-equal") {
  Signature sig = fixtures::plus_sig();
  sig.term_consts["Zero"] = ty_con("Nat", {});
  std::vector<Ty> tys = {
      ty_forall("a", ty_arrow(ty_var("a"), ty_fam("Plus", {ty_var("a"), ty_con("Z", {})}))),
      ty_qual(ty_fam("Plus", {ty_con("Z", {}), ty_con("Z", {})}), ty_con("Z", {}),
              ty_arrow(ty_con("Nat", {}), ty_con("Nat", {}))),
      ty_con("S", {ty_con("S", {ty_con("Z", {})})}),
  };
  for (const Ty& t : tys) {
    auto r = parse_type(show_ty(t), sig);
    REQUIRE(r.ok());
    CHECK(alpha_eq(*r.value, t));
  }
  std::vector<Co> cos = {
      co_trans(co_sym(co_refl(ty_con("Nat", {}))), co_refl(ty_con("Nat", {}))),
      co_axiom("plusAx", 1, {ty_con("Z", {}), ty_con("Z", {})},
               {{ty_con("Z", {}), co_axiom("plusAx", 0, {ty_con("Z", {})}, {})}}),
      co_nth(0, co_con("S", {co_refl(ty_con("Z", {}))})),
      co_inst(co_forall("a", co_refl(ty_var("a"))), ty_con("Nat", {})),
  };
  for (const Co& g : cos) {
    auto r = parse_coercion(show_co(g), sig);
    REQUIRE(r.ok());
    CHECK(alpha_eq(*r.value, g));
  }
  std::vector<Ex> exs = {
      ex_lam("x", ty_con("Nat", {}), ex_var("x")),
      ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x"))),
      ex_clam("c", Prop{ty_con("Nat", {}), ty_con("Nat", {})},
              ex_cast(ex_const("Zero"), co_var("c"))),
      ex_assume(Assumption{"r", "c", "Plus", {ty_con("Z", {}), ty_con("Z", {})}},
                ex_cast(ex_const("Zero"), co_sym(co_var("c")))),
      ex_app(ex_tapp(ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x"))), ty_con("Nat", {})),
             ex_const("Zero")),
  };
  for (const Ex& e : exs) {
    auto r = parse_expr(show_ex(e), sig);
    REQUIRE(r.ok());
    CHECK(alpha_eq(*r.value, e));
  }
}

TEST_CASE("round trip: show_signature of the fixtures re-parses equivalently") {
  for (const Signature& sig :
       {fixtures::plus_sig(), fixtures::equ_sig(), fixtures::onlyint_sig(), fixtures::loop_sig()}) {
    auto r = parse_program(show_signature(sig));
    REQUIRE(r.ok());
    const Signature& got = r.value->sig;
    CHECK(got.ty_cons == sig.ty_cons);
    CHECK(got.ty_con_group == sig.ty_con_group);
    REQUIRE(got.axioms.size() == sig.axioms.size());
    for (size_t i = 0; i < sig.axioms.size(); ++i) {
      REQUIRE(got.axioms[i].equations.size() == sig.axioms[i].equations.size());
      for (size_t j = 0; j < sig.axioms[i].equations.size(); ++j) {
        const Equation &a = got.axioms[i].equations[j], &b = sig.axioms[i].equations[j];
        CHECK(alpha_eq(ty_fam(a.fam, a.lhs), ty_fam(b.fam, b.lhs)));
        CHECK(a.assumps.size() == b.assumps.size());
      }
    }
  }
}

TEST_CASE("surface declarations parse") {
  const char* src = R"(
data Int : 0
data List : 1
class Collects c e
class (Collects c e) => Ordered c e
closed class Pick a
instance Collects (List Int) Int
instance (Collects c e) => Collects (List c) e
type family total Elem : 1
type instance Elem (List e) = e
{-# TOTAL Elem #-}
)";
  auto r = parse_program(src);
  REQUIRE(r.ok());
  const Program& p = *r.value;
  CHECK(p.classes.classes.at("Collects").arity == 2);
  CHECK(p.classes.classes.at("Ordered").supers.size() == 1);
  CHECK(p.classes.closed_classes.count("Pick") == 1);
  REQUIRE(p.classes.instances.at("Collects").size() == 2);
  CHECK(p.classes.instances.at("Collects")[1].context.size() == 1);
  REQUIRE(p.surface_families.size() == 1);
  CHECK(p.surface_families[0].name == "Elem");
  CHECK(p.surface_families[0].total);
  REQUIRE(p.surface_families[0].instances.size() == 1);
  CHECK(p.total_pragmas.count("Elem") == 1);
  CHECK(p.assoc.families.at("Elem").first == "CElem");
  // Elem was declared as `type family`, so it parses as Fam in later types.
  CHECK(p.surface_families[0].instances[0].first[0]->kind == TyKind::Con);
}

TEST_CASE("parse errors carry positions and fail cleanly") {
  auto bad = parse_program("data : 3");
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.diags.empty());
  CHECK(bad.diags[0].code == "ParseError");
  auto badty = parse_type("forall . Int", Signature{});
  CHECK_FALSE(badty.ok());
  auto trailing = parse_type("Int Int ~", Signature{});
  CHECK_FALSE(trailing.ok());
  // Comments are skipped even when they start with the arrow prefix.
  Signature s;
  s.ty_cons["Int"] = 0;
  auto ok = parse_type("Int -- trailing comment -> junk", s);
  REQUIRE(ok.ok());
  CHECK(alpha_eq(*ok.value, ty_con("Int", {})));
}

TEST_CASE("term declarations parse and evaluate") {
  std::string src = std::string(kPlusSrc) + R"(
const Zero : Nat
term idnat = \x:Nat. x
term useAx = Zero |> sym (plusAx[0] Nat)
)";
  auto r = parse_program(src);
  REQUIRE(r.ok());
  REQUIRE(r.value->terms.size() == 2);
  CHECK(r.value->terms[0].first == "idnat");
  auto t = infer_expr(r.value->sig, Context{}, r.value->terms[0].second);
  REQUIRE(t.ok());
  CHECK((*t.value)->kind == TyKind::Arrow);
}
