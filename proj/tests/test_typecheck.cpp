#include "doctest.h"

#include "cfc/core_typecheck.hpp"
#include "fixtures.hpp"

using namespace cfc;

namespace {
bool has_code(const Diagnostics& ds, const std::string& code) {
  for (const auto& d : ds)
    if (d.code == code) return true;
  return false;
}

Signature int_sig() {
  Signature sig = fixtures::plus_sig();
  sig.ty_cons["Int"] = 0;
  sig.term_consts["MkInt"] = ty_con("Int");
  return sig;
}
}  // namespace

TEST_CASE("check_type") {
  Signature sig = int_sig();
  Context ctx;
  CHECK(check_type(sig, ctx, ty_arrow(ty_con("Int"), ty_con("Int"))).ok());

  // Family applications are not proper types.
  auto r = check_type(sig, ctx, ty_fam("Plus", {ty_con("Z"), ty_con("Z")}));
  REQUIRE(!r.ok());
  CHECK(has_code(r.diags, "FamilyOutsideProp"));

  // ...but may appear on the left of a proposition in a qualified type:
  // forall a. (Plus Z Z ~ a) => a -> a
  Ty t = ty_forall("a", ty_qual(ty_fam("Plus", {ty_con("Z"), ty_con("Z")}), ty_var("a"),
                                ty_arrow(ty_var("a"), ty_var("a"))));
  CHECK(check_type(sig, ctx, t).ok());

  CHECK(has_code(check_type(sig, ctx, ty_var("a")).diags, "UnboundTyVar"));
  CHECK(has_code(check_type(sig, ctx, ty_con("Missing")).diags, "UndeclaredTyCon"));
  CHECK(has_code(check_type(sig, ctx, ty_con("S")).diags, "ArityMismatch"));
}

TEST_CASE("check_prop") {
  Signature sig = int_sig();
  Context ctx;
  CHECK(check_prop(sig, ctx, {ty_con("Int"), ty_con("Int")}).ok());
  CHECK(check_prop(sig, ctx, {ty_fam("Plus", {ty_con("Z"), ty_con("Z")}), ty_con("Z")}).ok());

  // Family applications may not nest inside a proposition.
  auto r = check_prop(
      sig, ctx,
      {ty_fam("Plus", {ty_fam("Plus", {ty_con("Z"), ty_con("Z")}), ty_con("Z")}), ty_con("Z")});
  REQUIRE(!r.ok());
  CHECK(has_code(r.diags, "NestedFamilyInProp"));

  // A family on the right-hand side is also out: only the lhs may be one.
  auto r2 = check_prop(sig, ctx, {ty_con("Z"), ty_fam("Plus", {ty_con("Z"), ty_con("Z")})});
  CHECK(!r2.ok());
}

TEST_CASE("check_ctx") {
  Signature sig = int_sig();
  CHECK(check_ctx(sig, Context::empty()).ok());

  Context good;
  good = good.extended({BindKind::TyVar, "a", std::nullopt, nullptr});
  good = good.extended({BindKind::CoVar, "c",
                        Prop{ty_fam("Plus", {ty_var("a"), ty_var("a")}), ty_var("a")}, nullptr});
  CHECK(check_ctx(sig, good).ok());

  Context dup;
  dup = dup.extended({BindKind::TyVar, "a", std::nullopt, nullptr});
  dup = dup.extended({BindKind::TyVar, "a", std::nullopt, nullptr});
  CHECK(has_code(check_ctx(sig, dup).diags, "DuplicateBinding"));

  Context bad;
  bad = bad.extended({BindKind::TmVar, "x", std::nullopt, ty_var("zz")});
  CHECK(has_code(check_ctx(sig, bad).diags, "IllFormedBindingType"));
}

TEST_CASE("check_coercion structural rules") {
  Signature sig = int_sig();
  Context ctx;

  auto r = check_coercion(sig, ctx, co_refl(ty_con("Int")));
  REQUIRE(r.ok());
  CHECK(alpha_eq(r->lhs, ty_con("Int")));
  CHECK(alpha_eq(r->rhs, ty_con("Int")));

  // sym and trans
  Co g = co_axiom("plusAx", 0, {ty_con("Z")}, {});
  auto rg = check_coercion(sig, ctx, g);
  REQUIRE(rg.ok());  // Plus Z Z ~ Z
  auto rs = check_coercion(sig, ctx, co_sym(g));
  REQUIRE(rs.ok());
  CHECK(alpha_eq(rs->lhs, ty_con("Z")));
  auto rt = check_coercion(sig, ctx, co_trans(g, co_sym(g)));
  REQUIRE(rt.ok());
  CHECK(alpha_eq(rt->lhs, ty_fam("Plus", {ty_con("Z"), ty_con("Z")})));
  CHECK(alpha_eq(rt->rhs, ty_fam("Plus", {ty_con("Z"), ty_con("Z")})));
  CHECK(has_code(check_coercion(sig, ctx, co_trans(g, g)).diags, "CoercionMismatch"));

  // congruence and nth
  Co sg = co_con("S", {g});
  auto rsg = check_coercion(sig, ctx, sg);
  REQUIRE(rsg.ok());
  CHECK(alpha_eq(rsg->lhs, ty_con("S", {ty_fam("Plus", {ty_con("Z"), ty_con("Z")})})));
  auto rn = check_coercion(sig, ctx, co_nth(0, sg));
  REQUIRE(rn.ok());
  CHECK(alpha_eq(rn->rhs, ty_con("Z")));
  CHECK(has_code(check_coercion(sig, ctx, co_nth(0, g)).diags, "BadDecomposition"));

  // arrow congruence indices: 0 = domain, 1 = codomain
  Co ag = co_arrow(co_refl(ty_con("Int")), g);
  auto ra = check_coercion(sig, ctx, co_nth(1, ag));
  REQUIRE(ra.ok());
  CHECK(alpha_eq(ra->rhs, ty_con("Z")));

  // forall congruence + instantiation
  Co fg = co_forall("a", co_arrow(co_refl(ty_var("a")), g));
  auto ri = check_coercion(sig, ctx, co_inst(fg, ty_con("Int")));
  REQUIRE(ri.ok());
  CHECK(alpha_eq(ri->rhs, ty_arrow(ty_con("Int"), ty_con("Z"))));

  CHECK(has_code(check_coercion(sig, ctx, co_var("nope")).diags, "UnboundCoVar"));
}

TEST_CASE("check_coercion axiom use") {
  Signature sig = int_sig();
  Context ctx;

  // plusAx[0] Z: Plus Z Z ~ Z.
  auto r0 = check_coercion(sig, ctx, co_axiom("plusAx", 0, {ty_con("Z")}, {}));
  REQUIRE(r0.ok());
  CHECK(alpha_eq(r0->lhs, ty_fam("Plus", {ty_con("Z"), ty_con("Z")})));
  CHECK(alpha_eq(r0->rhs, ty_con("Z")));

  // plusAx[1] Z Z {(Z | plusAx[0] Z)}: Plus (S Z) Z ~ S Z.
  Resolution q{ty_con("Z"), co_axiom("plusAx", 0, {ty_con("Z")}, {})};
  auto r1 = check_coercion(sig, ctx, co_axiom("plusAx", 1, {ty_con("Z"), ty_con("Z")}, {q}));
  REQUIRE(r1.ok());
  CHECK(alpha_eq(r1->lhs, ty_fam("Plus", {ty_con("S", {ty_con("Z")}), ty_con("Z")})));
  CHECK(alpha_eq(r1->rhs, ty_con("S", {ty_con("Z")})));

  CHECK(has_code(check_coercion(sig, ctx, co_axiom("plusAx", 5, {}, {})).diags,
                 "AxiomIndexOutOfRange"));
  CHECK(has_code(check_coercion(sig, ctx, co_axiom("nope", 0, {}, {})).diags,
                 "UndeclaredAxiom"));
  CHECK(has_code(check_coercion(sig, ctx, co_axiom("plusAx", 1, {ty_con("Z"), ty_con("Z")}, {}))
                     .diags,
                 "ResolutionMismatch"));

  // equAx[1] at [Int, Int]: equation 0 matches Equ Int Int and is not
  // compatible, so the use is rejected.
  Signature esig = fixtures::equ_sig();
  auto rc = check_coercion(esig, ctx, co_axiom("equAx", 1, {ty_con("Int"), ty_con("Int")}, {}));
  REQUIRE(!rc.ok());
  CHECK(has_code(rc.diags, "ConflictWithEarlierEquation"));
  // At [Int, Bool] equation 0's lhs is apart — fine.
  auto rb = check_coercion(esig, ctx, co_axiom("equAx", 1, {ty_con("Int"), ty_con("Bool")}, {}));
  REQUIRE(rb.ok());
  CHECK(alpha_eq(rb->rhs, ty_con("False")));
}

TEST_CASE("check_resolutions") {
  Signature sig = int_sig();
  Context ctx;
  CHECK(check_resolutions(sig, ctx, {}, {}).ok());

  Assumption chi{"r", "c", "Plus", {ty_con("Z"), ty_con("Z")}};
  Resolution ok_q{ty_con("Z"), co_axiom("plusAx", 0, {ty_con("Z")}, {})};
  CHECK(check_resolutions(sig, ctx, {ok_q}, {chi}).ok());

  Resolution bad_q{ty_con("Int"), co_refl(ty_con("Int"))};
  auto r = check_resolutions(sig, ctx, {bad_q}, {chi});
  REQUIRE(!r.ok());
  CHECK(has_code(r.diags, "ProofPropMismatch"));

  CHECK(has_code(check_resolutions(sig, ctx, {}, {chi}).diags, "LengthMismatch"));
}

TEST_CASE("infer_expr basics") {
  Signature sig = int_sig();
  Context ctx;

  auto r = infer_expr(sig, ctx, ex_lam("x", ty_con("Int"), ex_var("x")));
  REQUIRE(r.ok());
  CHECK(alpha_eq(*r, ty_arrow(ty_con("Int"), ty_con("Int"))));

  auto ra = infer_expr(sig, ctx,
                       ex_app(ex_lam("x", ty_con("Int"), ex_var("x")), ex_const("MkInt")));
  REQUIRE(ra.ok());
  CHECK(alpha_eq(*ra, ty_con("Int")));

  CHECK(has_code(infer_expr(sig, ctx, ex_var("y")).diags, "UnboundVar"));
  CHECK(has_code(infer_expr(sig, ctx, ex_app(ex_const("MkInt"), ex_const("MkInt"))).diags,
                 "AppShapeMismatch"));

  // polymorphic identity
  auto rp = infer_expr(sig, ctx, ex_tapp(ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x"))),
                                         ty_con("Int")));
  REQUIRE(rp.ok());
  CHECK(alpha_eq(*rp, ty_arrow(ty_con("Int"), ty_con("Int"))));

  // coercion abstraction and application
  Prop p{ty_fam("Plus", {ty_con("Z"), ty_con("Z")}), ty_con("Z")};
  Ex clam = ex_clam("c", p, ex_const("MkInt"));
  auto rc = infer_expr(sig, ctx, clam);
  REQUIRE(rc.ok());
  CHECK((*rc)->kind == TyKind::Qual);
  auto rca = infer_expr(sig, ctx, ex_capp(clam, co_axiom("plusAx", 0, {ty_con("Z")}, {})));
  REQUIRE(rca.ok());
  CHECK(alpha_eq(*rca, ty_con("Int")));
}

TEST_CASE("infer_expr casts") {
  Signature sig = int_sig();
  Context ctx;

  Co g = co_axiom("plusAx", 0, {ty_con("Z")}, {});  // Plus Z Z ~ Z
  // MkInt |> refl Int : Int
  auto r = infer_expr(sig, ctx, ex_cast(ex_const("MkInt"), co_refl(ty_con("Int"))));
  REQUIRE(r.ok());
  CHECK(alpha_eq(*r, ty_con("Int")));

  // Source mismatch.
  auto rm = infer_expr(sig, ctx, ex_cast(ex_const("MkInt"), g));
  REQUIRE(!rm.ok());
  CHECK(has_code(rm.diags, "CastPropMismatch"));

  // Casting onto a pretype is rejected: sym g lands on Plus Z Z.
  sig.term_consts["MkZ"] = ty_con("Z");
  auto ri = infer_expr(sig, ctx, ex_cast(ex_const("MkZ"), co_sym(g)));
  REQUIRE(!ri.ok());
  CHECK(has_code(ri.diags, "ImproperCastTarget"));
}

TEST_CASE("infer_expr assume") {
  Signature sig = int_sig();
  Context ctx;
  Assumption chi{"a", "c", "Plus", {ty_con("Z"), ty_con("Z")}};

  auto r = infer_expr(sig, ctx, ex_assume(chi, ex_const("MkInt")));
  REQUIRE(r.ok());
  CHECK(alpha_eq(*r, ty_con("Int")));

  // The assumed variable may not escape into the result type.
  auto re = infer_expr(sig, ctx, ex_assume(chi, ex_lam("x", ty_var("a"), ex_var("x"))));
  REQUIRE(!re.ok());
  CHECK(has_code(re.diags, "SkolemEscape"));

  // assume requires a total family.
  Signature psig = fixtures::onlyint_sig();
  psig.term_consts["MkInt"] = ty_con("Int");
  Assumption pchi{"a", "c", "OnlyInt", {ty_con("Int")}};
  auto rp = infer_expr(psig, ctx, ex_assume(pchi, ex_const("MkInt")));
  REQUIRE(!rp.ok());
  CHECK(has_code(rp.diags, "AssumeOnPartialFamily"));
}

TEST_CASE("type regularity on sample expressions") {
  // Whatever infer_expr returns is itself a proper type.
  Signature sig = int_sig();
  Context ctx;
  std::vector<Ex> samples = {
      ex_lam("x", ty_con("Int"), ex_var("x")),
      ex_tlam("a", ex_lam("x", ty_var("a"), ex_var("x"))),
      ex_assume(Assumption{"a", "c", "Plus", {ty_con("Z"), ty_con("Z")}},
                ex_const("MkInt")),
      ex_cast(ex_const("MkInt"), co_refl(ty_con("Int"))),
  };
  for (const auto& e : samples) {
    auto r = infer_expr(sig, ctx, e);
    REQUIRE(r.ok());
    CHECK(check_type(sig, ctx, *r).ok());
  }
}
