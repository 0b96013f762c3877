#include "doctest.h"

#include "cfc/syntax.hpp"
#include "cfc/unify.hpp"

using namespace cfc;

TEST_CASE("unify basic") {
  // unify([a, a], [Int, Int]) = {Int/a}
  auto s = unify({ty_var("a"), ty_var("a")}, {ty_con("Int"), ty_con("Int")});
  REQUIRE(s);
  CHECK(s->tys.size() == 1);
  CHECK(alpha_eq(s->tys.at("a"), ty_con("Int")));

  // unify([a, a], [Int, Bool]) fails
  CHECK(!unify({ty_var("a"), ty_var("a")}, {ty_con("Int"), ty_con("Bool")}));
}

TEST_CASE("unifier is most general and idempotent") {
  // unify([a, b], [b, Int]): worklist left to right gives {b/a} then {Int/b};
  // the accumulated substitution must stay idempotent, i.e. {Int/a, Int/b}.
  auto s = unify({ty_var("a"), ty_var("b")}, {ty_var("b"), ty_con("Int")});
  REQUIRE(s);
  CHECK(alpha_eq(subst_ty(*s, ty_var("a")), ty_con("Int")));
  CHECK(alpha_eq(subst_ty(*s, ty_var("b")), ty_con("Int")));
  for (const auto& [v, t] : s->tys)
    CHECK(alpha_eq(subst_ty(*s, t), t));
}

TEST_CASE("occurs check") {
  CHECK(!unify_one(ty_var("a"), ty_con("List", {ty_var("a")})));
  CHECK(!unify_one(ty_con("List", {ty_var("a")}), ty_var("a")));
  // a against itself is fine (empty substitution)
  auto s = unify_one(ty_var("a"), ty_var("a"));
  REQUIRE(s);
  CHECK(s->tys.empty());
}

TEST_CASE("unify under binders") {
  auto s = unify_one(ty_forall("x", ty_arrow(ty_var("x"), ty_var("a"))),
                     ty_forall("y", ty_arrow(ty_var("y"), ty_con("Int"))));
  REQUIRE(s);
  CHECK(alpha_eq(s->tys.at("a"), ty_con("Int")));

  // Bound variable may not escape into the solution.
  CHECK(!unify_one(ty_forall("x", ty_arrow(ty_var("x"), ty_var("a"))),
                   ty_forall("y", ty_arrow(ty_var("y"), ty_var("y")))));
}

TEST_CASE("families unify structurally, never reduce") {
  auto s = unify_one(ty_fam("F", {ty_var("a")}), ty_fam("F", {ty_con("Int")}));
  REQUIRE(s);
  CHECK(alpha_eq(s->tys.at("a"), ty_con("Int")));
  CHECK(!unify_one(ty_fam("F", {ty_var("a")}), ty_fam("G", {ty_var("a")})));
  CHECK(!unify_one(ty_fam("F", {ty_var("a")}), ty_con("F", {ty_var("a")})));
}

TEST_CASE("match is one sided") {
  // match([S m, n], [S Z, Z]) = {Z/m, Z/n}
  Ty z = ty_con("Z");
  auto s = match({ty_con("S", {ty_var("m")}), ty_var("n")}, {ty_con("S", {z}), z});
  REQUIRE(s);
  CHECK(alpha_eq(s->tys.at("m"), z));
  CHECK(alpha_eq(s->tys.at("n"), z));

  // Non-linear pattern requires equal subjects.
  CHECK(match({ty_var("a"), ty_var("a")}, {ty_con("Int"), ty_con("Int")}));
  CHECK(!match({ty_var("a"), ty_var("a")}, {ty_con("Int"), ty_con("Bool")}));

  // Subject variables are rigid: Int does not match against a subject var.
  CHECK(!match({ty_con("Int")}, {ty_var("b")}));
  // ...but a pattern variable binds a subject variable fine.
  CHECK(match({ty_var("a")}, {ty_var("b")}));
}

TEST_CASE("apartness") {
  CHECK(apart({ty_con("Int")}, {ty_con("Bool")}));
  CHECK(!apart({ty_var("a")}, {ty_con("Int")}));
  // Occurs-check failures count as apart.
  CHECK(apart({ty_var("a")}, {ty_con("List", {ty_var("a")})}));
  CHECK(!apart({ty_con("S", {ty_var("m")})}, {ty_con("S", {ty_con("Z")})}));
}

TEST_CASE("rename_disjoint freshens away from avoid set") {
  std::set<std::string> avoid{"a", "b"};
  TyList ts{ty_arrow(ty_var("a"), ty_var("b"))};
  TyList rs = rename_disjoint(ts, avoid);
  auto fv = free_ty_vars(rs);
  CHECK(fv.count("a") == 0);
  CHECK(fv.count("b") == 0);
  CHECK(fv.size() == 2);
  // Renaming preserves structure up to the variable names.
  CHECK(rs[0]->kind == TyKind::Arrow);
}
