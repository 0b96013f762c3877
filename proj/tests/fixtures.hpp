#pragma once

// Shared example signatures used across the test suite.

#include "cfc/syntax.hpp"

namespace fixtures {

using namespace cfc;

// Nat constructors plus the recursive Plus family:
//   axiom plusAx : Plus
//     { forall n. Plus Z n ~ n
//     ; forall m n [r | c : Plus m n ~ r]. Plus (S m) n ~ S r }
inline Signature plus_sig() {
  Signature sig;
  sig.ty_cons = {{"Z", 0}, {"S", 1}};
  sig.ty_con_group = {{"Z", "Nat"}, {"S", "Nat"}};
  sig.families["Plus"] = {2, true};
  Equation e0{{"n"}, {}, "Plus", {ty_con("Z"), ty_var("n")}, ty_var("n")};
  Equation e1{{"m", "n"},
              {Assumption{"r", "c", "Plus", {ty_var("m"), ty_var("n")}}},
              "Plus",
              {ty_con("S", {ty_var("m")}), ty_var("n")},
              ty_con("S", {ty_var("r")})};
  sig.axioms.push_back({"plusAx", {e0, e1}});
  return sig;
}

// Closed equality family:
//   axiom equAx : Equ { forall a. Equ a a ~ True ; forall a b. Equ a b ~ False }
inline Signature equ_sig() {
  Signature sig;
  sig.ty_cons = {{"True", 0}, {"False", 0}, {"Int", 0}, {"Bool", 0}};
  sig.ty_con_group = {{"True", "B"}, {"False", "B"}};
  sig.families["Equ"] = {2, true};
  Equation e0{{"a"}, {}, "Equ", {ty_var("a"), ty_var("a")}, ty_con("True")};
  Equation e1{{"a", "b"}, {}, "Equ", {ty_var("a"), ty_var("b")}, ty_con("False")};
  sig.axioms.push_back({"equAx", {e0, e1}});
  return sig;
}

// Partial family with one open axiom: OnlyInt Int ~ Int.
inline Signature onlyint_sig() {
  Signature sig;
  sig.ty_cons = {{"Int", 0}, {"Bool", 0}};
  sig.families["OnlyInt"] = {1, false};
  Equation e{{}, {}, "OnlyInt", {ty_con("Int")}, ty_con("Int")};
  sig.axioms.push_back({"onlyIntAx", {e}});
  return sig;
}

// The classic diverging family, in the guarded form the validity rules force:
//   axiom loopAx : Loop { forall [r | c : Loop ~ r]. Loop ~ List r }
inline Signature loop_sig() {
  Signature sig;
  sig.ty_cons = {{"List", 1}, {"Int", 0}};
  sig.families["Loop"] = {0, false};
  Equation e{{}, {Assumption{"r", "c", "Loop", {}}}, "Loop", {}, ty_con("List", {ty_var("r")})};
  sig.axioms.push_back({"loopAx", {e}});
  return sig;
}

}  // namespace fixtures
