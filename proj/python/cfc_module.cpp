// Python bindings for the core operations: checking, normalization,
// evaluation, surface-constraint inference, and the property-test harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfc/core_typecheck.hpp"
#include "cfc/evaluator.hpp"
#include "cfc/metatheory.hpp"
#include "cfc/parser.hpp"
#include "cfc/printer.hpp"
#include "cfc/signature_check.hpp"
#include "cfc/surface_frontend.hpp"
#include "cfc/type_rewriter.hpp"

namespace py = pybind11;
using namespace cfc;

namespace {

py::list diags_to_list(const Diagnostics& ds) {
  py::list out;
  for (const auto& d : ds) {
    py::dict j;
    j["code"] = d.code;
    j["message"] = d.message;
    j["line"] = d.span.line;
    j["col"] = d.span.col;
    out.append(j);
  }
  return out;
}

[[noreturn]] void raise(const Diagnostics& ds, const char* what) {
  std::string msg = what;
  for (const auto& d : ds) msg += "\n  [" + d.code + "] " + d.message;
  throw py::value_error(msg);
}

Program parse_or_raise(const std::string& src) {
  auto r = parse_program(src);
  if (!r.ok()) raise(r.diags, "parse error");
  return std::move(*r.value);
}

py::dict py_check(const std::string& src) {
  auto parsed = parse_program(src);
  py::dict out;
  if (!parsed.ok()) {
    out["ok"] = false;
    out["stage"] = "parse";
    out["diagnostics"] = diags_to_list(parsed.diags);
    return out;
  }
  const Program& p = *parsed.value;
  Diagnostics all;
  auto wf = check_signature(p.sig);
  all.insert(all.end(), wf.diags.begin(), wf.diags.end());
  auto good = check_good_signature(p.sig);
  all.insert(all.end(), good.diags.begin(), good.diags.end());
  if (wf.ok() && good.ok())
    for (const auto& [name, e] : p.terms) {
      auto r = infer_expr(p.sig, Context{}, e);
      for (auto d : r.diags) {
        d.message = "in term " + name + ": " + d.message;
        all.push_back(d);
      }
    }
  out["ok"] = all.empty();
  out["stage"] = "check";
  out["diagnostics"] = diags_to_list(all);
  out["terms"] = p.terms.size();
  return out;
}

std::string py_normalize(const std::string& src, const std::string& ty_src) {
  Program p = parse_or_raise(src);
  auto t = parse_type(ty_src, p.sig);
  if (!t.ok()) raise(t.diags, "type parse error");
  return show_ty(normalize(p.sig, *t.value).first);
}

py::dict py_eval(const std::string& src, const std::string& main_name, int fuel) {
  Program p = parse_or_raise(src);
  const Ex* target = nullptr;
  for (const auto& [name, e] : p.terms)
    if (name == main_name) target = &e;
  if (!target) throw py::value_error("no term named " + main_name);
  auto ty = infer_expr(p.sig, Context{}, *target);
  if (!ty.ok()) raise(ty.diags, "type error");
  EvalResult r = eval(p.sig, *target, fuel);
  py::dict out;
  out["result"] = show_ex(r.final.expr);
  out["type"] = show_ty(*ty.value);
  out["steps"] = r.trace.size() - 1;
  out["stuck"] = r.final.kind == StepResult::Stuck;
  out["fuel_exhausted"] = r.fuel_exhausted;
  return out;
}

std::vector<std::string> py_infer(const std::string& src, const std::string& ty_src) {
  Program p = parse_or_raise(src);
  auto s = parse_surface_type(ty_src, p.sig);
  if (!s.ok()) raise(s.diags, "type parse error");
  SurfaceEnv env = p.surface_env();
  std::set<std::string> vars;
  std::function<void(const SType&)> walk = [&](const SType& t) {
    if (t->kind == SKind::Var) vars.insert(t->name);
    for (const auto& k : t->kids) walk(k);
    for (const auto& pr : t->preds)
      for (const Ty& a : pr.args)
        for (const auto& v : free_ty_vars(a)) vars.insert(v);
  };
  walk(*s.value);
  std::vector<std::string> out;
  for (const auto& pr : infer_constraints(env, vars, *s.value))
    out.push_back(spred_show(pr));
  return out;
}

py::dict py_run_suite(const std::string& suite, uint64_t seed, int cases, int size) {
  World w = gen_world(seed, size);
  SuiteReport rep = run_suite(suite, w, cases, seed);
  py::dict out;
  out["suite"] = rep.suite;
  out["cases"] = rep.cases;
  out["passed"] = rep.passed;
  out["failed"] = rep.failed;
  out["counterexamples"] = rep.counterexamples;
  return out;
}

std::vector<std::string> py_enumerate(const std::string& src, int max_nodes,
                                      int fam_bound) {
  Program p = parse_or_raise(src);
  std::vector<std::string> out;
  for (const Ty& t : enumerate_small(p.sig, max_nodes, fam_bound))
    out.push_back(show_ty(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_cfc, m) {
  m.doc() = "core calculus with constrained type families: checker, "
            "rewriter, evaluator, and metatheory harness";
  m.def("check", &py_check, py::arg("source"),
        "Parse and fully check a program; returns ok/diagnostics.");
  m.def("normalize_type", &py_normalize, py::arg("source"), py::arg("type"),
        "Normal form of a type under the program's axioms.");
  m.def("eval_term", &py_eval, py::arg("source"), py::arg("main"),
        py::arg("fuel") = 10000, "Evaluate a named term to a (coerced) value.");
  m.def("infer_constraints", &py_infer, py::arg("source"), py::arg("type"),
        "Minimal surface constraints making the type well formed.");
  m.def("run_suite", &py_run_suite, py::arg("suite"), py::arg("seed") = 1,
        py::arg("cases") = 100, py::arg("size") = 3,
        "Run one metatheory property suite on a generated world.");
  m.def("enumerate_types", &py_enumerate, py::arg("source"), py::arg("max_nodes"),
        py::arg("fam_bound") = -1,
        "Exhaustive closed types over the program's signature.");
}
