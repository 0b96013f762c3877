// Command-line front door for the calculus: check / eval / normalize /
// infer / elaborate / fuzz over .cfc files.
//
// Exit codes: 0 success, 1 semantic error, 2 parse error, 3 internal
// invariant violation (a metatheory bug or a failing fuzz suite).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfc/core_typecheck.hpp"
#include "cfc/evaluator.hpp"
#include "cfc/metatheory.hpp"
#include "cfc/parser.hpp"
#include "cfc/printer.hpp"
#include "cfc/signature_check.hpp"
#include "cfc/surface_frontend.hpp"
#include "cfc/type_rewriter.hpp"

using nlohmann::json;
using namespace cfc;

namespace {

constexpr int kOk = 0, kSemantic = 1, kParse = 2, kInternal = 3;

bool color_enabled() {
  const char* v = std::getenv("CFC_COLOR");
  return v == nullptr || std::string(v) != "0";
}

std::string err_tag() { return color_enabled() ? "\033[31merror\033[0m" : "error"; }

json diag_json(const Diagnostic& d) {
  return {{"code", d.code}, {"message", d.message}, {"line", d.span.line},
          {"col", d.span.col}};
}

void print_diags(const Diagnostics& ds, bool as_json, const std::string& file) {
  if (as_json) {
    json out = {{"ok", false}, {"diagnostics", json::array()}};
    for (const auto& d : ds) out["diagnostics"].push_back(diag_json(d));
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& d : ds) {
    std::cerr << file;
    if (d.span.line > 0) std::cerr << ":" << d.span.line << ":" << d.span.col;
    std::cerr << ": " << err_tag() << " [" << d.code << "] " << d.message << "\n";
  }
}

std::optional<std::string> read_input(const std::string& file) {
  if (file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  Program program;
  std::string file;
};

// Parses the file; on failure prints diagnostics and returns the exit code.
std::variant<Loaded, int> load(const std::string& file, bool as_json) {
  auto src = read_input(file);
  if (!src) {
    print_diags({diag("IoError", "cannot read " + file)}, as_json, file);
    return kParse;
  }
  auto parsed = parse_program(*src);
  if (!parsed.ok()) {
    print_diags(parsed.diags, as_json, file);
    return kParse;
  }
  return Loaded{std::move(*parsed.value), file};
}

Diagnostics check_whole_program(const Program& p) {
  Diagnostics all;
  auto keep = [&](const Diagnostics& ds) {
    all.insert(all.end(), ds.begin(), ds.end());
  };
  auto wf = check_signature(p.sig);
  keep(wf.diags);
  auto good = check_good_signature(p.sig);
  keep(good.diags);
  if (!wf.ok() || !good.ok()) return all;  // term/surface checks need a sane signature

  for (const auto& [name, e] : p.terms) {
    auto r = infer_expr(p.sig, Context{}, e);
    if (!r.ok())
      for (auto d : r.diags) {
        d.message = "in term " + name + ": " + d.message;
        all.push_back(d);
      }
  }

  SurfaceEnv env = p.surface_env();
  for (const auto& sf : p.surface_families) {
    auto el_env = env;
    ElaboratedFamily el = elaborate_family_decl(el_env, sf);
    (void)el;
    if (sf.total) {
      TotalityResult tr = check_totality(p.sig, sf.name, p.total_pragmas.count(sf.name) > 0);
      if (!tr.total)
        all.push_back(diag("NotTotal", "family " + sf.name + ": " + tr.reason));
    }
  }
  return all;
}

int cmd_check(const std::string& file, bool as_json) {
  auto loaded = load(file, as_json);
  if (std::holds_alternative<int>(loaded)) return std::get<int>(loaded);
  const Program& p = std::get<Loaded>(loaded).program;
  Diagnostics ds = check_whole_program(p);
  if (!ds.empty()) {
    print_diags(ds, as_json, file);
    return kSemantic;
  }
  if (as_json)
    std::cout << json{{"ok", true}, {"terms", p.terms.size()}}.dump(2) << "\n";
  else
    std::cout << "ok: " << p.terms.size() << " term(s) checked\n";
  return kOk;
}

int cmd_eval(const std::string& file, const std::string& main_name, int fuel,
             bool trace, bool as_json) {
  auto loaded = load(file, as_json);
  if (std::holds_alternative<int>(loaded)) return std::get<int>(loaded);
  const Program& p = std::get<Loaded>(loaded).program;
  const Ex* target = nullptr;
  for (const auto& [name, e] : p.terms)
    if (name == main_name) target = &e;
  if (!target) {
    print_diags({diag("UnknownTerm", "no term named " + main_name)}, as_json, file);
    return kSemantic;
  }
  auto ty = infer_expr(p.sig, Context{}, *target);
  if (!ty.ok()) {
    print_diags(ty.diags, as_json, file);
    return kSemantic;
  }
  EvalResult r = eval(p.sig, *target, fuel);
  if (r.final.kind == StepResult::Stuck)
    // Well-typed input got stuck: that is a metatheory bug, not a user error.
    return print_diags({diag("StuckEvaluation", r.final.reason)}, as_json, file),
           kInternal;
  if (as_json) {
    json out = {{"ok", !r.fuel_exhausted},
                {"result", show_ex(r.final.expr)},
                {"type", show_ty(*ty.value)},
                {"steps", r.trace.size() - 1},
                {"fuel_exhausted", r.fuel_exhausted}};
    if (trace) {
      out["trace"] = json::array();
      for (const Ex& e : r.trace) out["trace"].push_back(show_ex(e));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    if (trace)
      for (const Ex& e : r.trace) std::cout << "  " << show_ex(e) << "\n";
    std::cout << show_ex(r.final.expr) << " : " << show_ty(*ty.value) << "\n";
  }
  if (r.fuel_exhausted) {
    print_diags({diag("FuelExhausted", "no value within " + std::to_string(fuel) +
                                           " steps")},
                as_json, file);
    return kSemantic;
  }
  return kOk;
}

int cmd_normalize(const std::string& file, const std::string& ty_src, bool as_json) {
  auto loaded = load(file, as_json);
  if (std::holds_alternative<int>(loaded)) return std::get<int>(loaded);
  const Program& p = std::get<Loaded>(loaded).program;
  auto t = parse_type(ty_src, p.sig);
  if (!t.ok()) {
    print_diags(t.diags, as_json, "--type");
    return kParse;
  }
  auto [nf, steps] = normalize(p.sig, *t.value);
  if (as_json)
    std::cout << json{{"ok", true},
                      {"input", show_ty(*t.value)},
                      {"normal_form", show_ty(nf)},
                      {"steps", steps},
                      {"stuck_redexes", (int)eligible_redexes(nf).size()}}
                     .dump(2)
              << "\n";
  else
    std::cout << show_ty(nf) << "\n";
  return kOk;
}

void collect_stype_vars(const SType& s, std::set<std::string>& out) {
  if (s->kind == SKind::Var) out.insert(s->name);
  for (const auto& k : s->kids) collect_stype_vars(k, out);
  for (const auto& pr : s->preds)
    for (const Ty& a : pr.args)
      for (const auto& v : free_ty_vars(a)) out.insert(v);
}

int cmd_infer(const std::string& file, const std::string& ty_src, bool as_json) {
  auto loaded = load(file, as_json);
  if (std::holds_alternative<int>(loaded)) return std::get<int>(loaded);
  const Program& p = std::get<Loaded>(loaded).program;
  auto s = parse_surface_type(ty_src, p.sig);
  if (!s.ok()) {
    print_diags(s.diags, as_json, "--type");
    return kParse;
  }
  SurfaceEnv env = p.surface_env();
  std::set<std::string> vars;
  collect_stype_vars(*s.value, vars);
  std::vector<SPred> preds = infer_constraints(env, vars, *s.value);
  auto checked = st_check_type(env, preds, vars, *s.value);
  if (!checked.ok()) {
    print_diags(checked.diags, as_json, file);
    return kSemantic;
  }
  if (as_json) {
    json out = {{"ok", true}, {"constraints", json::array()}};
    for (const auto& pr : preds) out["constraints"].push_back(spred_show(pr));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "{";
    for (size_t i = 0; i < preds.size(); ++i)
      std::cout << (i ? ", " : "") << spred_show(preds[i]);
    std::cout << "}\n";
  }
  return kOk;
}

std::string show_instance(const InstanceDecl& inst) {
  std::string out = "instance ";
  if (!inst.context.empty()) {
    out += "(";
    for (size_t i = 0; i < inst.context.size(); ++i)
      out += (i ? ", " : "") + spred_show(inst.context[i]);
    out += ") => ";
  }
  return out + spred_show(inst.head);
}

int cmd_elaborate(const std::string& file, bool as_json) {
  auto loaded = load(file, as_json);
  if (std::holds_alternative<int>(loaded)) return std::get<int>(loaded);
  const Program& p = std::get<Loaded>(loaded).program;
  SurfaceEnv env = p.surface_env();
  json jfams = json::array();
  for (const auto& sf : p.surface_families) {
    ElaboratedFamily el = elaborate_family_decl(env, sf);
    if (as_json) {
      json jf = {{"family", sf.name},
                 {"class", el.class_name},
                 {"instances", json::array()}};
      for (const auto& inst : el.instances) jf["instances"].push_back(show_instance(inst));
      jfams.push_back(jf);
    } else {
      std::cout << "class " << el.class_name;
      for (const auto& v : el.cls.params) std::cout << " " << v;
      std::cout << "\n";
      for (const auto& inst : el.instances) std::cout << show_instance(inst) << "\n";
    }
  }
  if (as_json) std::cout << json{{"ok", true}, {"families", jfams}}.dump(2) << "\n";
  return kOk;
}

int cmd_fuzz(uint64_t seed, int cases, const std::string& suite, bool as_json) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = {"preservation",     "progress", "measure",         "local_confluence",
              "strategy",         "consistency", "apart_stability", "totality_link"};
  else
    suites = {suite};
  World w = gen_world(seed, 3);
  bool any_fail = false;
  json jreports = json::array();
  for (const auto& name : suites) {
    SuiteReport rep = run_suite(name, w, cases, seed);
    any_fail = any_fail || !rep.ok();
    if (as_json) {
      json jr = {{"suite", rep.suite},
                 {"cases", rep.cases},
                 {"passed", rep.passed},
                 {"failed", rep.failed},
                 {"counterexamples", rep.counterexamples}};
      jreports.push_back(jr);
    } else {
      std::cout << rep.suite << ": " << rep.passed << "/" << rep.cases
                << (rep.ok() ? " ok" : " FAILED") << "\n";
      for (const auto& cx : rep.counterexamples) std::cout << "  " << cx << "\n";
    }
  }
  if (as_json)
    std::cout << json{{"ok", !any_fail}, {"reports", jreports}}.dump(2) << "\n";
  return any_fail ? kInternal : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reference checker and evaluator for a core calculus with "
               "constrained type families"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON");

  std::string file, main_name, ty_src, suite = "all";
  int fuel = 10000, cases = 100;
  uint64_t seed = 1;
  bool trace = false;

  auto* check = app.add_subcommand("check", "check a .cfc file");
  check->add_option("file", file, "input file, or - for stdin")->required();

  auto* ev = app.add_subcommand("eval", "evaluate a named term");
  ev->add_option("file", file)->required();
  ev->add_option("--main", main_name, "term to evaluate")->required();
  ev->add_option("--fuel", fuel, "step budget");
  ev->add_flag("--trace", trace, "print every intermediate term");

  auto* norm = app.add_subcommand("normalize", "normalize a type");
  norm->add_option("file", file)->required();
  norm->add_option("--type", ty_src, "type expression")->required();

  auto* inf = app.add_subcommand("infer", "infer surface constraints for a type");
  inf->add_option("file", file)->required();
  inf->add_option("--type", ty_src, "surface type expression")->required();

  auto* el = app.add_subcommand("elaborate", "elaborate surface families");
  el->add_option("file", file)->required();

  auto* fz = app.add_subcommand("fuzz", "run metatheory property suites");
  fz->add_option("--seed", seed, "world seed");
  fz->add_option("--cases", cases, "cases per suite");
  fz->add_option("--suite", suite, "suite name, or 'all'");

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file, as_json);
    if (ev->parsed()) return cmd_eval(file, main_name, fuel, trace, as_json);
    if (norm->parsed()) return cmd_normalize(file, ty_src, as_json);
    if (inf->parsed()) return cmd_infer(file, ty_src, as_json);
    if (el->parsed()) return cmd_elaborate(file, as_json);
    if (fz->parsed()) return cmd_fuzz(seed, cases, suite, as_json);
  } catch (const std::exception& e) {
    std::cerr << err_tag() << " [Internal] " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
