#include "cfc/parser.hpp"

#include <cctype>
#include <cstring>

namespace cfc {

namespace {

struct Token {
  enum Kind { Ident, Int, Sym, End } kind;
  std::string text;
  Span span;
};

struct Lexer {
  std::string src;
  size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> toks;
  Diagnostics errors;

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  bool starts(const char* s) const { return src.compare(pos, strlen(s), s) == 0; }

  void run() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (starts("--")) {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      Span sp{line, col};
      if (std::isalpha((unsigned char)c) || c == '_') {
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' || src[pos] == '\''))
          advance(1);
        toks.push_back({Token::Ident, src.substr(start, pos - start), sp});
        continue;
      }
      if (std::isdigit((unsigned char)c)) {
        size_t start = pos;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) advance(1);
        toks.push_back({Token::Int, src.substr(start, pos - start), sp});
        continue;
      }
      static const char* multi[] = {"{-#", "#-}", "|>", "->", "=>", "/\\"};
      bool matched = false;
      for (const char* m : multi)
        if (starts(m)) {
          toks.push_back({Token::Sym, m, sp});
          advance(strlen(m));
          matched = true;
          break;
        }
      if (matched) continue;
      static const std::string singles = "\\.:;,(){}[]|~@<>=";
      if (singles.find(c) != std::string::npos) {
        toks.push_back({Token::Sym, std::string(1, c), sp});
        advance(1);
        continue;
      }
      errors.push_back(diag("ParseError", std::string("unexpected character '") + c + "'", sp));
      advance(1);
    }
    toks.push_back({Token::End, "", {line, col}});
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  Diagnostics errors;
  std::set<std::string> family_names;
  std::set<std::string> const_names;

  const Token& peek(int k = 0) const {
    size_t i = pos + k;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& cur() const { return peek(0); }
  bool at_sym(const std::string& s) const { return cur().kind == Token::Sym && cur().text == s; }
  bool at_ident(const std::string& s) const {
    return cur().kind == Token::Ident && cur().text == s;
  }
  bool at_end() const { return cur().kind == Token::End; }
  Token next() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

  bool fail(const std::string& msg) {
    errors.push_back(diag("ParseError", msg, cur().span));
    return false;
  }

  bool expect_sym(const std::string& s) {
    if (at_sym(s)) {
      next();
      return true;
    }
    return fail("expected '" + s + "', found '" + cur().text + "'");
  }

  bool expect_ident(std::string& out) {
    if (cur().kind == Token::Ident) {
      out = next().text;
      return true;
    }
    return fail("expected identifier, found '" + cur().text + "'");
  }

  bool expect_int(int& out) {
    if (cur().kind == Token::Int) {
      out = std::stoi(next().text);
      return true;
    }
    return fail("expected number, found '" + cur().text + "'");
  }

  static bool upper(const std::string& s) { return !s.empty() && std::isupper((unsigned char)s[0]); }

  Ty mk_name(const std::string& name, TyList args) {
    if (!upper(name)) return args.empty() ? ty_var(name) : nullptr;
    return family_names.count(name) ? ty_fam(name, std::move(args)) : ty_con(name, std::move(args));
  }

  // --- types ------------------------------------------------------------
  // type  := 'forall' v '.' type | '(' type '~' type ')' '=>' type | arrow
  // arrow := app ('->' type)?
  // app   := atom atom*   (head must be upper-case)
  // atom  := ident | '(' type ')'
  Ty parse_ty() {
    if (at_ident("forall")) {
      next();
      std::string v;
      if (!expect_ident(v)) return nullptr;
      if (!expect_sym(".")) return nullptr;
      Ty body = parse_ty();
      return body ? ty_forall(v, body) : nullptr;
    }
    // Qualified type: requires backtracking past '('.
    if (at_sym("(")) {
      size_t save = pos;
      size_t esave = errors.size();
      next();
      Ty l = parse_ty();
      if (l && at_sym("~")) {
        next();
        Ty r = parse_ty();
        if (r && at_sym(")") && peek(1).kind == Token::Sym && peek(1).text == "=>") {
          next();  // )
          next();  // =>
          Ty body = parse_ty();
          return body ? ty_qual(l, r, body) : nullptr;
        }
      }
      pos = save;
      errors.resize(esave);
    }
    Ty lhs = parse_ty_app();
    if (!lhs) return nullptr;
    if (at_sym("->")) {
      next();
      Ty rhs = parse_ty();
      return rhs ? ty_arrow(lhs, rhs) : nullptr;
    }
    return lhs;
  }

  Ty parse_ty_app() {
    if (cur().kind == Token::Ident && upper(cur().text) && !at_ident("forall")) {
      std::string name = next().text;
      TyList args;
      while (true) {
        Ty a = try_ty_atom();
        if (!a) break;
        args.push_back(a);
      }
      return mk_name(name, std::move(args));
    }
    Ty a = try_ty_atom();
    if (!a) fail("expected a type");
    return a;
  }

  // Atom or null (no error) — used for application argument lists.
  Ty try_ty_atom() {
    if (cur().kind == Token::Ident && !keyword(cur().text)) {
      std::string name = next().text;
      return mk_name(name, {});
    }
    if (at_sym("(")) {
      size_t save = pos;
      size_t esave = errors.size();
      next();
      Ty t = parse_ty();
      if (t && at_sym("~")) {
        // Qualified type handled at parse_ty level; rewind.
        pos = save;
        errors.resize(esave);
        // Re-parse as a full type in parens (the ~ belongs to a qual).
        next();
        Ty l = parse_ty();
        if (!l || !expect_sym("~")) return nullptr;
        Ty r = parse_ty();
        if (!r || !expect_sym(")")) return nullptr;
        if (!expect_sym("=>")) return nullptr;
        Ty body = parse_ty();
        return body ? ty_qual(l, r, body) : nullptr;
      }
      if (!t || !expect_sym(")")) return nullptr;
      return t;
    }
    return nullptr;
  }

  // --- coercions --------------------------------------------------------
  // co     := 'forall' a '.' co | '(' co '~' co ')' '=>' co | cotrans
  // cotrans := coarr (';' co)?
  // coarr  := coapp ('->' coarr)?
  // coapp  := 'refl' tyatom | 'sym' coatom | 'nth' INT coatom
  //         | NAME '[' i ']' tyatoms '{' resolutions '}'   (axiom)
  //         | NAME coatom*                                  (congruence)
  //         | coatom, with postfix '@' tyatom               (instantiation)
  Co parse_co() {
    if (at_ident("forall")) {
      next();
      std::string v;
      if (!expect_ident(v)) return nullptr;
      if (!expect_sym(".")) return nullptr;
      Co body = parse_co();
      return body ? co_forall(v, body) : nullptr;
    }
    if (at_sym("(")) {
      size_t save = pos;
      size_t esave = errors.size();
      next();
      Co l = parse_co();
      if (l && at_sym("~")) {
        next();
        Co r = parse_co();
        if (r && at_sym(")") && peek(1).kind == Token::Sym && peek(1).text == "=>") {
          next();
          next();
          Co body = parse_co();
          return body ? co_qual(l, r, body) : nullptr;
        }
      }
      pos = save;
      errors.resize(esave);
    }
    return parse_co_trans();
  }

  Co parse_co_trans() {
    Co l = parse_co_arr();
    if (!l) return nullptr;
    if (at_sym(";")) {
      next();
      Co r = parse_co_trans();
      return r ? co_trans(l, r) : nullptr;
    }
    return l;
  }

  Co parse_co_arr() {
    Co l = parse_co_app();
    if (!l) return nullptr;
    if (at_sym("->")) {
      next();
      Co r = parse_co_arr();
      return r ? co_arrow(l, r) : nullptr;
    }
    return l;
  }

  Co parse_co_app() {
    Co g = parse_co_head();
    if (!g) return nullptr;
    while (at_sym("@")) {
      next();
      Ty t = try_ty_atom();
      if (!t) {
        fail("expected a type after '@'");
        return nullptr;
      }
      g = co_inst(g, t);
    }
    return g;
  }

  Co parse_co_head() {
    if (at_ident("refl")) {
      next();
      Ty t = try_ty_atom();
      if (!t) {
        fail("expected a type after 'refl'");
        return nullptr;
      }
      return co_refl(t);
    }
    if (at_ident("sym")) {
      next();
      Co g = try_co_atom();
      if (!g) {
        fail("expected a coercion after 'sym'");
        return nullptr;
      }
      return co_sym(g);
    }
    if (at_ident("nth")) {
      next();
      int i = 0;
      if (!expect_int(i)) return nullptr;
      Co g = try_co_atom();
      if (!g) {
        fail("expected a coercion after 'nth'");
        return nullptr;
      }
      return co_nth(i, g);
    }
    if (cur().kind == Token::Ident && upper(cur().text)) {
      std::string name = next().text;
      if (at_sym("[")) return parse_axiom_use(name);
      CoList args;
      while (true) {
        Co a = try_co_atom();
        if (!a) break;
        args.push_back(a);
      }
      return family_names.count(name) ? co_fam(name, std::move(args))
                                      : co_con(name, std::move(args));
    }
    if (cur().kind == Token::Ident) {
      // Lower-case: either a coercion variable or an axiom name.
      std::string name = next().text;
      if (at_sym("[")) return parse_axiom_use(name);
      return co_var(name);
    }
    Co a = try_co_atom();
    if (!a) fail("expected a coercion");
    return a;
  }

  Co parse_axiom_use(const std::string& name) {
    int i = 0;
    if (!expect_sym("[")) return nullptr;
    if (!expect_int(i)) return nullptr;
    if (!expect_sym("]")) return nullptr;
    TyList tys;
    while (true) {
      Ty t = try_ty_atom();
      if (!t) break;
      tys.push_back(t);
    }
    std::vector<Resolution> res;
    if (at_sym("{")) {
      next();
      while (!at_sym("}")) {
        if (!expect_sym("(")) return nullptr;
        Ty w = parse_ty();
        if (!w) return nullptr;
        if (!expect_sym("|")) return nullptr;
        Co p = parse_co();
        if (!p) return nullptr;
        if (!expect_sym(")")) return nullptr;
        res.push_back({w, p});
        if (at_sym(",")) next();
      }
      next();
    }
    return co_axiom(name, i, std::move(tys), std::move(res));
  }

  Co try_co_atom() {
    if (at_sym("(")) {
      next();
      Co g = parse_co();
      if (!g || !expect_sym(")")) return nullptr;
      return g;
    }
    if (cur().kind == Token::Ident && !keyword(cur().text)) {
      std::string name = next().text;
      if (at_sym("[")) return parse_axiom_use(name);
      if (upper(name))
        return family_names.count(name) ? co_fam(name, {}) : co_con(name, {});
      return co_var(name);
    }
    return nullptr;
  }

  // --- expressions ------------------------------------------------------
  Ex parse_ex() {
    if (at_sym("\\")) {
      next();
      std::string v;
      if (!expect_ident(v)) return nullptr;
      if (!expect_sym(":")) return nullptr;
      // \c:(T ~ T). e  is a coercion lambda; \x:T. e a term lambda.  After
      // '(' T we look for '~' then ') .' to pick the former.
      if (at_sym("(")) {
        size_t save = pos;
        size_t esave = errors.size();
        next();
        Ty l = parse_ty();
        if (l && at_sym("~")) {
          next();
          Ty r = parse_ty();
          if (r && at_sym(")") && peek(1).kind == Token::Sym && peek(1).text == ".") {
            next();
            next();
            Ex body = parse_ex();
            return body ? ex_clam(v, Prop{l, r}, body) : nullptr;
          }
        }
        pos = save;
        errors.resize(esave);
      }
      Ty t = try_ty_atom();
      if (!t) {
        fail("expected a type annotation");
        return nullptr;
      }
      if (!expect_sym(".")) return nullptr;
      Ex body = parse_ex();
      return body ? ex_lam(v, t, body) : nullptr;
    }
    if (at_sym("/\\")) {
      next();
      std::string v;
      if (!expect_ident(v)) return nullptr;
      if (!expect_sym(".")) return nullptr;
      Ex body = parse_ex();
      return body ? ex_tlam(v, body) : nullptr;
    }
    if (at_ident("assume")) {
      next();
      if (!expect_sym("(")) return nullptr;
      Assumption chi;
      if (!expect_ident(chi.tv)) return nullptr;
      if (!expect_sym("|")) return nullptr;
      if (!expect_ident(chi.cv)) return nullptr;
      if (!expect_sym(":")) return nullptr;
      if (!expect_ident(chi.fam)) return nullptr;
      while (true) {
        Ty a = try_ty_atom();
        if (!a) break;
        chi.args.push_back(a);
      }
      if (!expect_sym("~")) return nullptr;
      std::string tv2;
      if (!expect_ident(tv2)) return nullptr;
      if (tv2 != chi.tv) fail("assumption result variable must match the binder");
      if (!expect_sym(")")) return nullptr;
      if (!at_ident("in")) {
        fail("expected 'in'");
        return nullptr;
      }
      next();
      Ex body = parse_ex();
      return body ? ex_assume(chi, body) : nullptr;
    }
    Ex e = parse_ex_app();
    if (!e) return nullptr;
    while (at_sym("|>")) {
      next();
      Co g = parse_co_arr();
      if (!g) return nullptr;
      e = ex_cast(e, g);
    }
    return e;
  }

  Ex parse_ex_app() {
    Ex e = try_ex_atom();
    if (!e) {
      fail("expected an expression");
      return nullptr;
    }
    while (true) {
      if (at_sym("[")) {
        next();
        Ty t = parse_ty();
        if (!t || !expect_sym("]")) return nullptr;
        e = ex_tapp(e, t);
        continue;
      }
      if (at_sym("<")) {
        next();
        Co g = parse_co();
        if (!g || !expect_sym(">")) return nullptr;
        e = ex_capp(e, g);
        continue;
      }
      Ex a = try_ex_atom();
      if (!a) break;
      e = ex_app(e, a);
    }
    return e;
  }

  Ex try_ex_atom() {
    if (cur().kind == Token::Ident && !keyword(cur().text)) {
      std::string name = next().text;
      // Declared constants win; otherwise capitalization decides.
      if (const_names.count(name) || upper(name)) return ex_const(name);
      return ex_var(name);
    }
    if (at_sym("(")) {
      next();
      Ex e = parse_ex();
      if (!e || !expect_sym(")")) return nullptr;
      return e;
    }
    if (at_sym("\\") || at_sym("/\\")) return parse_ex();
    return nullptr;
  }

  // --- surface types ----------------------------------------------------
  SPred parse_spred(bool& ok) {
    std::string cls;
    if (!expect_ident(cls)) {
      ok = false;
      return {};
    }
    TyList args;
    while (true) {
      Ty a = try_ty_atom();
      if (!a) break;
      args.push_back(a);
    }
    ok = true;
    return {cls, args};
  }

  SType parse_stype() {
    if (at_ident("forall")) {
      next();
      std::string v;
      if (!expect_ident(v)) return nullptr;
      if (!expect_sym(".")) return nullptr;
      SType body = parse_stype();
      return body ? st_forall(v, body) : nullptr;
    }
    // (P1, P2) => S — predicates are "Name args" lists, so a '(' followed by
    // an identifier chain then ',' or ') =>' is a context.
    if (at_sym("(")) {
      size_t save = pos;
      size_t esave = errors.size();
      next();
      std::vector<SPred> preds;
      bool ok = true;
      while (ok) {
        preds.push_back(parse_spred(ok));
        if (!ok) break;
        if (at_sym(",")) {
          next();
          continue;
        }
        break;
      }
      if (ok && at_sym(")") && peek(1).kind == Token::Sym && peek(1).text == "=>") {
        next();
        next();
        SType body = parse_stype();
        return body ? st_qual(std::move(preds), body) : nullptr;
      }
      pos = save;
      errors.resize(esave);
    }
    SType l = parse_stype_app();
    if (!l) return nullptr;
    if (at_sym("->")) {
      next();
      SType r = parse_stype();
      return r ? st_arrow(l, r) : nullptr;
    }
    return l;
  }

  SType parse_stype_app() {
    if (cur().kind == Token::Ident && upper(cur().text) && !at_ident("forall")) {
      std::string name = next().text;
      std::vector<SType> args;
      while (true) {
        SType a = try_stype_atom();
        if (!a) break;
        args.push_back(a);
      }
      return family_names.count(name) ? st_fam(name, std::move(args))
                                      : st_con(name, std::move(args));
    }
    SType a = try_stype_atom();
    if (!a) fail("expected a type");
    return a;
  }

  SType try_stype_atom() {
    if (cur().kind == Token::Ident && !keyword(cur().text)) {
      std::string name = next().text;
      if (!upper(name)) return st_var(name);
      return family_names.count(name) ? st_fam(name, {}) : st_con(name, {});
    }
    if (at_sym("(")) {
      next();
      SType t = parse_stype();
      if (!t || !expect_sym(")")) return nullptr;
      return t;
    }
    return nullptr;
  }

  // --- declarations -----------------------------------------------------
  bool parse_program_into(Program& out) {
    while (!at_end()) {
      if (at_ident("data")) {
        next();
        std::string h;
        int n = 0;
        if (!expect_ident(h) || !expect_sym(":") || !expect_int(n)) return false;
        out.sig.ty_cons[h] = n;
        if (at_ident("of")) {
          next();
          std::string d;
          if (!expect_ident(d)) return false;
          out.sig.ty_con_group[h] = d;
        }
        continue;
      }
      if (at_ident("const")) {
        next();
        std::string k;
        if (!expect_ident(k) || !expect_sym(":")) return false;
        Ty t = parse_ty();
        if (!t) return false;
        out.sig.term_consts[k] = t;
        const_names.insert(k);
        continue;
      }
      if (at_ident("family")) {
        next();
        std::string f;
        int n = 0;
        if (!expect_ident(f) || !expect_sym(":") || !expect_int(n)) return false;
        bool total = false;
        if (at_ident("total")) {
          next();
          total = true;
        } else if (at_ident("partial")) {
          next();
        } else {
          return fail("expected 'partial' or 'total'");
        }
        out.sig.families[f] = {n, total};
        continue;
      }
      if (at_ident("axiom")) {
        if (!parse_axiom(out)) return false;
        continue;
      }
      if (at_ident("term")) {
        next();
        std::string name;
        if (!expect_ident(name) || !expect_sym("=")) return false;
        Ex e = parse_ex();
        if (!e) return false;
        out.terms.emplace_back(name, e);
        continue;
      }
      if (at_ident("closed") || at_ident("class")) {
        if (!parse_class(out)) return false;
        continue;
      }
      if (at_ident("instance")) {
        if (!parse_instance(out)) return false;
        continue;
      }
      if (at_ident("type")) {
        if (!parse_type_decl(out)) return false;
        continue;
      }
      if (at_sym("{-#")) {
        next();
        if (!at_ident("TOTAL")) return fail("expected TOTAL");
        next();
        std::string f;
        if (!expect_ident(f)) return false;
        if (!expect_sym("#-}")) return false;
        out.total_pragmas.insert(f);
        continue;
      }
      return fail("unexpected token '" + cur().text + "' at top level");
    }
    return true;
  }

  bool parse_axiom(Program& out) {
    next();  // axiom
    AxiomDecl ax;
    std::string fam;
    if (!expect_ident(ax.name) || !expect_sym(":") || !expect_ident(fam)) return false;
    if (!expect_sym("{")) return false;
    while (!at_sym("}")) {
      Equation eq;
      if (!at_ident("forall")) return fail("expected 'forall'");
      next();
      while (cur().kind == Token::Ident && !upper(cur().text)) eq.tyvars.push_back(next().text);
      while (at_sym("[")) {
        next();
        Assumption chi;
        if (!expect_ident(chi.tv) || !expect_sym("|") || !expect_ident(chi.cv) ||
            !expect_sym(":") || !expect_ident(chi.fam))
          return false;
        while (true) {
          Ty a = try_ty_atom();
          if (!a) break;
          chi.args.push_back(a);
        }
        if (!expect_sym("~")) return false;
        std::string tv2;
        if (!expect_ident(tv2)) return false;
        if (tv2 != chi.tv) fail("assumption result variable must match the binder");
        if (!expect_sym("]")) return false;
        eq.assumps.push_back(std::move(chi));
      }
      if (!expect_sym(".")) return false;
      if (!expect_ident(eq.fam)) return false;
      while (true) {
        Ty a = try_ty_atom();
        if (!a) break;
        eq.lhs.push_back(a);
      }
      if (!expect_sym("~")) return false;
      eq.rhs = parse_ty();
      if (!eq.rhs) return false;
      ax.equations.push_back(std::move(eq));
      if (at_sym(";")) next();
    }
    next();  // }
    (void)fam;
    out.sig.axioms.push_back(std::move(ax));
    return true;
  }

  bool parse_class(Program& out) {
    bool closed = false;
    if (at_ident("closed")) {
      next();
      closed = true;
    }
    if (!at_ident("class")) return fail("expected 'class'");
    next();
    // class (Sup a, ...) => C a b   |   class C a b
    std::vector<SPred> supers;
    if (at_sym("(")) {
      next();
      bool ok = true;
      while (ok) {
        supers.push_back(parse_spred(ok));
        if (!ok) return false;
        if (at_sym(",")) {
          next();
          continue;
        }
        break;
      }
      if (!expect_sym(")")) return false;
      if (!expect_sym("=>")) return false;
    }
    std::string name;
    if (!expect_ident(name)) return false;
    ClassDecl decl;
    decl.supers = std::move(supers);
    while (cur().kind == Token::Ident && !upper(cur().text) && !keyword(cur().text))
      decl.params.push_back(next().text);
    decl.arity = (int)decl.params.size();
    out.classes.classes[name] = std::move(decl);
    if (closed) out.classes.closed_classes.insert(name);
    return true;
  }

  bool parse_instance(Program& out) {
    next();  // instance
    std::vector<SPred> context;
    if (at_sym("(")) {
      size_t save = pos;
      size_t esave = errors.size();
      next();
      bool ok = true;
      std::vector<SPred> preds;
      while (ok) {
        preds.push_back(parse_spred(ok));
        if (!ok) break;
        if (at_sym(",")) {
          next();
          continue;
        }
        break;
      }
      if (ok && at_sym(")") && peek(1).kind == Token::Sym && peek(1).text == "=>") {
        next();
        next();
        context = std::move(preds);
      } else {
        pos = save;
        errors.resize(esave);
      }
    }
    bool ok = true;
    SPred head = parse_spred(ok);
    if (!ok) return false;
    out.classes.instances[head.cls].push_back({std::move(context), std::move(head)});
    return true;
  }

  // type family [total] F : n   |   type instance F pats = stype
  bool parse_type_decl(Program& out) {
    next();  // type
    if (at_ident("family")) {
      next();
      bool total = false;
      if (at_ident("total")) {
        next();
        total = true;
      }
      std::string f;
      int n = 0;
      if (!expect_ident(f) || !expect_sym(":") || !expect_int(n)) return false;
      family_names.insert(f);
      out.sig.families[f] = {n, total};
      out.surface_families.push_back({f, n, total, {}});
      out.assoc.families[f] = {"C" + f, total};
      return true;
    }
    if (at_ident("instance")) {
      next();
      std::string f;
      if (!expect_ident(f)) return false;
      TyList pats;
      while (true) {
        Ty a = try_ty_atom();
        if (!a) break;
        pats.push_back(a);
      }
      if (!expect_sym("=")) return false;
      SType rhs = parse_stype();
      if (!rhs) return false;
      for (auto& sf : out.surface_families)
        if (sf.name == f) {
          sf.instances.push_back({std::move(pats), rhs});
          return true;
        }
      return fail("type instance for undeclared surface family " + f);
    }
    return fail("expected 'family' or 'instance' after 'type'");
  }

  static bool keyword(const std::string& s) {
    static const std::set<std::string> kw = {"data",   "const",    "family", "axiom", "term",
                                             "class",  "instance", "type",   "closed", "forall",
                                             "assume", "in",       "refl",   "sym",   "nth",
                                             "partial", "total",   "of"};
    return kw.count(s) > 0;
  }
};

std::set<std::string> prescan_families(const std::vector<Token>& toks) {
  std::set<std::string> fams;
  for (size_t i = 0; i + 2 < toks.size(); ++i) {
    if (toks[i].kind == Token::Ident && toks[i].text == "family" &&
        toks[i + 1].kind == Token::Ident) {
      // `family F : n ...` or `type family [total] F : n`
      if (toks[i + 1].text == "total" && i + 2 < toks.size() &&
          toks[i + 2].kind == Token::Ident)
        fams.insert(toks[i + 2].text);
      else
        fams.insert(toks[i + 1].text);
    }
  }
  return fams;
}

template <typename T, typename F>
Result<T> run_standalone(const std::string& src, const Signature& sig, F f) {
  Lexer lex{src};
  lex.run();
  if (!lex.errors.empty()) return Result<T>::failure(lex.errors);
  Parser p{std::move(lex.toks)};
  for (const auto& [name, d] : sig.families) {
    (void)d;
    p.family_names.insert(name);
  }
  for (const auto& [name, t] : sig.term_consts) {
    (void)t;
    p.const_names.insert(name);
  }
  T v = f(p);
  if (!p.errors.empty()) return Result<T>::failure(p.errors);
  if (!v) return Result<T>::failure(diag("ParseError", "empty input"));
  if (!p.at_end())
    return Result<T>::failure(diag("ParseError", "trailing input '" + p.cur().text + "'",
                                   p.cur().span));
  return Result<T>::success(std::move(v));
}

}  // namespace

Result<Program> parse_program(const std::string& src) {
  Lexer lex{src};
  lex.run();
  if (!lex.errors.empty()) return Result<Program>::failure(lex.errors);
  Parser p{std::move(lex.toks)};
  p.family_names = prescan_families(p.toks);
  Program out;
  bool ok = p.parse_program_into(out);
  if (!ok || !p.errors.empty()) {
    if (p.errors.empty()) p.errors.push_back(diag("ParseError", "parse failed"));
    return Result<Program>::failure(p.errors);
  }
  return Result<Program>::success(std::move(out));
}

Result<Ty> parse_type(const std::string& src, const Signature& sig) {
  return run_standalone<Ty>(src, sig, [](Parser& p) { return p.parse_ty(); });
}

Result<Co> parse_coercion(const std::string& src, const Signature& sig) {
  return run_standalone<Co>(src, sig, [](Parser& p) { return p.parse_co(); });
}

Result<Ex> parse_expr(const std::string& src, const Signature& sig) {
  return run_standalone<Ex>(src, sig, [](Parser& p) { return p.parse_ex(); });
}

Result<SType> parse_surface_type(const std::string& src, const Signature& sig) {
  return run_standalone<SType>(src, sig, [](Parser& p) { return p.parse_stype(); });
}

}  // namespace cfc
