#include "cfc/syntax.hpp"

#include <algorithm>
#include <cassert>

namespace cfc {

// ---------------------------------------------------------------------------
// Factories

static Ty mk_ty(TyKind k, std::string name, TyList kids) {
  auto n = std::make_shared<TypeNode>();
  n->kind = k;
  n->name = std::move(name);
  n->kids = std::move(kids);
  return n;
}

Ty ty_con(std::string head, TyList args) { return mk_ty(TyKind::Con, std::move(head), std::move(args)); }
Ty ty_arrow(Ty dom, Ty cod) { return mk_ty(TyKind::Arrow, "", {std::move(dom), std::move(cod)}); }
Ty ty_var(std::string name) { return mk_ty(TyKind::Var, std::move(name), {}); }
Ty ty_forall(std::string binder, Ty body) { return mk_ty(TyKind::Forall, std::move(binder), {std::move(body)}); }
Ty ty_qual(Ty l, Ty r, Ty body) { return mk_ty(TyKind::Qual, "", {std::move(l), std::move(r), std::move(body)}); }
Ty ty_fam(std::string fam, TyList args) { return mk_ty(TyKind::Fam, std::move(fam), std::move(args)); }

static Co mk_co(CoKind k) {
  auto n = std::make_shared<CoNode>();
  n->kind = k;
  return n;
}

Co co_refl(Ty t) {
  auto n = mk_co(CoKind::Refl);
  const_cast<CoNode*>(n.get())->tys = {std::move(t)};
  return n;
}
Co co_sym(Co g) {
  auto n = mk_co(CoKind::Sym);
  const_cast<CoNode*>(n.get())->kids = {std::move(g)};
  return n;
}
Co co_trans(Co g1, Co g2) {
  auto n = mk_co(CoKind::Trans);
  const_cast<CoNode*>(n.get())->kids = {std::move(g1), std::move(g2)};
  return n;
}
Co co_con(std::string head, CoList args) {
  auto n = mk_co(CoKind::ConCong);
  auto* p = const_cast<CoNode*>(n.get());
  p->name = std::move(head);
  p->kids = std::move(args);
  return n;
}
Co co_arrow(Co dom, Co cod) {
  auto n = mk_co(CoKind::ArrowCong);
  const_cast<CoNode*>(n.get())->kids = {std::move(dom), std::move(cod)};
  return n;
}
Co co_forall(std::string binder, Co body) {
  auto n = mk_co(CoKind::ForallCong);
  auto* p = const_cast<CoNode*>(n.get());
  p->name = std::move(binder);
  p->kids = {std::move(body)};
  return n;
}
Co co_qual(Co l, Co r, Co body) {
  auto n = mk_co(CoKind::QualCong);
  const_cast<CoNode*>(n.get())->kids = {std::move(l), std::move(r), std::move(body)};
  return n;
}
Co co_fam(std::string fam, CoList args) {
  auto n = mk_co(CoKind::FamCong);
  auto* p = const_cast<CoNode*>(n.get());
  p->name = std::move(fam);
  p->kids = std::move(args);
  return n;
}
Co co_nth(int i, Co g) {
  auto n = mk_co(CoKind::Nth);
  auto* p = const_cast<CoNode*>(n.get());
  p->index = i;
  p->kids = {std::move(g)};
  return n;
}
Co co_inst(Co g, Ty t) {
  auto n = mk_co(CoKind::Inst);
  auto* p = const_cast<CoNode*>(n.get());
  p->kids = {std::move(g)};
  p->tys = {std::move(t)};
  return n;
}
Co co_var(std::string name) {
  auto n = mk_co(CoKind::Var);
  const_cast<CoNode*>(n.get())->name = std::move(name);
  return n;
}
Co co_axiom(std::string axiom, int eq_index, TyList ty_args, std::vector<Resolution> resolutions) {
  auto n = mk_co(CoKind::Axiom);
  auto* p = const_cast<CoNode*>(n.get());
  p->name = std::move(axiom);
  p->index = eq_index;
  p->tys = std::move(ty_args);
  p->res = std::move(resolutions);
  return n;
}

static Ex mk_ex(ExKind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

Ex ex_var(std::string name) {
  auto n = mk_ex(ExKind::Var);
  const_cast<ExprNode*>(n.get())->name = std::move(name);
  return n;
}
Ex ex_const(std::string name) {
  auto n = mk_ex(ExKind::Const);
  const_cast<ExprNode*>(n.get())->name = std::move(name);
  return n;
}
Ex ex_lam(std::string binder, Ty ann, Ex body) {
  auto n = mk_ex(ExKind::Lam);
  auto* p = const_cast<ExprNode*>(n.get());
  p->name = std::move(binder);
  p->ty = std::move(ann);
  p->kids = {std::move(body)};
  return n;
}
Ex ex_app(Ex fn, Ex arg) {
  auto n = mk_ex(ExKind::App);
  const_cast<ExprNode*>(n.get())->kids = {std::move(fn), std::move(arg)};
  return n;
}
Ex ex_tlam(std::string binder, Ex body) {
  auto n = mk_ex(ExKind::TLam);
  auto* p = const_cast<ExprNode*>(n.get());
  p->name = std::move(binder);
  p->kids = {std::move(body)};
  return n;
}
Ex ex_tapp(Ex fn, Ty arg) {
  auto n = mk_ex(ExKind::TApp);
  auto* p = const_cast<ExprNode*>(n.get());
  p->kids = {std::move(fn)};
  p->ty = std::move(arg);
  return n;
}
Ex ex_clam(std::string binder, Prop ann, Ex body) {
  auto n = mk_ex(ExKind::CLam);
  auto* p = const_cast<ExprNode*>(n.get());
  p->name = std::move(binder);
  p->prop = std::move(ann);
  p->kids = {std::move(body)};
  return n;
}
Ex ex_capp(Ex fn, Co arg) {
  auto n = mk_ex(ExKind::CApp);
  auto* p = const_cast<ExprNode*>(n.get());
  p->kids = {std::move(fn)};
  p->co = std::move(arg);
  return n;
}
Ex ex_cast(Ex body, Co g) {
  auto n = mk_ex(ExKind::Cast);
  auto* p = const_cast<ExprNode*>(n.get());
  p->kids = {std::move(body)};
  p->co = std::move(g);
  return n;
}
Ex ex_assume(Assumption chi, Ex body) {
  auto n = mk_ex(ExKind::Assume);
  auto* p = const_cast<ExprNode*>(n.get());
  p->chi = std::move(chi);
  p->kids = {std::move(body)};
  return n;
}

// ---------------------------------------------------------------------------
// Signature helpers

const AxiomDecl* Signature::find_axiom(const std::string& name) const {
  for (const auto& ax : axioms)
    if (ax.name == name) return &ax;
  return nullptr;
}

std::vector<const AxiomDecl*> Signature::axioms_for(const std::string& fam) const {
  std::vector<const AxiomDecl*> out;
  for (const auto& ax : axioms)
    if (!ax.equations.empty() && ax.equations.front().fam == fam) out.push_back(&ax);
  return out;
}

std::vector<std::string> Signature::group_members(const std::string& group) const {
  std::vector<std::string> out;
  for (const auto& [h, g] : ty_con_group)
    if (g == group) out.push_back(h);
  return out;
}

// ---------------------------------------------------------------------------
// Context helpers

bool Context::has(BindKind k, const std::string& name) const {
  return lookup(k, name) != nullptr;
}

const Binding* Context::lookup(BindKind k, const std::string& name) const {
  for (auto it = binds.rbegin(); it != binds.rend(); ++it)
    if (it->kind == k && it->name == name) return &*it;
  return nullptr;
}

Context Context::extended(Binding b) const {
  Context g = *this;
  g.binds.push_back(std::move(b));
  return g;
}

// ---------------------------------------------------------------------------
// Free variables

void collect_free_ty_vars(const Ty& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TyKind::Var:
      out.insert(t->name);
      return;
    case TyKind::Forall: {
      std::set<std::string> inner;
      collect_free_ty_vars(t->kids[0], inner);
      inner.erase(t->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : t->kids) collect_free_ty_vars(k, out);
      return;
  }
}

std::set<std::string> free_ty_vars(const Ty& t) {
  std::set<std::string> out;
  collect_free_ty_vars(t, out);
  return out;
}

std::set<std::string> free_ty_vars(const TyList& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) collect_free_ty_vars(t, out);
  return out;
}

static void ftv_co(const Co& g, std::set<std::string>& out) {
  switch (g->kind) {
    case CoKind::ForallCong: {
      std::set<std::string> inner;
      ftv_co(g->kids[0], inner);
      inner.erase(g->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : g->kids) ftv_co(k, out);
      for (const auto& t : g->tys) collect_free_ty_vars(t, out);
      for (const auto& r : g->res) {
        collect_free_ty_vars(r.witness, out);
        ftv_co(r.proof, out);
      }
      return;
  }
}

std::set<std::string> free_ty_vars(const Co& g) {
  std::set<std::string> out;
  ftv_co(g, out);
  return out;
}

static void ftv_ex(const Ex& e, std::set<std::string>& out) {
  switch (e->kind) {
    case ExKind::TLam: {
      std::set<std::string> inner;
      ftv_ex(e->kids[0], inner);
      inner.erase(e->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case ExKind::Assume: {
      for (const auto& t : e->chi->args) collect_free_ty_vars(t, out);
      std::set<std::string> inner;
      ftv_ex(e->kids[0], inner);
      inner.erase(e->chi->tv);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : e->kids) ftv_ex(k, out);
      if (e->ty) collect_free_ty_vars(e->ty, out);
      if (e->prop) {
        collect_free_ty_vars(e->prop->lhs, out);
        collect_free_ty_vars(e->prop->rhs, out);
      }
      if (e->co) ftv_co(e->co, out);
      return;
  }
}

std::set<std::string> free_ty_vars(const Ex& e) {
  std::set<std::string> out;
  ftv_ex(e, out);
  return out;
}

static void fcv_co(const Co& g, std::set<std::string>& out) {
  if (g->kind == CoKind::Var) {
    out.insert(g->name);
    return;
  }
  for (const auto& k : g->kids) fcv_co(k, out);
  for (const auto& r : g->res) fcv_co(r.proof, out);
}

std::set<std::string> free_co_vars(const Co& g) {
  std::set<std::string> out;
  fcv_co(g, out);
  return out;
}

static void fcv_ex(const Ex& e, std::set<std::string>& out) {
  switch (e->kind) {
    case ExKind::CLam: {
      std::set<std::string> inner;
      fcv_ex(e->kids[0], inner);
      inner.erase(e->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case ExKind::Assume: {
      std::set<std::string> inner;
      fcv_ex(e->kids[0], inner);
      inner.erase(e->chi->cv);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : e->kids) fcv_ex(k, out);
      if (e->co) fcv_co(e->co, out);
      return;
  }
}

std::set<std::string> free_co_vars(const Ex& e) {
  std::set<std::string> out;
  fcv_ex(e, out);
  return out;
}

static void fmv_ex(const Ex& e, std::set<std::string>& out) {
  switch (e->kind) {
    case ExKind::Var:
      out.insert(e->name);
      return;
    case ExKind::Lam: {
      std::set<std::string> inner;
      fmv_ex(e->kids[0], inner);
      inner.erase(e->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : e->kids) fmv_ex(k, out);
      return;
  }
}

std::set<std::string> free_tm_vars(const Ex& e) {
  std::set<std::string> out;
  fmv_ex(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Fresh names

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string cand = base;
  do {
    cand += '\'';
  } while (avoid.count(cand));
  return cand;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

// The set of names that must not be captured when substituting with s.
std::set<std::string> range_ty_vars(const Subst& s) {
  std::set<std::string> out;
  for (const auto& [v, t] : s.tys) {
    out.insert(v);
    collect_free_ty_vars(t, out);
  }
  return out;
}

}  // namespace

Subst Subst::of_ty(const std::string& v, Ty t) {
  Subst s;
  s.tys[v] = std::move(t);
  return s;
}

Subst resolution_subst(const Resolution& q, const Assumption& chi) {
  Subst s;
  s.tys[chi.tv] = q.witness;
  s.cos[chi.cv] = q.proof;
  return s;
}

Ty subst_ty(const Subst& s, const Ty& t) {
  if (s.tys.empty()) return t;
  switch (t->kind) {
    case TyKind::Var: {
      auto it = s.tys.find(t->name);
      return it == s.tys.end() ? t : it->second;
    }
    case TyKind::Forall: {
      Subst inner = s;
      inner.tys.erase(t->name);
      if (inner.tys.empty()) return t;
      std::string b = t->name;
      Ty body = t->kids[0];
      auto danger = range_ty_vars(inner);
      if (danger.count(b)) {
        auto avoid = danger;
        collect_free_ty_vars(body, avoid);
        std::string b2 = fresh_name(b, avoid);
        body = subst_ty(Subst::of_ty(b, ty_var(b2)), body);
        b = b2;
      }
      return ty_forall(b, subst_ty(inner, body));
    }
    default: {
      TyList kids;
      kids.reserve(t->kids.size());
      for (const auto& k : t->kids) kids.push_back(subst_ty(s, k));
      auto n = std::make_shared<TypeNode>();
      n->kind = t->kind;
      n->name = t->name;
      n->kids = std::move(kids);
      return n;
    }
  }
}

Prop subst_prop(const Subst& s, const Prop& p) {
  return {subst_ty(s, p.lhs), subst_ty(s, p.rhs)};
}

Co subst_co(const Subst& s, const Co& g) {
  switch (g->kind) {
    case CoKind::Var: {
      auto it = s.cos.find(g->name);
      return it == s.cos.end() ? g : it->second;
    }
    case CoKind::ForallCong: {
      Subst inner = s;
      inner.tys.erase(g->name);
      std::string b = g->name;
      Co body = g->kids[0];
      auto danger = range_ty_vars(inner);
      if (danger.count(b)) {
        auto avoid = danger;
        for (const auto& v : free_ty_vars(body)) avoid.insert(v);
        std::string b2 = fresh_name(b, avoid);
        body = subst_co(Subst::of_ty(b, ty_var(b2)), body);
        b = b2;
      }
      return co_forall(b, subst_co(inner, body));
    }
    default: {
      auto n = std::make_shared<CoNode>();
      n->kind = g->kind;
      n->name = g->name;
      n->index = g->index;
      for (const auto& k : g->kids) n->kids.push_back(subst_co(s, k));
      for (const auto& t : g->tys) n->tys.push_back(subst_ty(s, t));
      for (const auto& r : g->res)
        n->res.push_back({subst_ty(s, r.witness), subst_co(s, r.proof)});
      return n;
    }
  }
}

Assumption subst_assumption_rhs(const Subst& s, const Assumption& chi) {
  Assumption out = chi;
  out.args.clear();
  for (const auto& t : chi.args) out.args.push_back(subst_ty(s, t));
  return out;
}

namespace {

std::set<std::string> range_dangerous_names(const Subst& s) {
  // Names of any namespace free in the substitution range; binders that
  // collide must be renamed before descending.
  std::set<std::string> out = range_ty_vars(s);
  for (const auto& [v, g] : s.cos) {
    out.insert(v);
    for (const auto& x : free_ty_vars(g)) out.insert(x);
    for (const auto& x : free_co_vars(g)) out.insert(x);
  }
  for (const auto& [v, e] : s.exs) {
    out.insert(v);
    for (const auto& x : free_ty_vars(e)) out.insert(x);
    for (const auto& x : free_co_vars(e)) out.insert(x);
    for (const auto& x : free_tm_vars(e)) out.insert(x);
  }
  return out;
}

}  // namespace

Ex subst_ex(const Subst& s, const Ex& e) {
  switch (e->kind) {
    case ExKind::Var: {
      auto it = s.exs.find(e->name);
      return it == s.exs.end() ? e : it->second;
    }
    case ExKind::Const:
      return e;
    case ExKind::Lam: {
      Subst inner = s;
      inner.exs.erase(e->name);
      std::string b = e->name;
      Ex body = e->kids[0];
      auto danger = range_dangerous_names(inner);
      if (danger.count(b)) {
        auto avoid = danger;
        for (const auto& v : free_tm_vars(body)) avoid.insert(v);
        std::string b2 = fresh_name(b, avoid);
        Subst ren;
        ren.exs[b] = ex_var(b2);
        body = subst_ex(ren, body);
        b = b2;
      }
      return ex_lam(b, subst_ty(inner, e->ty), subst_ex(inner, body));
    }
    case ExKind::TLam: {
      Subst inner = s;
      inner.tys.erase(e->name);
      std::string b = e->name;
      Ex body = e->kids[0];
      auto danger = range_dangerous_names(inner);
      if (danger.count(b)) {
        auto avoid = danger;
        for (const auto& v : free_ty_vars(body)) avoid.insert(v);
        std::string b2 = fresh_name(b, avoid);
        body = subst_ex(Subst::of_ty(b, ty_var(b2)), body);
        b = b2;
      }
      return ex_tlam(b, subst_ex(inner, body));
    }
    case ExKind::CLam: {
      Subst inner = s;
      inner.cos.erase(e->name);
      std::string b = e->name;
      Ex body = e->kids[0];
      auto danger = range_dangerous_names(inner);
      if (danger.count(b)) {
        auto avoid = danger;
        for (const auto& v : free_co_vars(body)) avoid.insert(v);
        std::string b2 = fresh_name(b, avoid);
        Subst ren;
        ren.cos[b] = co_var(b2);
        body = subst_ex(ren, body);
        b = b2;
      }
      return ex_clam(b, subst_prop(inner, *e->prop), subst_ex(inner, body));
    }
    case ExKind::Assume: {
      Assumption chi = subst_assumption_rhs(s, *e->chi);
      Subst inner = s;
      inner.tys.erase(chi.tv);
      inner.cos.erase(chi.cv);
      Ex body = e->kids[0];
      auto danger = range_dangerous_names(inner);
      if (danger.count(chi.tv)) {
        auto avoid = danger;
        for (const auto& v : free_ty_vars(body)) avoid.insert(v);
        std::string b2 = fresh_name(chi.tv, avoid);
        body = subst_ex(Subst::of_ty(chi.tv, ty_var(b2)), body);
        chi.tv = b2;
      }
      if (danger.count(chi.cv)) {
        auto avoid = danger;
        for (const auto& v : free_co_vars(body)) avoid.insert(v);
        std::string b2 = fresh_name(chi.cv, avoid);
        Subst ren;
        ren.cos[chi.cv] = co_var(b2);
        body = subst_ex(ren, body);
        chi.cv = b2;
      }
      return ex_assume(std::move(chi), subst_ex(inner, body));
    }
    case ExKind::App:
      return ex_app(subst_ex(s, e->kids[0]), subst_ex(s, e->kids[1]));
    case ExKind::TApp:
      return ex_tapp(subst_ex(s, e->kids[0]), subst_ty(s, e->ty));
    case ExKind::CApp:
      return ex_capp(subst_ex(s, e->kids[0]), subst_co(s, e->co));
    case ExKind::Cast:
      return ex_cast(subst_ex(s, e->kids[0]), subst_co(s, e->co));
  }
  return e;  // unreachable
}

Subst compose(const Subst& s1, const Subst& s2) {
  Subst out;
  for (const auto& [v, t] : s2.tys) out.tys[v] = subst_ty(s1, t);
  for (const auto& [v, g] : s2.cos) out.cos[v] = subst_co(s1, g);
  for (const auto& [v, e] : s2.exs) out.exs[v] = subst_ex(s1, e);
  for (const auto& [v, t] : s1.tys) out.tys.emplace(v, t);
  for (const auto& [v, g] : s1.cos) out.cos.emplace(v, g);
  for (const auto& [v, e] : s1.exs) out.exs.emplace(v, e);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

// Environments mapping bound names on one side to the other.
struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> tys, cos, tms;

  static bool matches(const std::vector<std::pair<std::string, std::string>>& env,
                      const std::string& a, const std::string& b) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    return a == b;  // both free
  }
};

bool aeq_ty(const Ty& a, const Ty& b, AlphaEnv& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TyKind::Var:
      return AlphaEnv::matches(env.tys, a->name, b->name);
    case TyKind::Forall: {
      env.tys.emplace_back(a->name, b->name);
      bool ok = aeq_ty(a->kids[0], b->kids[0], env);
      env.tys.pop_back();
      return ok;
    }
    default:
      if (a->name != b->name || a->kids.size() != b->kids.size()) return false;
      for (size_t i = 0; i < a->kids.size(); ++i)
        if (!aeq_ty(a->kids[i], b->kids[i], env)) return false;
      return true;
  }
}

bool aeq_co(const Co& a, const Co& b, AlphaEnv& env) {
  if (a->kind != b->kind || a->index != b->index) return false;
  switch (a->kind) {
    case CoKind::Var:
      return AlphaEnv::matches(env.cos, a->name, b->name);
    case CoKind::ForallCong: {
      env.tys.emplace_back(a->name, b->name);
      bool ok = aeq_co(a->kids[0], b->kids[0], env);
      env.tys.pop_back();
      return ok;
    }
    default:
      if (a->name != b->name || a->kids.size() != b->kids.size() ||
          a->tys.size() != b->tys.size() || a->res.size() != b->res.size())
        return false;
      for (size_t i = 0; i < a->kids.size(); ++i)
        if (!aeq_co(a->kids[i], b->kids[i], env)) return false;
      for (size_t i = 0; i < a->tys.size(); ++i)
        if (!aeq_ty(a->tys[i], b->tys[i], env)) return false;
      for (size_t i = 0; i < a->res.size(); ++i) {
        if (!aeq_ty(a->res[i].witness, b->res[i].witness, env)) return false;
        if (!aeq_co(a->res[i].proof, b->res[i].proof, env)) return false;
      }
      return true;
  }
}

bool aeq_ex(const Ex& a, const Ex& b, AlphaEnv& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExKind::Var:
      return AlphaEnv::matches(env.tms, a->name, b->name);
    case ExKind::Const:
      return a->name == b->name;
    case ExKind::Lam: {
      if (!aeq_ty(a->ty, b->ty, env)) return false;
      env.tms.emplace_back(a->name, b->name);
      bool ok = aeq_ex(a->kids[0], b->kids[0], env);
      env.tms.pop_back();
      return ok;
    }
    case ExKind::TLam: {
      env.tys.emplace_back(a->name, b->name);
      bool ok = aeq_ex(a->kids[0], b->kids[0], env);
      env.tys.pop_back();
      return ok;
    }
    case ExKind::CLam: {
      if (!aeq_ty(a->prop->lhs, b->prop->lhs, env)) return false;
      if (!aeq_ty(a->prop->rhs, b->prop->rhs, env)) return false;
      env.cos.emplace_back(a->name, b->name);
      bool ok = aeq_ex(a->kids[0], b->kids[0], env);
      env.cos.pop_back();
      return ok;
    }
    case ExKind::App:
      return aeq_ex(a->kids[0], b->kids[0], env) && aeq_ex(a->kids[1], b->kids[1], env);
    case ExKind::TApp:
      return aeq_ex(a->kids[0], b->kids[0], env) && aeq_ty(a->ty, b->ty, env);
    case ExKind::CApp:
    case ExKind::Cast:
      return aeq_ex(a->kids[0], b->kids[0], env) && aeq_co(a->co, b->co, env);
    case ExKind::Assume: {
      const auto& ca = *a->chi;
      const auto& cb = *b->chi;
      if (ca.fam != cb.fam || ca.args.size() != cb.args.size()) return false;
      for (size_t i = 0; i < ca.args.size(); ++i)
        if (!aeq_ty(ca.args[i], cb.args[i], env)) return false;
      env.tys.emplace_back(ca.tv, cb.tv);
      env.cos.emplace_back(ca.cv, cb.cv);
      bool ok = aeq_ex(a->kids[0], b->kids[0], env);
      env.cos.pop_back();
      env.tys.pop_back();
      return ok;
    }
  }
  return false;  // unreachable
}

}  // namespace

bool alpha_eq(const Ty& a, const Ty& b) {
  AlphaEnv env;
  return aeq_ty(a, b, env);
}

bool alpha_eq(const TyList& a, const TyList& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!alpha_eq(a[i], b[i])) return false;
  return true;
}

bool alpha_eq(const Prop& a, const Prop& b) {
  return alpha_eq(a.lhs, b.lhs) && alpha_eq(a.rhs, b.rhs);
}

bool alpha_eq(const Co& a, const Co& b) {
  AlphaEnv env;
  return aeq_co(a, b, env);
}

bool alpha_eq(const Ex& a, const Ex& b) {
  AlphaEnv env;
  return aeq_ex(a, b, env);
}

// ---------------------------------------------------------------------------
// Measure and redexes

int fam_count(const Ty& t) {
  int n = t->kind == TyKind::Fam ? 1 : 0;
  for (const auto& k : t->kids) n += fam_count(k);
  return n;
}

static void redexes_rec(const Ty& t, std::vector<int>& path, std::vector<Redex>& out) {
  if (t->kind == TyKind::Fam) out.push_back({{path}, t->name, t->kids});
  for (size_t i = 0; i < t->kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    redexes_rec(t->kids[i], path, out);
    path.pop_back();
  }
}

std::vector<Redex> find_redexes(const Ty& t) {
  std::vector<Redex> out;
  std::vector<int> path;
  redexes_rec(t, path, out);
  return out;
}

Ty subterm_at(const Ty& t, const TyPath& path) {
  Ty cur = t;
  for (int i : path.steps) cur = cur->kids.at(static_cast<size_t>(i));
  return cur;
}

static Ty plug_rec(const Ty& t, const std::vector<int>& steps, size_t depth, const Ty& repl) {
  if (depth == steps.size()) return repl;
  auto n = std::make_shared<TypeNode>(*t);
  size_t i = static_cast<size_t>(steps[depth]);
  n->kids[i] = plug_rec(t->kids[i], steps, depth + 1, repl);
  return n;
}

Ty plug(const Ty& t, const TyPath& path, const Ty& replacement) {
  return plug_rec(t, path.steps, 0, replacement);
}

}  // namespace cfc
