#include "cfc/printer.hpp"

#include <sstream>

namespace cfc {

namespace {

// Precedence levels: 0 = top (forall, arrow rhs), 1 = arrow argument,
// 2 = application argument (atoms only).
void ty_rec(std::ostream& os, const Ty& t, int prec) {
  switch (t->kind) {
    case TyKind::Var:
      os << t->name;
      return;
    case TyKind::Con:
    case TyKind::Fam: {
      if (t->kids.empty()) {
        os << t->name;
        return;
      }
      if (prec >= 2) os << "(";
      os << t->name;
      for (const auto& k : t->kids) {
        os << " ";
        ty_rec(os, k, 2);
      }
      if (prec >= 2) os << ")";
      return;
    }
    case TyKind::Arrow:
      if (prec >= 1) os << "(";
      ty_rec(os, t->kids[0], 1);
      os << " -> ";
      ty_rec(os, t->kids[1], 0);
      if (prec >= 1) os << ")";
      return;
    case TyKind::Forall:
      if (prec >= 1) os << "(";
      os << "forall " << t->name << ". ";
      ty_rec(os, t->kids[0], 0);
      if (prec >= 1) os << ")";
      return;
    case TyKind::Qual:
      if (prec >= 1) os << "(";
      os << "(";
      ty_rec(os, t->kids[0], 0);
      os << " ~ ";
      ty_rec(os, t->kids[1], 0);
      os << ") => ";
      ty_rec(os, t->kids[2], 0);
      if (prec >= 1) os << ")";
      return;
  }
}

// 0 = top (trans), 1 = trans operand, 2 = application argument.
void co_rec(std::ostream& os, const Co& g, int prec) {
  switch (g->kind) {
    case CoKind::Var:
      os << g->name;
      return;
    case CoKind::Refl:
      if (prec >= 2) os << "(";
      os << "refl ";
      ty_rec(os, g->tys[0], 2);
      if (prec >= 2) os << ")";
      return;
    case CoKind::Sym:
      if (prec >= 2) os << "(";
      os << "sym ";
      co_rec(os, g->kids[0], 2);
      if (prec >= 2) os << ")";
      return;
    case CoKind::Trans:
      if (prec >= 1) os << "(";
      co_rec(os, g->kids[0], 1);
      os << " ; ";
      co_rec(os, g->kids[1], 0);
      if (prec >= 1) os << ")";
      return;
    case CoKind::Nth:
      if (prec >= 2) os << "(";
      os << "nth " << g->index << " ";
      co_rec(os, g->kids[0], 2);
      if (prec >= 2) os << ")";
      return;
    case CoKind::Inst:
      if (prec >= 1) os << "(";
      co_rec(os, g->kids[0], 2);
      os << " @ ";
      ty_rec(os, g->tys[0], 2);
      if (prec >= 1) os << ")";
      return;
    case CoKind::ConCong:
    case CoKind::FamCong: {
      if (g->kids.empty()) {
        os << g->name;
        return;
      }
      if (prec >= 2) os << "(";
      os << g->name;
      for (const auto& k : g->kids) {
        os << " ";
        co_rec(os, k, 2);
      }
      if (prec >= 2) os << ")";
      return;
    }
    case CoKind::ArrowCong:
      if (prec >= 1) os << "(";
      co_rec(os, g->kids[0], 1);
      os << " -> ";
      co_rec(os, g->kids[1], 1);
      if (prec >= 1) os << ")";
      return;
    case CoKind::ForallCong:
      if (prec >= 1) os << "(";
      os << "forall " << g->name << ". ";
      co_rec(os, g->kids[0], 0);
      if (prec >= 1) os << ")";
      return;
    case CoKind::QualCong:
      if (prec >= 1) os << "(";
      os << "(";
      co_rec(os, g->kids[0], 0);
      os << " ~ ";
      co_rec(os, g->kids[1], 0);
      os << ") => ";
      co_rec(os, g->kids[2], 0);
      if (prec >= 1) os << ")";
      return;
    case CoKind::Axiom: {
      if (prec >= 2) os << "(";
      os << g->name << "[" << g->index << "]";
      for (const auto& t : g->tys) {
        os << " ";
        ty_rec(os, t, 2);
      }
      os << " {";
      for (size_t i = 0; i < g->res.size(); ++i) {
        if (i) os << ", ";
        os << "(";
        ty_rec(os, g->res[i].witness, 0);
        os << " | ";
        co_rec(os, g->res[i].proof, 0);
        os << ")";
      }
      os << "}";
      if (prec >= 2) os << ")";
      return;
    }
  }
}

// 0 = top (lambdas, assume), 1 = application, 2 = atom.
void ex_rec(std::ostream& os, const Ex& e, int prec) {
  switch (e->kind) {
    case ExKind::Var:
    case ExKind::Const:
      os << e->name;
      return;
    case ExKind::Lam:
      if (prec >= 1) os << "(";
      os << "\\" << e->name << ":";
      ty_rec(os, e->ty, 2);
      os << ". ";
      ex_rec(os, e->kids[0], 0);
      if (prec >= 1) os << ")";
      return;
    case ExKind::TLam:
      if (prec >= 1) os << "(";
      os << "/\\" << e->name << ". ";
      ex_rec(os, e->kids[0], 0);
      if (prec >= 1) os << ")";
      return;
    case ExKind::CLam:
      if (prec >= 1) os << "(";
      os << "\\" << e->name << ":(";
      ty_rec(os, e->prop->lhs, 0);
      os << " ~ ";
      ty_rec(os, e->prop->rhs, 0);
      os << "). ";
      ex_rec(os, e->kids[0], 0);
      if (prec >= 1) os << ")";
      return;
    case ExKind::App:
      if (prec >= 2) os << "(";
      ex_rec(os, e->kids[0], 1);
      os << " ";
      ex_rec(os, e->kids[1], 2);
      if (prec >= 2) os << ")";
      return;
    case ExKind::TApp:
      if (prec >= 2) os << "(";
      ex_rec(os, e->kids[0], 1);
      os << " [";
      ty_rec(os, e->ty, 0);
      os << "]";
      if (prec >= 2) os << ")";
      return;
    case ExKind::CApp:
      if (prec >= 2) os << "(";
      ex_rec(os, e->kids[0], 1);
      os << " <";
      co_rec(os, e->co, 0);
      os << ">";
      if (prec >= 2) os << ")";
      return;
    case ExKind::Cast:
      if (prec >= 1) os << "(";
      ex_rec(os, e->kids[0], 1);
      os << " |> ";
      co_rec(os, e->co, 1);
      if (prec >= 1) os << ")";
      return;
    case ExKind::Assume: {
      if (prec >= 1) os << "(";
      const Assumption& chi = *e->chi;
      os << "assume (" << chi.tv << " | " << chi.cv << " : " << chi.fam;
      for (const auto& a : chi.args) {
        os << " ";
        ty_rec(os, a, 2);
      }
      os << " ~ " << chi.tv << ") in ";
      ex_rec(os, e->kids[0], 0);
      if (prec >= 1) os << ")";
      return;
    }
  }
}

std::string atom(const Ty& t) {
  std::ostringstream os;
  ty_rec(os, t, 2);
  return os.str();
}

}  // namespace

std::string show_ty(const Ty& t) {
  std::ostringstream os;
  ty_rec(os, t, 0);
  return os.str();
}

std::string show_prop(const Prop& p) {
  return show_ty(p.lhs) + " ~ " + show_ty(p.rhs);
}

std::string show_co(const Co& g) {
  std::ostringstream os;
  co_rec(os, g, 0);
  return os.str();
}

std::string show_ex(const Ex& e) {
  std::ostringstream os;
  ex_rec(os, e, 0);
  return os.str();
}

std::string show_signature(const Signature& sig) {
  std::ostringstream os;
  // Group annotations come out alongside arities so the parser can rebuild
  // datatype universes.
  for (const auto& [h, n] : sig.ty_cons) {
    os << "data " << h << " : " << n;
    auto g = sig.ty_con_group.find(h);
    if (g != sig.ty_con_group.end()) os << " of " << g->second;
    os << "\n";
  }
  for (const auto& [k, t] : sig.term_consts) os << "const " << k << " : " << show_ty(t) << "\n";
  for (const auto& [f, d] : sig.families)
    os << "family " << f << " : " << d.arity << " " << (d.total ? "total" : "partial") << "\n";
  for (const auto& ax : sig.axioms) {
    os << "axiom " << ax.name << " : "
       << (ax.equations.empty() ? "?" : ax.equations.front().fam) << " {";
    for (size_t i = 0; i < ax.equations.size(); ++i) {
      const Equation& e = ax.equations[i];
      os << (i ? " ; " : " ") << "forall";
      for (const auto& v : e.tyvars) os << " " << v;
      for (const auto& chi : e.assumps) {
        os << " [" << chi.tv << " | " << chi.cv << " : " << chi.fam;
        for (const auto& a : chi.args) os << " " << atom(a);
        os << " ~ " << chi.tv << "]";
      }
      os << ". " << e.fam;
      for (const auto& t : e.lhs) os << " " << atom(t);
      os << " ~ " << show_ty(e.rhs);
    }
    os << " }\n";
  }
  return os.str();
}

}  // namespace cfc
