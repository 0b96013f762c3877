#pragma once

#include <string>

#include "cfc/syntax.hpp"

namespace cfc {

// Concrete syntax, re-parseable by the parser module.
std::string show_ty(const Ty& t);
std::string show_prop(const Prop& p);
std::string show_co(const Co& g);
std::string show_ex(const Ex& e);
std::string show_signature(const Signature& sig);

}  // namespace cfc
