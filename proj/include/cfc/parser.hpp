#pragma once

#include <string>

#include "cfc/diagnostics.hpp"
#include "cfc/surface_frontend.hpp"
#include "cfc/syntax.hpp"

namespace cfc {

// A parsed .cfc file: core signature and terms, plus the surface section.
struct Program {
  Signature sig;
  std::vector<std::pair<std::string, Ex>> terms;  // declaration order

  ClassTable classes;
  FamilyAssoc assoc;
  std::vector<SurfaceFamilyDecl> surface_families;
  std::set<std::string> total_pragmas;

  SurfaceEnv surface_env() const { return {sig, classes, assoc}; }
};

Result<Program> parse_program(const std::string& src);

// Standalone parsers for CLI arguments; `sig` resolves family names.
Result<Ty> parse_type(const std::string& src, const Signature& sig);
Result<Co> parse_coercion(const std::string& src, const Signature& sig);
Result<Ex> parse_expr(const std::string& src, const Signature& sig);
Result<SType> parse_surface_type(const std::string& src, const Signature& sig);

}  // namespace cfc
