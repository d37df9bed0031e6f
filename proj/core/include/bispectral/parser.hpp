#pragma once

#include <map>
#include <string>
#include <vector>

#include "bispectral/exactnum.hpp"
#include "bispectral/orealg.hpp"

namespace bispectral {

enum class ContextKind { exp, airy, bessel };

const char* context_kind_name(ContextKind k);

struct Dialect {
  enum class Kind { raw_x, raw_y, generators, scalar };
  Kind kind = Kind::raw_x;
  ContextKind context = ContextKind::exp;

  static Dialect raw_x() { return {Kind::raw_x, ContextKind::exp}; }
  static Dialect raw_y() { return {Kind::raw_y, ContextKind::exp}; }
  static Dialect generators(ContextKind c) { return {Kind::generators, c}; }
  static Dialect scalar() { return {Kind::scalar, ContextKind::exp}; }

  // Symbols the dialect accepts as operators (e.g. {"x", "Dx"}).
  std::vector<std::string> symbols() const;
};

struct ExprTree {
  enum class Kind { sum, product, quotient, power, scalar, symbol };

  Kind kind = Kind::scalar;
  std::vector<ExprTree> children;
  std::string name;           // symbol
  GaussianRational value;     // scalar
  unsigned exponent = 0;      // power

  static ExprTree make_scalar(const GaussianRational& v);
  static ExprTree make_symbol(const std::string& name);
  static ExprTree make_sum(std::vector<ExprTree> terms);
  static ExprTree make_product(std::vector<ExprTree> factors);
  static ExprTree make_quotient(ExprTree num, ExprTree den);
  static ExprTree make_power(ExprTree base, unsigned exponent);
};

// Text form that reparses to an equivalent tree.
std::string to_string(const ExprTree& e);

using ParamEnv = std::map<std::string, GaussianRational>;

bool is_reserved_symbol(const std::string& name);
void validate_env(const ParamEnv& env);

// Parameters are substituted during parsing; no free names survive.
ExprTree parse(const std::string& text, const Dialect& dialect, const ParamEnv& env = {});

// Expand a raw-x / raw-y tree (or an exp/airy generator tree) into normal form.
OreOp expand(const ExprTree& e, Var v);

// Evaluate a tree with no operator symbols.
GaussianRational evaluate_scalar(const ExprTree& e);

// Convenience wrappers.
OreOp parse_op(const std::string& text, Var v, const ParamEnv& env = {});
Poly parse_poly(const std::string& text, Var v, const ParamEnv& env = {});
GaussianRational parse_scalar(const std::string& text, const ParamEnv& env = {});

std::string print_op(const OreOp& d);

}  // namespace bispectral
