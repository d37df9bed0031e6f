#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bispectral/exactnum.hpp"

namespace bispectral {

// A differential operator sum_j a_j(v) D^j in normal form (functions to the left).
class OreOp {
 public:
  explicit OreOp(Var v = Var::x) : var_(v) {}
  OreOp(Var v, std::vector<RatFunc> coeffs);

  static OreOp identity(Var v = Var::x);
  static OreOp scalar(const GaussianRational& c, Var v = Var::x);
  static OreOp function(const RatFunc& f);
  static OreOp derivation(Var v = Var::x);
  // f * D^j
  static OreOp term(const RatFunc& f, int j);

  Var var() const { return var_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_scalar() const { return c_.empty() || (c_.size() == 1 && c_[0].is_constant()); }
  bool has_polynomial_coefficients() const;

  const std::vector<RatFunc>& coeffs() const { return c_; }
  RatFunc coeff(int j) const;
  const RatFunc& leading() const { return c_.back(); }

  OreOp scaled(const GaussianRational& c) const;
  OreOp pow(unsigned n) const;

  OreOp operator-() const;
  OreOp& operator+=(const OreOp& o);
  OreOp& operator-=(const OreOp& o);

  friend OreOp operator+(OreOp a, const OreOp& b) { return a += b; }
  friend OreOp operator-(OreOp a, const OreOp& b) { return a -= b; }
  friend OreOp operator*(const OreOp& a, const OreOp& b);
  friend bool operator==(const OreOp& a, const OreOp& b);
  friend bool operator!=(const OreOp& a, const OreOp& b) { return !(a == b); }

 private:
  void trim();
  void check_var(const OreOp& o) const;

  Var var_;
  std::vector<RatFunc> c_;
};

// Canonical text, e.g. "(x^2 - 1)*Dx^2 + 2*x*Dx + x^2" or "(-1)/(x^2)".
std::string to_string(const OreOp& d);
std::ostream& operator<<(std::ostream& os, const OreOp& d);

// Formal adjoint sum_j (-1)^j D^j a_j, expanded to normal form.
OreOp adjoint(const OreOp& d);
bool is_formally_symmetric(const OreOp& d);

// The automorphism v -> -v, D -> -D.
OreOp sigma(const OreOp& d);

RatFunc apply(const OreOp& d, const RatFunc& f);

// Returns a_0..a_n with d = sum_j D^j a_j D^j.
std::vector<RatFunc> symmetric_decompose(const OreOp& d);
OreOp symmetric_compose(const std::vector<RatFunc>& a, Var v = Var::x);

// d = unit * f(base) with f monic.
struct BaseRewrite {
  Poly f;
  GaussianRational unit;
};
BaseRewrite rewrite_in_base(const OreOp& d, const OreOp& base);

// d * (1/r) and (1/r) * d, normalizing each coefficient once.
OreOp right_divide(const OreOp& d, const Poly& r);
OreOp left_divide(const Poly& r, const OreOp& d);

// Euclidean right division: d = q*b + rem with ord rem < ord b.
std::pair<OreOp, OreOp> right_divrem(const OreOp& d, const OreOp& b);

}  // namespace bispectral
