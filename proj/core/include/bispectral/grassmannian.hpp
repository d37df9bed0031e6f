#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bispectral/darboux.hpp"
#include "bispectral/exactnum.hpp"
#include "bispectral/linalg.hpp"
#include "bispectral/orealg.hpp"

namespace bispectral {

// sum_c p_c(x) e^{c x}; zero polynomials are never stored.
class QuasiExp {
 public:
  QuasiExp() = default;
  static QuasiExp term(const Poly& p, const GaussianRational& c);
  static QuasiExp polynomial(const Poly& p) { return term(p, GaussianRational(0)); }

  const std::map<GaussianRational, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  QuasiExp derivative() const;
  // Exact only where every term has c * x0 = 0.
  GaussianRational eval_at(const GaussianRational& x0) const;
  // p_c(x) e^{cx} -> p_c(-x) e^{-cx}
  QuasiExp sigma() const;
  QuasiExp scaled(const GaussianRational& a) const;

  std::string to_string() const;

  QuasiExp& operator+=(const QuasiExp& o);
  QuasiExp& operator-=(const QuasiExp& o);
  friend QuasiExp operator+(QuasiExp a, const QuasiExp& b) { return a += b; }
  friend QuasiExp operator-(QuasiExp a, const QuasiExp& b) { return a -= b; }
  friend QuasiExp operator*(const QuasiExp& a, const QuasiExp& b);
  friend bool operator==(const QuasiExp& a, const QuasiExp& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const QuasiExp& a, const QuasiExp& b) { return !(a == b); }

 private:
  void add_term(const GaussianRational& c, const Poly& p);

  std::map<GaussianRational, Poly> terms_;
};

// d applied to f; d may have rational coefficients, so the result is returned
// multiplied by the common denominator of d's coefficients.
QuasiExp apply_cleared(const OreOp& d, const QuasiExp& f);
bool annihilates(const OreOp& d, const QuasiExp& f);

// sum_j coeffs[j] delta^(j)(y - point)
struct ConditionFunctional {
  GaussianRational point;
  std::vector<GaussianRational> coeffs;
};

QuasiExp functional_to_kernel(const ConditionFunctional& chi);

// Exponent multiset {c: multiplicity} of a constant-coefficient operator prod (D - c)^m.
using ExponentMultiset = std::map<GaussianRational, int>;

Poly exponent_polynomial(const ExponentMultiset& e);
OreOp constant_operator(const ExponentMultiset& e);

struct AdelicPlane {
  std::vector<ConditionFunctional> conditions;
  ExponentMultiset ambient;  // d_const
  std::vector<QuasiExp> V;
  Poly q{Var::y};
};

// Default ambient operator: each support point c with multiplicity 2 n(c), n(c) the
// number of conditions at c.
AdelicPlane make_plane(const std::vector<ConditionFunctional>& conditions,
                       const std::optional<ExponentMultiset>& ambient = std::nullopt);

// Gram matrix M_ij = C_d(f_i, f_j), d = constant_operator(e). Throws NotInKernel.
Matrix concomitant_pairing(const ExponentMultiset& e, const std::vector<QuasiExp>& V);

bool is_lagrangian(const AdelicPlane& plane);
bool is_sigma_stable(const std::vector<QuasiExp>& V);
bool is_sigma_stable(const AdelicPlane& plane);

struct Annihilator {
  OreOp monic{Var::x};  // kernel exactly span V
  OreOp u{Var::x};      // p * monic, polynomial coefficients
  Poly p{Var::x};
};

Annihilator annihilator(const std::vector<QuasiExp>& V);

// ((1/p)u)* ((1/p)u) = unit * f(D) with f the exponent polynomial of e.
bool factorization_check(const std::vector<QuasiExp>& V, const ExponentMultiset& e);

DarbouxTransform to_darboux(const AdelicPlane& plane);

}  // namespace bispectral
