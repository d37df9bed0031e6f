#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bispectral {

// An element a + b*i of Q(i) with arbitrary-precision rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value);  // NOLINT(google-explicit-constructor)
  GaussianRational(const mpq_class& re, const mpq_class& im = mpq_class(0));

  static GaussianRational imag_unit();
  static GaussianRational fraction(long num, long den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const;

  GaussianRational conj() const;
  GaussianRational inv() const;
  mpq_class norm() const;  // re^2 + im^2

  // Total number of bits across all numerators and denominators.
  std::size_t bit_size() const;

  // Canonical text: "a/b", "c/d*i", "a/b+c/d*i"; integers print without a denominator.
  std::string to_string() const;

  GaussianRational operator-() const;
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  // Lexicographic on (re, im); used only to key ordered containers.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class falling_factorial(unsigned long n, unsigned long k);

enum class Var { x, y };

const char* var_name(Var v);
const char* derivation_name(Var v);  // "Dx" or "Dy"

// Dense univariate polynomial over Q(i). The zero polynomial has no coefficients
// and degree -1.
class Poly {
 public:
  explicit Poly(Var v = Var::x) : var_(v) {}
  Poly(Var v, std::vector<GaussianRational> coeffs);

  static Poly constant(const GaussianRational& c, Var v = Var::x);
  static Poly variable(Var v = Var::x);
  static Poly monomial(const GaussianRational& c, int degree, Var v = Var::x);

  Var var() const { return var_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

  const std::vector<GaussianRational>& coeffs() const { return c_; }
  GaussianRational coeff(int k) const;
  const GaussianRational& leading() const { return c_.back(); }

  Poly derivative() const;
  GaussianRational eval(const GaussianRational& at) const;
  Poly subst_neg() const;  // f(-x)
  Poly shifted(const GaussianRational& a) const;  // f(x + a)
  Poly monic() const;
  Poly scaled(const GaussianRational& c) const;
  Poly pow(unsigned n) const;
  Poly with_var(Var v) const;

  // Descending degree, e.g. "x^2 - 2*x + 1/2".
  std::string to_string() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim();

  Var var_;
  std::vector<GaussianRational> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// Quotient and remainder with deg r < deg g.
std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);
// f / g, which must divide exactly.
Poly exact_quotient(const Poly& f, const Poly& g);

// num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  explicit RatFunc(Var v = Var::x) : num_(v), den_(Poly::constant(1, v)) {}
  RatFunc(const Poly& p);  // NOLINT(google-explicit-constructor)
  RatFunc(const GaussianRational& c, Var v);
  RatFunc(const Poly& num, const Poly& den);

  Var var() const { return num_.var(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  GaussianRational constant_value() const { return num_.coeff(0); }

  RatFunc derivative() const;
  GaussianRational eval(const GaussianRational& at) const;
  RatFunc subst_neg() const;
  RatFunc scaled(const GaussianRational& c) const;
  RatFunc with_var(Var v) const;

  // Taylor coefficients c_0..c_n at `at`, c_k = f^(k)(at)/k!.
  std::vector<GaussianRational> taylor(const GaussianRational& at, int n) const;

  std::string to_string() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct Normalized {};
  RatFunc(Normalized, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace bispectral
