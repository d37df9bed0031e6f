#include "bispectral/exactnum.hpp"

#include <algorithm>
#include <ostream>

#include "bispectral/error.hpp"

namespace bispectral {

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(long value) : re_(value), im_(0) {}

GaussianRational::GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::imag_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }

GaussianRational GaussianRational::fraction(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in fraction");
  mpq_class q(num, den);
  q.canonicalize();
  return GaussianRational(q);
}

bool GaussianRational::is_one() const { return re_ == 1 && sgn(im_) == 0; }

GaussianRational GaussianRational::conj() const { return GaussianRational(re_, -im_); }

mpq_class GaussianRational::norm() const { return re_ * re_ + im_ * im_; }

GaussianRational GaussianRational::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (is_real()) return GaussianRational(1 / re_);
  mpq_class n = norm();
  return GaussianRational(re_ / n, -im_ / n);
}

std::size_t GaussianRational::bit_size() const {
  return mpz_sizeinbase(re_.get_num_mpz_t(), 2) + mpz_sizeinbase(re_.get_den_mpz_t(), 2) +
         mpz_sizeinbase(im_.get_num_mpz_t(), 2) + mpz_sizeinbase(im_.get_den_mpz_t(), 2);
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  std::string imag;
  mpq_class a = abs(im_);
  imag = (a == 1) ? "i" : a.get_str() + "*i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag;
}

GaussianRational GaussianRational::operator-() const { return GaussianRational(-re_, -im_); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inv();
}

bool operator<(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c != 0) return c < 0;
  return cmp(a.im_, b.im_) < 0;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class falling_factorial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class r = 1;
  for (unsigned long j = 0; j < k; ++j) r *= n - j;
  return r;
}

const char* var_name(Var v) { return v == Var::x ? "x" : "y"; }
const char* derivation_name(Var v) { return v == Var::x ? "Dx" : "Dy"; }

// ---------------------------------------------------------------------------
// Poly

namespace {

Var merged_var(const Poly& a, const Poly& b) {
  if (a.var() == b.var()) return a.var();
  if (a.is_constant()) return b.var();
  if (b.is_constant()) return a.var();
  throw Error(ErrorKind::VariableMismatch,
              std::string("polynomials in ") + var_name(a.var()) + " and " + var_name(b.var()));
}

// Sign-aware rendering of a coefficient c in front of a non-constant monomial.
// Returns the magnitude text (possibly empty for +-1) and whether to subtract.
std::pair<std::string, bool> coefficient_text(const GaussianRational& c, bool standalone) {
  bool negative = (!c.is_real() && sgn(c.re()) == 0) ? sgn(c.im()) < 0 : (c.is_real() && sgn(c.re()) < 0);
  GaussianRational mag = negative ? -c : c;
  std::string text;
  if (!mag.is_real() && sgn(mag.re()) != 0) {
    text = "(" + mag.to_string() + ")";
  } else if (mag.is_one() && !standalone) {
    text = "";
  } else {
    text = mag.to_string();
  }
  return {text, negative};
}

}  // namespace

Poly::Poly(Var v, std::vector<GaussianRational> coeffs) : var_(v), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const GaussianRational& c, Var v) { return Poly(v, {c}); }

Poly Poly::variable(Var v) { return Poly(v, {GaussianRational(0), GaussianRational(1)}); }

Poly Poly::monomial(const GaussianRational& c, int degree, Var v) {
  if (c.is_zero()) return Poly(v);
  std::vector<GaussianRational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return Poly(v, std::move(coeffs));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GaussianRational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return GaussianRational(0);
  return c_[static_cast<std::size_t>(k)];
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(var_);
  std::vector<GaussianRational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
  return Poly(var_, std::move(d));
}

GaussianRational Poly::eval(const GaussianRational& at) const {
  GaussianRational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

Poly Poly::subst_neg() const {
  std::vector<GaussianRational> d = c_;
  for (std::size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
  return Poly(var_, std::move(d));
}

Poly Poly::shifted(const GaussianRational& a) const {
  if (a.is_zero() || c_.size() <= 1) return *this;
  // Horner in the basis of (x + a).
  std::vector<GaussianRational> r(c_.size());
  for (std::size_t i = c_.size(); i-- > 0;) {
    // r <- r*(x + a) + c_i
    for (std::size_t k = c_.size() - 1; k > 0; --k) {
      r[k] = r[k - 1] + r[k] * a;
    }
    r[0] = r[0] * a + c_[i];
  }
  return Poly(var_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero() || leading().is_one()) return *this;
  return scaled(leading().inv());
}

Poly Poly::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return Poly(var_);
  std::vector<GaussianRational> d = c_;
  for (auto& x : d) x *= c;
  return Poly(var_, std::move(d));
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(1, var_);
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Poly Poly::with_var(Var v) const {
  Poly r = *this;
  r.var_ = v;
  return r;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const GaussianRational& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    auto [text, negative] = coefficient_text(c, k == 0);
    std::string mono;
    if (k >= 1) {
      mono = var_name(var_);
      if (k >= 2) mono += "^" + std::to_string(k);
    }
    std::string term = text.empty() ? mono : (mono.empty() ? text : text + "*" + mono);
    if (first) {
      out = (negative ? "-" : "") + term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

Poly Poly::operator-() const { return scaled(GaussianRational(-1)); }

Poly& Poly::operator+=(const Poly& o) {
  var_ = merged_var(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  var_ = merged_var(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Var v = merged_var(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(v);
  std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Poly(v, std::move(r));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_ != b.c_) return false;
  return a.var_ == b.var_ || a.is_constant();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Var v = f.is_zero() ? g.var() : f.var();
  if (!f.is_constant() && !g.is_constant() && f.var() != g.var()) {
    throw Error(ErrorKind::VariableMismatch, "divrem across variables");
  }
  if (g.is_constant()) v = f.var();
  if (f.degree() < g.degree()) return {Poly(v), f.with_var(v)};
  std::vector<GaussianRational> r = f.coeffs();
  const int dg = g.degree();
  std::vector<GaussianRational> q(static_cast<std::size_t>(f.degree() - dg) + 1);
  GaussianRational lead_inv = g.leading().inv();
  const auto& gc = g.coeffs();
  for (int k = f.degree() - dg; k >= 0; --k) {
    GaussianRational c = r[static_cast<std::size_t>(k + dg)];
    if (c.is_zero()) continue;
    if (!lead_inv.is_one()) c *= lead_inv;
    for (int j = 0; j <= dg; ++j) {
      if (gc[static_cast<std::size_t>(j)].is_zero()) continue;
      r[static_cast<std::size_t>(k + j)] -= c * gc[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(k)] = std::move(c);
  }
  r.resize(static_cast<std::size_t>(dg));
  return {Poly(v, std::move(q)), Poly(v, std::move(r))};
}

Poly gcd(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  Poly a = f.monic();
  Poly b = g.monic();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return Poly::constant(1, f.var());
    Poly r = divrem(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a;
}

Poly exact_quotient(const Poly& f, const Poly& g) {
  auto [q, r] = divrem(f, g);
  if (!r.is_zero()) throw Error(ErrorKind::InexactDivision, f.to_string() + " not divisible by " + g.to_string());
  return q;
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(const Poly& p) : num_(p), den_(Poly::constant(1, p.var())) {}

RatFunc::RatFunc(const GaussianRational& c, Var v) : num_(Poly::constant(c, v)), den_(Poly::constant(1, v)) {}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (!num_.is_constant() && !den_.is_constant() && num_.var() != den_.var()) {
    throw Error(ErrorKind::VariableMismatch, "numerator and denominator in different variables");
  }
  Var v = num_.is_constant() ? den_.var() : num_.var();
  num_ = num_.with_var(v);
  den_ = den_.with_var(v);
  normalize();
}

void RatFunc::normalize() {
  Var v = var();
  if (num_.is_zero()) {
    den_ = Poly::constant(1, v);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
  }
  if (!den_.leading().is_one()) {
    GaussianRational lc = den_.leading().inv();
    num_ = num_.scaled(lc);
    den_ = den_.scaled(lc);
  }
}

RatFunc RatFunc::derivative() const {
  if (is_polynomial()) return RatFunc(num_.derivative().with_var(var()));
  Poly dd = den_.derivative();
  Poly g = gcd(den_, dd);
  Poly d_over_g = exact_quotient(den_, g);
  Poly dd_over_g = exact_quotient(dd, g);
  Poly n = num_.derivative() * d_over_g - num_ * dd_over_g;
  return RatFunc(n.with_var(var()), den_ * d_over_g);
}

GaussianRational RatFunc::eval(const GaussianRational& at) const {
  GaussianRational d = den_.eval(at);
  if (d.is_zero()) throw Error(ErrorKind::PoleAtPoint, "pole of " + to_string() + " at " + at.to_string());
  GaussianRational n = num_.eval(at);
  if (d.is_one()) return n;
  return n / d;
}

RatFunc RatFunc::subst_neg() const {
  if (is_polynomial()) return RatFunc(num_.subst_neg());
  return RatFunc(num_.subst_neg(), den_.subst_neg());
}

RatFunc RatFunc::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return RatFunc(var());
  return RatFunc(Normalized{}, num_.scaled(c), den_);
}

RatFunc RatFunc::with_var(Var v) const { return RatFunc(Normalized{}, num_.with_var(v), den_.with_var(v)); }

std::vector<GaussianRational> RatFunc::taylor(const GaussianRational& at, int n) const {
  std::vector<GaussianRational> out(static_cast<std::size_t>(std::max(n + 1, 0)));
  if (n < 0) return out;
  Poly ns = num_.shifted(at);
  if (is_polynomial()) {
    for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = ns.coeff(k);
    return out;
  }
  Poly ds = den_.shifted(at);
  GaussianRational d0 = ds.coeff(0);
  if (d0.is_zero()) throw Error(ErrorKind::PoleAtPoint, "pole of " + to_string() + " at " + at.to_string());
  GaussianRational d0_inv = d0.inv();
  for (int k = 0; k <= n; ++k) {
    GaussianRational acc = ns.coeff(k);
    for (int j = 1; j <= std::min(k, ds.degree()); ++j) {
      acc -= ds.coeff(j) * out[static_cast<std::size_t>(k - j)];
    }
    out[static_cast<std::size_t>(k)] = acc * d0_inv;
  }
  return out;
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc RatFunc::operator-() const { return RatFunc(Normalized{}, -num_, den_); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    Var v = var();
    *this = o;
    if (o.num_.is_constant() && o.den_.is_constant()) *this = with_var(v);
    return *this;
  }
  if (is_polynomial() && o.is_polynomial()) {
    num_ += o.num_;
    den_ = Poly::constant(1, num_.var());
    return *this;
  }
  if (den_ == o.den_) {
    Poly n = num_ + o.num_;
    *this = RatFunc(n, den_);
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  if (g.degree() == 0) {
    Poly n = num_ * o.den_ + o.num_ * den_;
    Poly d = den_ * o.den_;
    Var v = d.var();
    num_ = n.with_var(v);
    den_ = d;
    if (num_.is_zero()) den_ = Poly::constant(1, v);
    return *this;
  }
  Poly d1 = exact_quotient(den_, g);
  Poly d2 = exact_quotient(o.den_, g);
  Poly t = num_ * d2 + o.num_ * d1;
  if (t.is_zero()) {
    *this = RatFunc(den_.var());
    return *this;
  }
  Poly g2 = gcd(t, g);
  Poly n = g2.degree() > 0 ? exact_quotient(t, g2) : t;
  Poly d = d1 * (g2.degree() > 0 ? exact_quotient(o.den_, g2) : o.den_);
  num_ = n.with_var(d.var());
  den_ = d;
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) {
    Var v = (num_.is_constant() && den_.is_constant()) ? o.var() : var();
    *this = RatFunc(v);
    return *this;
  }
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    den_ = Poly::constant(1, num_.var());
    return *this;
  }
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant_value());
    return *this;
  }
  if (is_constant()) {
    GaussianRational c = constant_value();
    *this = o.scaled(c);
    return *this;
  }
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly a = g1.degree() > 0 ? exact_quotient(num_, g1) : num_;
  Poly d = g1.degree() > 0 ? exact_quotient(o.den_, g1) : o.den_;
  Poly c = g2.degree() > 0 ? exact_quotient(o.num_, g2) : o.num_;
  Poly b = g2.degree() > 0 ? exact_quotient(den_, g2) : den_;
  Poly n = a * c;
  Poly dd = b * d;
  num_ = n.with_var(dd.is_constant() ? n.var() : dd.var());
  den_ = dd.with_var(num_.var());
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero rational function");
  return *this *= RatFunc(o.den_, o.num_);
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

}  // namespace bispectral
