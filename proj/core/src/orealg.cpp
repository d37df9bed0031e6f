#include "bispectral/orealg.hpp"

#include <algorithm>
#include <ostream>

#include "bispectral/error.hpp"

namespace bispectral {

namespace {

RatFunc zero_of(Var v) { return RatFunc(v); }

GaussianRational as_scalar(const mpz_class& z) { return GaussianRational(mpq_class(z)); }

// Single-monomial test for printing without parentheses.
bool is_monomial(const Poly& p) {
  int nonzero = 0;
  for (const auto& c : p.coeffs()) nonzero += c.is_zero() ? 0 : 1;
  return nonzero == 1;
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.degree() == 0) return b;
  if (b.degree() == 0) return a;
  Poly g = gcd(a, b);
  return exact_quotient(a, g) * b;
}

}  // namespace

OreOp::OreOp(Var v, std::vector<RatFunc> coeffs) : var_(v), c_(std::move(coeffs)) {
  for (auto& c : c_) {
    if (c.var() != v) {
      if (!c.num().is_constant() || !c.den().is_constant()) {
        throw Error(ErrorKind::VariableMismatch, "coefficient variable differs from operator variable");
      }
      c = c.with_var(v);
    }
  }
  trim();
}

OreOp OreOp::identity(Var v) { return scalar(1, v); }

OreOp OreOp::scalar(const GaussianRational& c, Var v) { return OreOp(v, {RatFunc(c, v)}); }

OreOp OreOp::function(const RatFunc& f) { return OreOp(f.var(), {f}); }

OreOp OreOp::derivation(Var v) { return OreOp(v, {zero_of(v), RatFunc(1, v)}); }

OreOp OreOp::term(const RatFunc& f, int j) {
  std::vector<RatFunc> c(static_cast<std::size_t>(j) + 1, zero_of(f.var()));
  c.back() = f;
  return OreOp(f.var(), std::move(c));
}

void OreOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void OreOp::check_var(const OreOp& o) const {
  if (o.var_ != var_ && !is_scalar() && !o.is_scalar()) {
    throw Error(ErrorKind::VariableMismatch, std::string("operators in ") + var_name(var_) + " and " +
                                                 var_name(o.var_));
  }
}

bool OreOp::has_polynomial_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatFunc& f) { return f.is_polynomial(); });
}

RatFunc OreOp::coeff(int j) const {
  if (j < 0 || j > order()) return zero_of(var_);
  return c_[static_cast<std::size_t>(j)];
}

OreOp OreOp::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return OreOp(var_);
  OreOp r = *this;
  for (auto& a : r.c_) a = a.scaled(c);
  return r;
}

OreOp OreOp::pow(unsigned n) const {
  OreOp result = identity(var_);
  for (unsigned k = 0; k < n; ++k) result = result * *this;
  return result;
}

OreOp OreOp::operator-() const { return scaled(GaussianRational(-1)); }

OreOp& OreOp::operator+=(const OreOp& o) {
  check_var(o);
  if (is_scalar() && !o.is_scalar()) {
    Var v = o.var_;
    for (auto& c : c_) c = c.with_var(v);
    var_ = v;
  }
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_of(var_));
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j].with_var(var_);
  trim();
  return *this;
}

OreOp& OreOp::operator-=(const OreOp& o) { return *this += -o; }

OreOp operator*(const OreOp& a, const OreOp& b) {
  a.check_var(b);
  Var v = a.is_scalar() ? b.var_ : a.var_;
  if (a.is_zero() || b.is_zero()) return OreOp(v);
  const int na = a.order();
  const int nb = b.order();
  std::vector<RatFunc> out(static_cast<std::size_t>(na + nb) + 1, zero_of(v));
  for (int j = 0; j <= nb; ++j) {
    const RatFunc& bj = b.c_[static_cast<std::size_t>(j)];
    if (bj.is_zero()) continue;
    // Derivatives b_j^(k) for k = 0..na.
    std::vector<RatFunc> deriv{bj.with_var(v)};
    for (int k = 1; k <= na; ++k) {
      if (deriv.back().is_zero()) break;
      deriv.push_back(deriv.back().derivative());
    }
    for (int i = 0; i <= na; ++i) {
      const RatFunc& ai = a.c_[static_cast<std::size_t>(i)];
      if (ai.is_zero()) continue;
      for (int k = 0; k <= i && k < static_cast<int>(deriv.size()); ++k) {
        if (deriv[static_cast<std::size_t>(k)].is_zero()) break;
        RatFunc t = ai.with_var(v) * deriv[static_cast<std::size_t>(k)];
        if (k > 0) t = t.scaled(as_scalar(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(k))));
        out[static_cast<std::size_t>(i - k + j)] += t;
      }
    }
  }
  return OreOp(v, std::move(out));
}

bool operator==(const OreOp& a, const OreOp& b) {
  if (a.c_.size() != b.c_.size()) return false;
  if (a.var_ != b.var_ && !(a.is_scalar() && b.is_scalar())) return false;
  for (std::size_t j = 0; j < a.c_.size(); ++j) {
    if (a.c_[j].num().coeffs() != b.c_[j].num().coeffs() || a.c_[j].den().coeffs() != b.c_[j].den().coeffs()) {
      return false;
    }
  }
  return true;
}

std::string to_string(const OreOp& d) {
  if (d.is_zero()) return "0";
  const std::string dname = derivation_name(d.var());
  std::string out;
  bool first = true;
  auto append = [&](const std::string& term, bool negative) {
    if (first) {
      out = (negative ? "-" : "") + term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  };
  for (int j = d.order(); j >= 0; --j) {
    const RatFunc& c = d.coeffs()[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    std::string dpart = j == 0 ? "" : (j == 1 ? dname : dname + "^" + std::to_string(j));
    if (!c.is_polynomial()) {
      std::string t = c.to_string();
      append(dpart.empty() ? t : t + "*" + dpart, false);
      continue;
    }
    const Poly& p = c.num();
    if (j == 0 || is_monomial(p)) {
      // Emit each monomial as its own summand.
      std::string text = p.to_string();
      if (!dpart.empty()) {
        bool neg = text[0] == '-';
        std::string mag = neg ? text.substr(1) : text;
        if (mag == "1") {
          mag = dpart;
        } else {
          mag += "*" + dpart;
        }
        append(mag, neg);
        continue;
      }
      // Split "a - b + c" at the top-level separators produced by Poly::to_string.
      std::size_t pos = 0;
      bool neg = false;
      if (text[0] == '-') {
        neg = true;
        pos = 1;
      }
      while (true) {
        std::size_t plus = text.find(" + ", pos);
        std::size_t minus = text.find(" - ", pos);
        std::size_t cut = std::min(plus, minus);
        append(text.substr(pos, cut - pos), neg);
        if (cut == std::string::npos) break;
        neg = (cut == minus);
        pos = cut + 3;
      }
      continue;
    }
    append("(" + p.to_string() + ")*" + dpart, false);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const OreOp& d) { return os << to_string(d); }

OreOp adjoint(const OreOp& d) {
  Var v = d.var();
  if (d.is_zero()) return d;
  std::vector<RatFunc> out(static_cast<std::size_t>(d.order()) + 1, zero_of(v));
  for (int j = 0; j <= d.order(); ++j) {
    RatFunc deriv = d.coeffs()[static_cast<std::size_t>(j)];
    if (deriv.is_zero()) continue;
    for (int k = 0; k <= j; ++k) {
      if (k > 0) deriv = deriv.derivative();
      if (deriv.is_zero()) break;
      mpz_class c = binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(k));
      if (j % 2 == 1) c = -c;
      out[static_cast<std::size_t>(j - k)] += deriv.scaled(as_scalar(c));
    }
  }
  return OreOp(v, std::move(out));
}

bool is_formally_symmetric(const OreOp& d) { return adjoint(d) == d; }

OreOp sigma(const OreOp& d) {
  std::vector<RatFunc> out;
  out.reserve(d.coeffs().size());
  for (int j = 0; j <= d.order(); ++j) {
    RatFunc c = d.coeffs()[static_cast<std::size_t>(j)].subst_neg();
    out.push_back(j % 2 == 1 ? -c : c);
  }
  return OreOp(d.var(), std::move(out));
}

RatFunc apply(const OreOp& d, const RatFunc& f) {
  Var v = d.is_scalar() ? f.var() : d.var();
  RatFunc acc(v);
  RatFunc deriv = f.with_var(v);
  for (int j = 0; j <= d.order(); ++j) {
    if (j > 0) deriv = deriv.derivative();
    if (deriv.is_zero()) break;
    const RatFunc& a = d.coeffs()[static_cast<std::size_t>(j)];
    if (a.is_zero()) continue;
    acc += a.with_var(v) * deriv;
  }
  return acc;
}

namespace {

// D^n a D^n = sum_k C(n,k) a^(k) D^(2n-k)
OreOp symmetric_word(const RatFunc& a, int n, Var v) {
  std::vector<RatFunc> out(static_cast<std::size_t>(2 * n) + 1, zero_of(v));
  RatFunc deriv = a.with_var(v);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) deriv = deriv.derivative();
    if (deriv.is_zero()) break;
    out[static_cast<std::size_t>(2 * n - k)] =
        deriv.scaled(as_scalar(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k))));
  }
  return OreOp(v, std::move(out));
}

}  // namespace

std::vector<RatFunc> symmetric_decompose(const OreOp& d) {
  if (d.is_zero()) return {};
  if (d.order() % 2 != 0) throw Error(ErrorKind::NotFormallySymmetric, "odd order " + std::to_string(d.order()));
  if (!is_formally_symmetric(d)) throw Error(ErrorKind::NotFormallySymmetric, to_string(d));
  Var v = d.var();
  std::vector<RatFunc> a(static_cast<std::size_t>(d.order() / 2) + 1, zero_of(v));
  OreOp rest = d;
  while (!rest.is_zero()) {
    if (rest.order() % 2 != 0) throw Error(ErrorKind::NotFormallySymmetric, "odd-order remainder");
    int n = rest.order() / 2;
    a[static_cast<std::size_t>(n)] = rest.leading();
    rest -= symmetric_word(rest.leading(), n, v);
  }
  return a;
}

OreOp symmetric_compose(const std::vector<RatFunc>& a, Var v) {
  OreOp out(v);
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (!a[n].is_zero()) out += symmetric_word(a[n], static_cast<int>(n), v);
  }
  return out;
}

BaseRewrite rewrite_in_base(const OreOp& d, const OreOp& base) {
  if (base.order() < 1 || !base.leading().is_constant()) {
    throw Error(ErrorKind::InvalidArgument, "base operator must have positive order and constant leading coefficient");
  }
  const int r = base.order();
  const GaussianRational base_lc = base.leading().constant_value();
  Var v = base.var();
  std::vector<OreOp> powers{OreOp::identity(v)};
  std::vector<GaussianRational> f;
  OreOp rest = d;
  while (!rest.is_zero()) {
    int ord = rest.order();
    if (ord % r != 0) {
      throw Error(ErrorKind::NotInBaseAlgebra, "order " + std::to_string(ord) + " is not a multiple of " + std::to_string(r));
    }
    if (!rest.leading().is_constant()) {
      throw Error(ErrorKind::NotInBaseAlgebra, "nonconstant quotient " + rest.leading().to_string());
    }
    auto k = static_cast<std::size_t>(ord / r);
    while (powers.size() <= k) powers.push_back(powers.back() * base);
    GaussianRational lc_pow(1);
    for (std::size_t i = 0; i < k; ++i) lc_pow *= base_lc;
    GaussianRational c = rest.leading().constant_value() / lc_pow;
    if (f.size() <= k) f.resize(k + 1);
    f[k] = c;
    rest -= powers[k].scaled(c);
    if (!rest.is_zero() && rest.order() >= ord) {
      throw Error(ErrorKind::NotInBaseAlgebra, "leading term did not cancel");
    }
  }
  Poly fp(Var::x, f);
  if (fp.is_zero()) return {fp, GaussianRational(1)};
  GaussianRational unit = fp.leading();
  return {fp.monic(), unit};
}

OreOp right_divide(const OreOp& d, const Poly& r) {
  if (r.is_zero()) throw Error(ErrorKind::DivisionByZero, "right division by zero polynomial");
  Var v = d.var();
  if (d.is_zero()) return d;
  Poly rv = r.with_var(v);
  if (rv.degree() == 0) return d.scaled(rv.coeff(0).inv());
  const int n = d.order();
  // (1/r)^(k) = N_k / r^(k+1)
  std::vector<Poly> nk{Poly::constant(1, v)};
  Poly rp = rv.derivative();
  for (int k = 0; k < n; ++k) {
    const Poly& cur = nk.back();
    nk.push_back(cur.derivative() * rv - cur * rp.scaled(GaussianRational(k + 1)));
  }
  std::vector<Poly> rpow{Poly::constant(1, v)};
  for (int k = 0; k <= n + 1; ++k) rpow.push_back(rpow.back() * rv);
  std::vector<RatFunc> out(static_cast<std::size_t>(n) + 1, zero_of(v));
  for (int m = 0; m <= n; ++m) {
    Poly common = Poly::constant(1, v);
    for (int i = m; i <= n; ++i) common = lcm(common, d.coeffs()[static_cast<std::size_t>(i)].den());
    const int kmax = n - m;
    Poly sum(v);
    for (int i = m; i <= n; ++i) {
      const RatFunc& ai = d.coeffs()[static_cast<std::size_t>(i)];
      if (ai.is_zero()) continue;
      int k = i - m;
      Poly scale = ai.den().degree() == 0 ? common : exact_quotient(common, ai.den());
      Poly t = ai.num() * scale * nk[static_cast<std::size_t>(k)] * rpow[static_cast<std::size_t>(kmax - k)];
      if (k > 0) t = t.scaled(as_scalar(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(k))));
      sum += t;
    }
    if (sum.is_zero()) continue;
    out[static_cast<std::size_t>(m)] = RatFunc(sum, common * rpow[static_cast<std::size_t>(kmax + 1)]);
  }
  return OreOp(v, std::move(out));
}

OreOp left_divide(const Poly& r, const OreOp& d) {
  if (r.is_zero()) throw Error(ErrorKind::DivisionByZero, "left division by zero polynomial");
  Var v = d.var();
  Poly rv = r.with_var(v);
  if (rv.degree() == 0) return d.scaled(rv.coeff(0).inv());
  std::vector<RatFunc> out;
  out.reserve(d.coeffs().size());
  for (const auto& c : d.coeffs()) {
    out.push_back(c.is_zero() ? c : RatFunc(c.num(), c.den() * rv));
  }
  return OreOp(v, std::move(out));
}

std::pair<OreOp, OreOp> right_divrem(const OreOp& d, const OreOp& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "operator division by zero");
  Var v = b.var();
  OreOp q(v);
  OreOp rest = d;
  while (!rest.is_zero() && rest.order() >= b.order()) {
    int s = rest.order() - b.order();
    OreOp t = OreOp::term(rest.leading() / b.leading(), s);
    q += t;
    rest -= t * b;
  }
  return {q, rest};
}

}  // namespace bispectral
