#include "bispectral/grassmannian.hpp"

#include <algorithm>

#include "bispectral/context.hpp"
#include "bispectral/error.hpp"

namespace bispectral {

QuasiExp QuasiExp::term(const Poly& p, const GaussianRational& c) {
  QuasiExp q;
  q.add_term(c, p.with_var(Var::x));
  return q;
}

void QuasiExp::add_term(const GaussianRational& c, const Poly& p) {
  if (p.is_zero()) return;
  auto it = terms_.find(c);
  if (it == terms_.end()) {
    terms_.emplace(c, p.with_var(Var::x));
    return;
  }
  it->second += p.with_var(Var::x);
  if (it->second.is_zero()) terms_.erase(it);
}

bool QuasiExp::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.is_zero() && terms_.begin()->second.is_constant();
}

QuasiExp QuasiExp::derivative() const {
  QuasiExp out;
  for (const auto& [c, p] : terms_) out.add_term(c, p.derivative() + p.scaled(c));
  return out;
}

GaussianRational QuasiExp::eval_at(const GaussianRational& x0) const {
  GaussianRational acc(0);
  for (const auto& [c, p] : terms_) {
    if (!(c * x0).is_zero()) {
      throw Error(ErrorKind::NonRationalValue, "e^(" + c.to_string() + "*x) at x = " + x0.to_string() + " is not rational");
    }
    acc += p.eval(x0);
  }
  return acc;
}

QuasiExp QuasiExp::sigma() const {
  QuasiExp out;
  for (const auto& [c, p] : terms_) out.add_term(-c, p.subst_neg());
  return out;
}

QuasiExp QuasiExp::scaled(const GaussianRational& a) const {
  QuasiExp out;
  if (a.is_zero()) return out;
  for (const auto& [c, p] : terms_) out.add_term(c, p.scaled(a));
  return out;
}

std::string QuasiExp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [c, p] : terms_) {
    if (!out.empty()) out += " + ";
    if (c.is_zero()) {
      out += p.is_constant() ? p.to_string() : "(" + p.to_string() + ")";
    } else {
      out += "(" + p.to_string() + ")*exp((" + c.to_string() + ")*x)";
    }
  }
  return out;
}

QuasiExp& QuasiExp::operator+=(const QuasiExp& o) {
  for (const auto& [c, p] : o.terms_) add_term(c, p);
  return *this;
}

QuasiExp& QuasiExp::operator-=(const QuasiExp& o) {
  for (const auto& [c, p] : o.terms_) add_term(c, -p);
  return *this;
}

QuasiExp operator*(const QuasiExp& a, const QuasiExp& b) {
  QuasiExp out;
  for (const auto& [ca, pa] : a.terms_) {
    for (const auto& [cb, pb] : b.terms_) out.add_term(ca + cb, pa * pb);
  }
  return out;
}

QuasiExp apply_cleared(const OreOp& d, const QuasiExp& f) {
  if (d.var() != Var::x) throw Error(ErrorKind::VariableMismatch, "quasi-exponentials are functions of x");
  Poly den = Poly::constant(1, Var::x);
  for (const auto& a : d.coeffs()) {
    if (!a.is_polynomial()) den = den * exact_quotient(a.den(), gcd(den, a.den()));
  }
  QuasiExp out;
  QuasiExp fd = f;
  for (int j = 0; j <= d.order(); ++j) {
    const RatFunc& a = d.coeffs()[static_cast<std::size_t>(j)];
    if (!a.is_zero()) {
      Poly n = a.num() * exact_quotient(den, a.den());
      out += QuasiExp::polynomial(n) * fd;
    }
    fd = fd.derivative();
  }
  return out;
}

bool annihilates(const OreOp& d, const QuasiExp& f) { return apply_cleared(d, f).is_zero(); }

QuasiExp functional_to_kernel(const ConditionFunctional& chi) {
  std::vector<GaussianRational> c = chi.coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.empty()) throw Error(ErrorKind::InvalidArgument, "condition at " + chi.point.to_string() + " has no nonzero coefficient");
  return QuasiExp::term(Poly(Var::x, c), chi.point);
}

Poly exponent_polynomial(const ExponentMultiset& e) {
  Poly f = Poly::constant(1, Var::x);
  for (const auto& [c, m] : e) {
    Poly lin(Var::x, {-c, GaussianRational(1)});
    for (int i = 0; i < m; ++i) f = f * lin;
  }
  return f;
}

OreOp constant_operator(const ExponentMultiset& e) {
  Poly f = exponent_polynomial(e);
  std::vector<RatFunc> cs;
  for (const auto& c : f.coeffs()) cs.emplace_back(c, Var::x);
  return OreOp(Var::x, std::move(cs));
}

AdelicPlane make_plane(const std::vector<ConditionFunctional>& conditions, const std::optional<ExponentMultiset>& ambient) {
  AdelicPlane plane;
  plane.conditions = conditions;
  std::map<GaussianRational, int> count;
  for (const auto& chi : conditions) {
    plane.V.push_back(functional_to_kernel(chi));
    ++count[chi.point];
  }
  plane.q = Poly::constant(1, Var::y);
  for (const auto& [c, n] : count) {
    Poly lin(Var::y, {-c, GaussianRational(1)});
    for (int i = 0; i < n; ++i) plane.q = plane.q * lin;
    plane.ambient[c] = 2 * n;
  }
  if (ambient) plane.ambient = *ambient;
  return plane;
}

namespace {

// C_d(f, g) for constant-coefficient d, as a quasi-exponential.
QuasiExp pairing_symbolic(const Poly& coeffs, const QuasiExp& f, const QuasiExp& g) {
  const int m = coeffs.degree();
  QuasiExp acc;
  if (m < 1) return acc;
  std::vector<QuasiExp> fd{f};
  std::vector<QuasiExp> gd{g};
  for (int i = 1; i < m; ++i) {
    fd.push_back(fd.back().derivative());
    gd.push_back(gd.back().derivative());
  }
  for (int j = 1; j <= m; ++j) {
    const GaussianRational& dj = coeffs.coeffs()[static_cast<std::size_t>(j)];
    if (dj.is_zero()) continue;
    for (int k = 0; k < j; ++k) {
      QuasiExp term = (fd[static_cast<std::size_t>(j - 1 - k)] * gd[static_cast<std::size_t>(k)]).scaled(dj);
      if (k % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
  }
  return acc;
}

Matrix coordinates(const std::vector<QuasiExp>& fs) {
  std::map<std::pair<GaussianRational, int>, std::size_t> index;
  for (const auto& f : fs) {
    for (const auto& [c, p] : f.terms()) {
      for (int e = 0; e <= p.degree(); ++e) {
        if (!p.coeff(e).is_zero()) index.emplace(std::make_pair(c, e), 0);
      }
    }
  }
  std::size_t r = 0;
  for (auto& kv : index) kv.second = r++;
  Matrix m(index.size(), Vector(fs.size()));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (const auto& [c, p] : fs[i].terms()) {
      for (int e = 0; e <= p.degree(); ++e) {
        if (!p.coeff(e).is_zero()) m[index.at({c, e})][i] = p.coeff(e);
      }
    }
  }
  return m;
}

QuasiExp determinant(const std::vector<std::vector<QuasiExp>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return QuasiExp::polynomial(Poly::constant(1));
  if (n == 1) return a[0][0];
  QuasiExp acc;
  for (std::size_t r = 0; r < n; ++r) {
    if (a[r][0].is_zero()) continue;
    std::vector<std::vector<QuasiExp>> minor;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      minor.emplace_back(a[i].begin() + 1, a[i].end());
    }
    QuasiExp term = a[r][0] * determinant(minor);
    if (r % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

bool in_kernel(const ExponentMultiset& e, const std::vector<QuasiExp>& V) {
  OreOp d = constant_operator(e);
  return std::all_of(V.begin(), V.end(), [&](const QuasiExp& f) { return annihilates(d, f); });
}

}  // namespace

Matrix concomitant_pairing(const ExponentMultiset& e, const std::vector<QuasiExp>& V) {
  OreOp d = constant_operator(e);
  for (std::size_t i = 0; i < V.size(); ++i) {
    if (!annihilates(d, V[i])) {
      throw Error(ErrorKind::NotInKernel, V[i].to_string() + " is not in the kernel of " + to_string(d));
    }
  }
  Poly f = exponent_polynomial(e);
  Matrix m(V.size(), Vector(V.size()));
  for (std::size_t i = 0; i < V.size(); ++i) {
    for (std::size_t j = 0; j < V.size(); ++j) {
      QuasiExp c = pairing_symbolic(f, V[i], V[j]);
      if (!c.is_constant()) {
        throw Error(ErrorKind::InvalidArgument, "concomitant " + c.to_string() + " is not constant on the kernel");
      }
      GaussianRational at0 = c.eval_at(0);
      if (at0 != c.eval_at(1)) throw Error(ErrorKind::InvalidArgument, "concomitant differs between sample points");
      m[i][j] = at0;
    }
  }
  return m;
}

bool is_lagrangian(const AdelicPlane& plane) {
  OreOp d = constant_operator(plane.ambient);
  if (!is_formally_symmetric(d)) {
    throw Error(ErrorKind::NotFormallySymmetric, "ambient operator " + to_string(d) + " is not formally symmetric");
  }
  if (2 * static_cast<int>(plane.V.size()) != d.order()) return false;
  if (!in_kernel(plane.ambient, plane.V)) return false;
  if (rank(coordinates(plane.V), static_cast<int>(plane.V.size())) != static_cast<int>(plane.V.size())) return false;
  Matrix m = concomitant_pairing(plane.ambient, plane.V);
  for (const auto& row : m) {
    for (const auto& v : row) {
      if (!v.is_zero()) return false;
    }
  }
  return true;
}

bool is_sigma_stable(const std::vector<QuasiExp>& V) {
  std::vector<QuasiExp> all = V;
  for (const auto& f : V) all.push_back(f.sigma());
  return rank(coordinates(V), static_cast<int>(V.size())) == rank(coordinates(all), static_cast<int>(all.size()));
}

bool is_sigma_stable(const AdelicPlane& plane) { return is_sigma_stable(plane.V); }

Annihilator annihilator(const std::vector<QuasiExp>& V) {
  const std::size_t n = V.size();
  // rows: derivative order 0..n; columns: V
  std::vector<std::vector<QuasiExp>> w(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    QuasiExp f = V[i];
    for (std::size_t r = 0; r <= n; ++r) {
      w[r].push_back(f);
      f = f.derivative();
    }
  }
  std::vector<QuasiExp> minors;
  for (std::size_t r = 0; r <= n; ++r) {
    std::vector<std::vector<QuasiExp>> m;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i != r) m.push_back(w[i]);
    }
    minors.push_back(determinant(m));
  }
  const QuasiExp& wr = minors[n];
  if (wr.is_zero()) throw Error(ErrorKind::DependentKernel, "the Wronskian of V vanishes identically");
  if (wr.terms().size() != 1) {
    throw Error(ErrorKind::NonRationalValue, "the Wronskian " + wr.to_string() + " is not a single exponential term");
  }
  const auto& [c0, pn] = *wr.terms().begin();
  std::vector<RatFunc> coeffs;
  for (std::size_t r = 0; r <= n; ++r) {
    const QuasiExp& mr = minors[r];
    if (mr.is_zero()) {
      coeffs.emplace_back(Var::x);
      continue;
    }
    if (mr.terms().size() != 1 || mr.terms().begin()->first != c0) {
      throw Error(ErrorKind::NonRationalValue, "Wronskian minors do not share an exponential factor");
    }
    RatFunc a(mr.terms().begin()->second, pn);
    coeffs.push_back((r + n) % 2 == 0 ? a : -a);
  }
  Annihilator out;
  out.monic = OreOp(Var::x, coeffs);
  out.p = Poly::constant(1, Var::x);
  for (const auto& a : coeffs) {
    if (!a.is_polynomial()) out.p = out.p * exact_quotient(a.den(), gcd(out.p, a.den()));
  }
  out.u = OreOp::function(RatFunc(out.p)) * out.monic;
  return out;
}

bool factorization_check(const std::vector<QuasiExp>& V, const ExponentMultiset& e) {
  Annihilator a = annihilator(V);
  try {
    BaseRewrite rw = rewrite_in_base(adjoint(a.monic) * a.monic, OreOp::derivation(Var::x));
    return rw.f == exponent_polynomial(e).with_var(rw.f.var());
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NotInBaseAlgebra) return false;
    throw;
  }
}

DarbouxTransform to_darboux(const AdelicPlane& plane) {
  if (!is_sigma_stable(plane)) throw Error(ErrorKind::NotSigmaStable, "span V is not preserved by x -> -x");
  if (!is_lagrangian(plane)) throw Error(ErrorKind::NotLagrangian, "V is not a Lagrangian subspace of the ambient kernel");
  Annihilator a = annihilator(plane.V);
  if (!factorization_check(plane.V, plane.ambient)) {
    throw Error(ErrorKind::FactorizationFails, "((1/p)u)*((1/p)u) is not a multiple of the ambient operator");
  }
  Context ctx = Context::exp();
  GenExpr u = fourier(ctx, tree_from_operator(ctx, a.u));
  return build_transform(ctx, u, a.p, plane.q);
}

}  // namespace bispectral
