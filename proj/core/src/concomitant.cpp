#include "bispectral/concomitant.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "bispectral/error.hpp"

namespace bispectral {

namespace {

RatFunc on_var(const RatFunc& f, Var v) { return f.var() == v ? f : f.with_var(v); }

void check_pole(const RatFunc& f, const GaussianRational& p, const std::string& what) {
  if (!f.is_polynomial() && f.den().eval(p).is_zero()) {
    throw Error(ErrorKind::EndpointAtPole, what + " has a pole at " + p.to_string());
  }
}

GaussianRational power(const GaussianRational& p, int n) {
  GaussianRational r(1);
  for (int i = 0; i < n; ++i) r *= p;
  return r;
}

// F[j][a] = (x^j)^(a)(p) for 0 <= j, a <= n.
Matrix jet_matrix(const GaussianRational& p, int n) {
  std::vector<GaussianRational> pw(static_cast<std::size_t>(n + 1));
  for (int e = 0; e <= n; ++e) pw[static_cast<std::size_t>(e)] = power(p, e);
  Matrix f(static_cast<std::size_t>(n + 1), Vector(static_cast<std::size_t>(n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int a = 0; a <= j; ++a) {
      f[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] =
          GaussianRational(mpq_class(falling_factorial(static_cast<unsigned long>(j), static_cast<unsigned long>(a)))) *
          pw[static_cast<std::size_t>(j - a)];
    }
  }
  return f;
}

// F B F^T restricted to 0 <= j, k <= n.
Matrix jet_pairs(const Matrix& b, const Matrix& f, int n) {
  const std::size_t m = b.size();
  Matrix out(static_cast<std::size_t>(n + 1), Vector(static_cast<std::size_t>(n + 1)));
  if (m == 0) return out;
  // t = F B
  Matrix t(static_cast<std::size_t>(n + 1), Vector(m));
  for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
    for (std::size_t a = 0; a < std::min(m, j + 1); ++a) {
      const auto& fa = f[j][a];
      if (fa.is_zero()) continue;
      for (std::size_t l = 0; l < m; ++l) {
        if (!b[a][l].is_zero()) t[j][l] += fa * b[a][l];
      }
    }
  }
  for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
      GaussianRational acc(0);
      for (std::size_t l = 0; l < std::min(m, k + 1); ++l) {
        if (!t[j][l].is_zero() && !f[k][l].is_zero()) acc += t[j][l] * f[k][l];
      }
      out[j][k] = acc;
    }
  }
  return out;
}

Matrix form_for(const OreOp& d, const GaussianRational& p, const Provenance& prov, char side) {
  try {
    return concomitant_form(d, p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EndpointAtPole && e.kind() != ErrorKind::PoleAtPoint) throw;
    throw Error(ErrorKind::EndpointAtPole, std::string(1, side) + "-side of candidate " + prov.label() +
                                               " has a pole at the endpoint " + p.to_string());
  }
}

int max_order(const std::vector<CandidatePair>& cands, bool x_side) {
  int n = 0;
  for (const auto& c : cands) n = std::max(n, x_side ? c.x_op.order() : c.y_op.order());
  return n;
}

}  // namespace

RatFunc concomitant_symbolic(const OreOp& d, const RatFunc& f0, const RatFunc& g0) {
  const Var v = d.var();
  RatFunc f = on_var(f0, v);
  RatFunc g = on_var(g0, v);
  const int m = d.order();
  RatFunc acc(v);
  if (m < 1) return acc;
  std::vector<RatFunc> fd{f};
  for (int i = 1; i < m; ++i) fd.push_back(fd.back().derivative());
  for (int j = 1; j <= m; ++j) {
    RatFunc h = d.coeff(j) * g;
    if (h.is_zero()) continue;
    for (int k = 0; k < j; ++k) {
      RatFunc term = fd[static_cast<std::size_t>(j - 1 - k)] * h;
      if (k % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
      if (k + 1 < j) h = h.derivative();
    }
  }
  return acc;
}

GaussianRational concomitant(const OreOp& d, const RatFunc& f0, const RatFunc& g0, const GaussianRational& p) {
  const Var v = d.var();
  RatFunc f = on_var(f0, v);
  RatFunc g = on_var(g0, v);
  for (int j = 0; j <= d.order(); ++j) check_pole(d.coeff(j), p, "coefficient " + std::to_string(j));
  check_pole(f, p, "f");
  check_pole(g, p, "g");
  const int m = d.order();
  GaussianRational acc(0);
  if (m < 1) return acc;
  std::vector<GaussianRational> fv;
  RatFunc fd = f;
  for (int i = 0; i < m; ++i) {
    fv.push_back(fd.eval(p));
    fd = fd.derivative();
  }
  for (int j = 1; j <= m; ++j) {
    RatFunc h = d.coeff(j) * g;
    if (h.is_zero()) continue;
    for (int k = 0; k < j; ++k) {
      GaussianRational term = fv[static_cast<std::size_t>(j - 1 - k)] * h.eval(p);
      if (k % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
      if (k + 1 < j) h = h.derivative();
    }
  }
  return acc;
}

GaussianRational concomitant(const OreOp& d, const Poly& f, const Poly& g, const GaussianRational& p) {
  return concomitant(d, RatFunc(f), RatFunc(g), p);
}

bool concomitant_derivative_identity_check(const OreOp& d, const Poly& f, const Poly& g) {
  const Var v = d.var();
  RatFunc fr = on_var(RatFunc(f), v);
  RatFunc gr = on_var(RatFunc(g), v);
  RatFunc lhs = concomitant_symbolic(d, fr, gr).derivative();
  RatFunc rhs = apply(d, fr) * gr - fr * apply(adjoint(d), gr);
  return lhs == rhs;
}

bool concomitant_decomposition_check(const OreOp& a, const OreOp& b, const Poly& f, const Poly& g,
                                     const GaussianRational& p) {
  const Var v = a.var();
  RatFunc fr = on_var(RatFunc(f), v);
  RatFunc gr = on_var(RatFunc(g), v);
  GaussianRational lhs = concomitant(a * b, fr, gr, p);
  GaussianRational rhs = concomitant(a, apply(b, fr), gr, p) + concomitant(b, fr, apply(adjoint(a), gr), p);
  return lhs == rhs;
}

Matrix concomitant_form(const OreOp& d, const GaussianRational& p) {
  const int m = std::max(d.order(), 0);
  Matrix b(static_cast<std::size_t>(m), Vector(static_cast<std::size_t>(m)));
  for (int j = 1; j <= m; ++j) {
    const RatFunc& dj = d.coeffs()[static_cast<std::size_t>(j)];
    if (dj.is_zero()) continue;
    check_pole(dj, p, "coefficient " + std::to_string(j));
    std::vector<GaussianRational> t = dj.taylor(p, j - 1);
    for (int k = 0; k < j; ++k) {
      for (int l = 0; l <= k; ++l) {
        const GaussianRational& tk = t[static_cast<std::size_t>(k - l)];
        if (tk.is_zero()) continue;
        GaussianRational c =
            tk * GaussianRational(mpq_class(falling_factorial(static_cast<unsigned long>(k), static_cast<unsigned long>(k - l))));
        auto& cell = b[static_cast<std::size_t>(j - 1 - k)][static_cast<std::size_t>(l)];
        if (k % 2 == 0) {
          cell += c;
        } else {
          cell -= c;
        }
      }
    }
  }
  return b;
}

const char* endpoint_mode_name(EndpointMode m) {
  return m == EndpointMode::symmetric_pair ? "sym" : "inf";
}

EndpointMode parse_endpoint_mode(const std::string& s) {
  if (s == "sym") return EndpointMode::symmetric_pair;
  if (s == "inf") return EndpointMode::finite_plus_infinity;
  throw Error(ErrorKind::InvalidArgument, "endpoint mode must be 'sym' or 'inf', got '" + s + "'");
}

Matrix assemble_system(const std::vector<CandidatePair>& cands, const EndpointSpec& ep) {
  const int nx = max_order(cands, true);
  const int ny = max_order(cands, false);
  const Matrix fx = jet_matrix(ep.x_point, nx);
  const Matrix fy = jet_matrix(ep.y_point, ny);
  const std::size_t rows = static_cast<std::size_t>((nx + 1) * (nx + 1) + (ny + 1) * (ny + 1));
  Matrix a(rows, Vector(cands.size()));
  for (std::size_t c = 0; c < cands.size(); ++c) {
    Matrix cx = jet_pairs(form_for(cands[c].x_op, ep.x_point, cands[c].provenance, 'x'), fx, nx);
    Matrix cy = jet_pairs(form_for(cands[c].y_op, ep.y_point, cands[c].provenance, 'y'), fy, ny);
    std::size_t r = 0;
    for (const auto& row : cx) {
      for (const auto& v : row) a[r++][c] = v;
    }
    for (const auto& row : cy) {
      for (const auto& v : row) a[r++][c] = v;
    }
  }
  return a;
}

Matrix assemble_reduced_system(const std::vector<CandidatePair>& cands, const EndpointSpec& ep) {
  const int nx = max_order(cands, true);
  const int ny = max_order(cands, false);
  auto count = [](int n) { return static_cast<std::size_t>(n * (n + 1) / 2); };
  Matrix a(count(nx) + count(ny), Vector(cands.size()));
  for (std::size_t c = 0; c < cands.size(); ++c) {
    std::size_t r = 0;
    auto place = [&](const Matrix& b, int n) {
      for (int s = 0; s < n; ++s) {
        for (int i = 0; i <= s; ++i) {
          auto ai = static_cast<std::size_t>(i);
          auto li = static_cast<std::size_t>(s - i);
          if (ai < b.size() && li < b.size()) a[r][c] = b[ai][li];
          ++r;
        }
      }
    };
    place(form_for(cands[c].x_op, ep.x_point, cands[c].provenance, 'x'), nx);
    place(form_for(cands[c].y_op, ep.y_point, cands[c].provenance, 'y'), ny);
  }
  return a;
}

OperatorCoordinates coordinatize(const std::vector<OreOp>& ops) {
  OperatorCoordinates c;
  Var v = ops.empty() ? Var::x : ops.front().var();
  c.den = Poly::constant(1, v);
  for (const auto& op : ops) {
    for (const auto& a : op.coeffs()) {
      if (a.is_polynomial()) continue;
      Poly g = gcd(c.den, a.den());
      c.den = c.den * exact_quotient(a.den(), g);
    }
  }
  std::map<std::pair<int, int>, std::size_t> index;
  for (const auto& op : ops) {
    std::vector<Poly> row;
    for (const auto& a : op.coeffs()) {
      Poly n = a.is_polynomial() ? a.num().scaled(a.den().coeff(0).inv()) * c.den
                                 : a.num() * exact_quotient(c.den, a.den());
      row.push_back(n.with_var(v));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      for (int e = 0; e <= row[j].degree(); ++e) {
        if (!row[j].coeff(e).is_zero()) index.emplace(std::make_pair(static_cast<int>(j), e), 0);
      }
    }
    c.num.push_back(std::move(row));
  }
  std::size_t r = 0;
  for (auto& kv : index) kv.second = r++;
  c.matrix.assign(index.size(), Vector(ops.size()));
  for (std::size_t i = 0; i < c.num.size(); ++i) {
    for (std::size_t j = 0; j < c.num[i].size(); ++j) {
      const Poly& p = c.num[i][j];
      for (int e = 0; e <= p.degree(); ++e) {
        if (p.coeff(e).is_zero()) continue;
        c.matrix[index.at({static_cast<int>(j), e})][i] = p.coeff(e);
      }
    }
  }
  return c;
}

OreOp combine(const OperatorCoordinates& c, const Vector& coeffs, Var v) {
  std::size_t order = 0;
  for (std::size_t i = 0; i < c.num.size(); ++i) {
    if (!coeffs[i].is_zero()) order = std::max(order, c.num[i].size());
  }
  std::vector<RatFunc> out;
  for (std::size_t j = 0; j < order; ++j) {
    std::vector<GaussianRational> acc;
    for (std::size_t i = 0; i < c.num.size(); ++i) {
      if (coeffs[i].is_zero() || j >= c.num[i].size()) continue;
      const auto& p = c.num[i][j].coeffs();
      if (acc.size() < p.size()) acc.resize(p.size());
      for (std::size_t e = 0; e < p.size(); ++e) {
        if (!p[e].is_zero()) acc[e] += coeffs[i] * p[e];
      }
    }
    out.emplace_back(Poly(v, std::move(acc)), c.den.with_var(v));
  }
  return OreOp(v, std::move(out));
}

bool span_contains(const std::vector<OreOp>& ops, const OreOp& target) {
  std::vector<OreOp> all = ops;
  all.push_back(target);
  OperatorCoordinates c = coordinatize(all);
  Matrix without = c.matrix;
  for (auto& row : without) row.pop_back();
  return rank(without, static_cast<int>(ops.size())) == rank(c.matrix, static_cast<int>(all.size()));
}

CandidatePair normalize_witness(const CandidatePair& c) {
  CandidatePair out = c;
  if (c.x_op.is_zero()) return out;
  GaussianRational lead = c.x_op.leading().num().leading();
  GaussianRational inv = lead.inv();
  out.x_op = c.x_op.scaled(inv);
  out.y_op = c.y_op.scaled(inv);
  const RatFunc a0 = out.x_op.coeff(0);
  GaussianRational c0 = a0.is_polynomial() ? a0.constant_value() / a0.den().coeff(0)
                                           : divrem(a0.num(), a0.den()).first.coeff(0);
  if (!c0.is_zero()) {
    out.x_op -= OreOp::scalar(c0, out.x_op.var());
    out.y_op -= OreOp::scalar(c0, out.y_op.var());
  }
  return out;
}

bool equal_modulo_constants(const OreOp& a, const OreOp& b) { return (a - b).is_scalar(); }

SolveResult solve_candidates(const std::vector<CandidatePair>& cands, int L, int M, const EndpointSpec& ep) {
  for (const auto& c : cands) {
    if (ep.x_mode == EndpointMode::symmetric_pair && sigma(c.x_op) != c.x_op) {
      throw Error(ErrorKind::NotSigmaInvariant, "x-side of candidate " + c.provenance.label() +
                                                    " is not invariant under x -> -x; use the inf endpoint mode");
    }
    if (ep.y_mode == EndpointMode::symmetric_pair && sigma(c.y_op) != c.y_op) {
      throw Error(ErrorKind::NotSigmaInvariant, "y-side of candidate " + c.provenance.label() +
                                                    " is not invariant under y -> -y; use the inf endpoint mode");
    }
  }
  SolveResult res;
  res.stats.candidates = static_cast<int>(cands.size());
  res.lower_bound = L * (L + 1) / 2 + M * (M + 1) / 2 + 1;

  std::vector<OreOp> xs;
  std::vector<OreOp> ys;
  for (const auto& c : cands) {
    xs.push_back(c.x_op);
    ys.push_back(c.y_op);
  }
  OperatorCoordinates cx = coordinatize(xs);
  OperatorCoordinates cy = coordinatize(ys);
  std::vector<int> kept = independent_columns(cx.matrix, static_cast<int>(cands.size()));
  std::vector<CandidatePair> sub;
  for (int i : kept) sub.push_back(cands[static_cast<std::size_t>(i)]);
  res.stats.independent = static_cast<int>(sub.size());
  res.positive_order_guaranteed = res.stats.independent > res.lower_bound;

  Matrix a = assemble_reduced_system(sub, ep);
  res.stats.rows = static_cast<int>(a.size());
  res.stats.jet_order_x = max_order(sub, true);
  res.stats.jet_order_y = max_order(sub, false);
  Kernel k = nullspace(a, static_cast<int>(sub.size()));
  res.stats.rank = k.rank;
  res.dimension = static_cast<int>(k.basis.size());

  int best_order = -1;
  for (std::size_t s = 0; s < k.basis.size(); ++s) {
    Vector full(cands.size());
    for (std::size_t i = 0; i < kept.size(); ++i) full[static_cast<std::size_t>(kept[i])] = k.basis[s][i];
    CandidatePair pair;
    pair.x_op = combine(cx, full, Var::x);
    pair.y_op = combine(cy, full, Var::y);
    pair.provenance = {Family::solution, static_cast<int>(s), 0, ""};
    int ord = pair.x_op.order();
    if (ord > 0 && (best_order < 0 || ord < best_order)) {
      best_order = ord;
      res.nonconstant_witness = normalize_witness(pair);
    }
    res.solution_basis.push_back(std::move(pair));
  }
  return res;
}

SolveResult solve(const DarbouxTransform& t, int L, int M, const EndpointSpec& ep, const CandidateBounds& bounds) {
  return solve_candidates(candidate_space(t, L, M, bounds), L, M, ep);
}

VerifyReport verify_report(const CandidatePair& pair, const EndpointSpec& ep) {
  VerifyReport rep;
  rep.x_symmetric = is_formally_symmetric(pair.x_op);
  rep.y_symmetric = is_formally_symmetric(pair.y_op);
  auto check = [&](const OreOp& d, const GaussianRational& p, EndpointMode mode, char side) {
    std::vector<GaussianRational> points{p};
    if (mode == EndpointMode::symmetric_pair && !p.is_zero()) points.push_back(-p);
    const int n = std::max(d.order(), 0);
    for (const auto& pt : points) {
      Matrix c = jet_pairs(form_for(d, pt, pair.provenance, side), jet_matrix(pt, n), n);
      for (int j = 0; j <= n; ++j) {
        for (int k = 0; k <= n; ++k) {
          const auto& v = c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (!v.is_zero()) rep.residuals.push_back({side, pt, j, k, v});
        }
      }
    }
  };
  check(pair.x_op, ep.x_point, ep.x_mode, 'x');
  check(pair.y_op, ep.y_point, ep.y_mode, 'y');
  return rep;
}

bool verify_bisymmetric(const CandidatePair& pair, const EndpointSpec& ep) { return verify_report(pair, ep).passed(); }

}  // namespace bispectral
