#include "doctest.h"

#include "bispectral/concomitant.hpp"
#include "bispectral/error.hpp"
#include "bispectral/linalg.hpp"
#include "support/gen.hpp"

using namespace bispectral;
using namespace bispectral::testing;

namespace {

Vector jet(const Poly& f, const GaussianRational& p, int n) {
  Vector out;
  Poly d = f;
  for (int a = 0; a < n; ++a) {
    out.push_back(d.eval(p));
    d = d.derivative();
  }
  return out;
}

GaussianRational form_value(const Matrix& b, const Vector& jf, const Vector& jg) {
  GaussianRational s;
  for (std::size_t a = 0; a < b.size(); ++a) {
    for (std::size_t l = 0; l < b[a].size(); ++l) s += jf[a] * b[a][l] * jg[l];
  }
  return s;
}

ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

// Same subspace test via ranks.
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, int cols) {
  Matrix ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  int r = rank(ab, cols);
  return r == rank(a, cols) && r == rank(b, cols);
}

EndpointSpec sym(const GaussianRational& x, const GaussianRational& y) {
  return {x, y, EndpointMode::symmetric_pair, EndpointMode::symmetric_pair};
}

}  // namespace

TEST_CASE("concomitant values") {
  Gen g(53);
  for (int n = 0; n < 20; ++n) {
    Poly f = g.poly(5), h = g.poly(5);
    GaussianRational p = g.scalar();
    CHECK(concomitant(op("Dx^2"), f, h, p) == f.derivative().eval(p) * h.eval(p) - f.eval(p) * h.derivative().eval(p));
    CHECK(concomitant(g.op(0, 4), f, h, p).is_zero());
  }
  CHECK(concomitant(op("Dx*(x^2 - 1)*Dx"), poly("1"), poly("1"), q(1)).is_zero());
  CHECK(error_of([] { concomitant(op("1/x*Dx^2"), poly("x"), poly("1"), q(0)); }) == ErrorKind::EndpointAtPole);
}

TEST_CASE("concomitant identities on fixed data") {
  CHECK(concomitant_derivative_identity_check(op("Dx"), poly("x"), poly("1")));
  CHECK(concomitant_symbolic(op("Dx"), RatFunc(poly("x")), RatFunc(poly("1"))).derivative() == RatFunc(poly("1")));
  CHECK(concomitant_derivative_identity_check(op("x*Dx^2"), poly("x"), poly("x")));
  CHECK(concomitant_decomposition_check(op("Dx"), op("Dx"), poly("x^3"), poly("x^2 + 1"), q(2)));
  CHECK(concomitant_decomposition_check(op("Dx + 1/x"), op("Dx - 1/x"), poly("x^2"), poly("x - 5"), q(2)));
}

TEST_CASE("concomitant derivative identity on random data") {
  Gen g(59);
  for (int n = 0; n < 200; ++n) {
    CHECK(concomitant_derivative_identity_check(g.op(4, 3, Var::x, n % 2 == 0), g.poly(5), g.poly(5)));
  }
}

TEST_CASE("concomitant decomposition identity on random data") {
  Gen g(61);
  for (int n = 0; n < 200; ++n) {
    GaussianRational p = n % 2 == 0 ? q(7) : q(1, 3);
    CHECK(concomitant_decomposition_check(g.op(3, 3, Var::x, n % 3 == 0), g.op(3, 3, Var::x, n % 4 == 0), g.poly(5),
                                          g.poly(5), p));
  }
}

TEST_CASE("matrix form agrees with the double sum") {
  Gen g(67);
  for (int n = 0; n < 200; ++n) {
    OreOp d = g.op(5, 3, Var::x, n % 2 == 0);
    Poly f = g.poly(7), h = g.poly(7);
    GaussianRational p = n % 3 == 0 ? q(7) : g.integer(3, 9);
    Matrix b = concomitant_form(d, p);
    int m = std::max(d.order(), 0);
    CHECK(form_value(b, jet(f, p, m), jet(h, p, m)) == concomitant(d, f, h, p));
  }
}

TEST_CASE("prolate system over the exp basis") {
  auto cands = candidate_space(trivial_transform(Context::exp()), 1, 1);
  EndpointSpec ep = sym(q(1), I());
  Matrix a = assemble_system(cands, ep);
  Kernel k = nullspace(a, 4);
  CHECK(k.basis.size() == 2);
  int n = 2;
  CHECK(a.size() <= static_cast<std::size_t>(2 * (n + 1) * (n + 1)));
  // Hand-solved conditions give span{1, x^2 + Dx x^2 Dx - Dx^2}.
  auto coeffs = [&](const OreOp& target) {
    Vector v(4);
    for (std::size_t i = 0; i < 4; ++i) {
      if (cands[i].x_op == op("1")) v[i] = target == op("1") ? 1 : 0;
      if (cands[i].x_op == op("x^2")) v[i] = target == op("1") ? 0 : 1;
      if (cands[i].x_op == op("Dx*x^2*Dx")) v[i] = target == op("1") ? 0 : 1;
      if (cands[i].x_op == op("Dx^2")) v[i] = target == op("1") ? 0 : -1;
    }
    return v;
  };
  CHECK(same_span(k.basis, {coeffs(op("1")), coeffs(op("x^2"))}, 4));
  Matrix r = assemble_reduced_system(cands, ep);
  CHECK(same_span(nullspace(r, 4).basis, k.basis, 4));
}

TEST_CASE("airy system over the airy basis") {
  auto cands = candidate_space(trivial_transform(Context::airy()), 1, 1);
  EndpointSpec ep{q(1), q(2), EndpointMode::finite_plus_infinity, EndpointMode::finite_plus_infinity};
  Matrix a = assemble_system(cands, ep);
  Kernel k = nullspace(a, static_cast<int>(cands.size()));
  CHECK(k.basis.size() == 2);
  std::vector<OreOp> xs;
  for (const auto& c : cands) xs.push_back(c.x_op);
  OreOp witness = op("(x - 1)*Dx^2 + Dx - x^2 - x");
  CHECK(span_contains(xs, witness));
  CHECK(a.size() <= 2u * 5u * 5u);
  CHECK(rank(a, static_cast<int>(cands.size())) <= 2 * 4 * 5);
}

TEST_CASE("reduced and full systems share their kernel") {
  DarbouxTransform t = build_transform(Context::exp(), fourier(Context::exp(), parse("x*Dx - 1", Dialect::generators(ContextKind::exp))));
  for (int L = 1; L <= 3; ++L) {
    auto cands = candidate_space(t, L, L);
    EndpointSpec ep = sym(q(1), I());
    int cols = static_cast<int>(cands.size());
    CHECK(same_span(nullspace(assemble_system(cands, ep), cols).basis,
                    nullspace(assemble_reduced_system(cands, ep), cols).basis, cols));
  }
}

TEST_CASE("solver outcomes") {
  Context ctx = Context::exp();
  SolveResult r = solve(trivial_transform(ctx), 1, 1, sym(q(1), I()));
  CHECK(r.dimension == 2);
  REQUIRE(r.nonconstant_witness);
  CHECK(equal_modulo_constants(normalize_witness(*r.nonconstant_witness).x_op, op("(x^2 - 1)*Dx^2 + 2*x*Dx + x^2")));
  for (const auto& b : r.solution_basis) CHECK(verify_bisymmetric(b, sym(q(1), I())));
  SolveResult again = solve(trivial_transform(ctx), 1, 1, sym(q(1), I()));
  REQUIRE(again.solution_basis.size() == r.solution_basis.size());
  for (std::size_t i = 0; i < r.solution_basis.size(); ++i) {
    CHECK(print_op(again.solution_basis[i].x_op) == print_op(r.solution_basis[i].x_op));
    CHECK(print_op(again.solution_basis[i].y_op) == print_op(r.solution_basis[i].y_op));
  }
  auto cands = candidate_space(trivial_transform(ctx), 1, 1);
  for (auto& c : cands) {
    c.x_op = c.x_op.scaled(3);
    c.y_op = c.y_op.scaled(3);
  }
  SolveResult scaled = solve_candidates(cands, 1, 1, sym(q(1), I()));
  std::vector<OreOp> xs;
  for (const auto& b : r.solution_basis) xs.push_back(b.x_op);
  CHECK(scaled.dimension == 2);
  for (const auto& b : scaled.solution_basis) CHECK(span_contains(xs, b.x_op));
  CHECK(error_of([] { solve(trivial_transform(Context::airy()), 1, 1, sym(q(1), q(1))); }) == ErrorKind::NotSigmaInvariant);
  std::vector<CandidatePair> pole{{op("Dx*(1/x)*Dx"), op("y", Var::y), {}}};
  EndpointSpec at_zero{q(0), q(1), EndpointMode::finite_plus_infinity, EndpointMode::finite_plus_infinity};
  CHECK(error_of([&] { solve_candidates(pole, 1, 1, at_zero); }) == ErrorKind::EndpointAtPole);
}

TEST_CASE("bisymmetry checks") {
  OreOp prolate = op("(x^2 - 1)*Dx^2 + 2*x*Dx + x^2");
  CandidatePair pair{prolate, fourier(Context::exp(), tree_from_operator(Context::exp(), prolate)).y_op, {}};
  CHECK(verify_bisymmetric(pair, sym(q(1), I())));
  VerifyReport bad = verify_report(pair, sym(q(2), I()));
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.residuals.empty());
  CHECK(verify_bisymmetric(CandidatePair{op("5"), op("5", Var::y), {}}, sym(q(2), q(3))));
  CHECK_FALSE(verify_bisymmetric(CandidatePair{op("Dx^3"), op("y^3", Var::y), {}}, sym(q(1), q(1))));
}
