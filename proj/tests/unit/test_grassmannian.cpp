#include "doctest.h"

#include "bispectral/concomitant.hpp"
#include "bispectral/error.hpp"
#include "bispectral/grassmannian.hpp"
#include "support/gen.hpp"

using namespace bispectral;
using namespace bispectral::testing;

namespace {

QuasiExp qe(const std::string& p, const GaussianRational& c = 0) { return QuasiExp::term(poly(p), c); }

ConditionFunctional cond(const GaussianRational& point, std::vector<GaussianRational> coeffs) {
  return {point, std::move(coeffs)};
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

}  // namespace

TEST_CASE("quasi-exponential arithmetic") {
  CHECK(qe("x").derivative() == qe("1"));
  CHECK(qe("1", 1) * qe("1", -1) == qe("1"));
  CHECK(qe("x", 2).derivative() == qe("1 + 2*x", 2));
  CHECK((qe("x", 1) - qe("x", 1)).is_zero());
  CHECK(qe("x", 1).sigma() == qe("-x", -1));
  CHECK(qe("x^2 + 1").eval_at(q(2)) == q(5));
  CHECK(qe("1", 1).to_string() == "(1)*exp((1)*x)");
}

TEST_CASE("condition kernels") {
  CHECK(functional_to_kernel(cond(0, {0, 1})) == qe("x"));
  CHECK(functional_to_kernel(cond(2, {1})) == qe("1", 2));
  CHECK(functional_to_kernel(cond(0, {1, 0, 1})) == qe("1 + x^2"));
}

TEST_CASE("concomitant pairing") {
  ExponentMultiset d2{{0, 2}};
  Matrix m = concomitant_pairing(d2, {qe("1"), qe("x")});
  CHECK(m == Matrix{{0, -1}, {1, 0}});
  CHECK(concomitant_pairing(d2, {qe("x")}) == Matrix{{0}});
  CHECK(error_of([&] { concomitant_pairing(d2, {qe("x^2")}); }) == ErrorKind::NotInKernel);
}

TEST_CASE("lagrangian and sigma stability") {
  AdelicPlane one = make_plane({cond(0, {0, 1})});
  CHECK(one.ambient == ExponentMultiset{{0, 2}});
  CHECK(one.q == poly("y", Var::y));
  CHECK(is_lagrangian(one));
  AdelicPlane two = one;
  two.V = {qe("1"), qe("x")};
  CHECK_FALSE(is_lagrangian(two));
  AdelicPlane cosh;
  cosh.ambient = {{1, 1}, {-1, 1}};
  cosh.V = {qe("1", 1) + qe("1", -1)};
  CHECK(is_lagrangian(cosh));
  CHECK(is_sigma_stable(cosh));
  cosh.V = {qe("1", 1) + qe("2", -1)};
  CHECK_FALSE(is_sigma_stable(cosh));
  AdelicPlane odd;
  odd.ambient = {{1, 1}};
  odd.V = {qe("1", 1)};
  CHECK(error_of([&] { is_lagrangian(odd); }) == ErrorKind::NotFormallySymmetric);
  CHECK(is_sigma_stable(std::vector<QuasiExp>{qe("x")}));
  CHECK_FALSE(is_sigma_stable(std::vector<QuasiExp>{qe("1", 1)}));
  CHECK(is_sigma_stable(std::vector<QuasiExp>{qe("1", 1), qe("1", -1)}));
}

TEST_CASE("annihilators") {
  Annihilator a = annihilator({qe("x")});
  CHECK(a.u == op("x*Dx - 1"));
  CHECK(a.p == poly("x"));
  CHECK(a.monic == op("Dx - 1/x"));
  Annihilator b = annihilator({qe("1")});
  CHECK(b.u == op("Dx"));
  CHECK(b.p == poly("1"));
  CHECK(error_of([] { annihilator({qe("x"), qe("2*x")}); }) == ErrorKind::DependentKernel);
  Gen g(73);
  std::vector<GaussianRational> points{0, 1, -1, I(), q(1, 2)};
  for (int n = 0; n < 30; ++n) {
    std::vector<QuasiExp> V;
    int size = g.integer(1, 3);
    for (int j = 0; j < size; ++j) {
      ConditionFunctional c{points[static_cast<std::size_t>(g.integer(0, 4))], {}};
      int k = g.integer(0, 2);
      for (int t = 0; t < k; ++t) c.coeffs.push_back(g.scalar());
      c.coeffs.push_back(g.nonzero_scalar());
      V.push_back(functional_to_kernel(c));
    }
    try {
      Annihilator an = annihilator(V);
      CHECK(an.monic.order() == size);
      for (const auto& f : V) CHECK(annihilates(an.monic, f));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DependentKernel);
    }
  }
}

TEST_CASE("planes to transforms") {
  DarbouxTransform t = to_darboux(make_plane({cond(0, {0, 1})}));
  CHECK(t.u == op("x*Dx - 1"));
  CHECK(t.p == poly("x"));
  CHECK(t.q == poly("y", Var::y));
  CHECK(error_of([] { to_darboux(make_plane({cond(1, {1})})); }) == ErrorKind::NotSigmaStable);
  AdelicPlane pm = make_plane({cond(1, {1}), cond(-1, {1})});
  CHECK(is_lagrangian(pm));
  DarbouxTransform s = to_darboux(pm);
  CHECK(s.u == op("Dx^2 - 1"));
  CHECK(s.q == poly("y^2 - 1", Var::y));
  CHECK(s.q.degree() == 2);
  AdelicPlane bad = make_plane({cond(1, {1, 1}), cond(-1, {1, -1})});
  CHECK(is_sigma_stable(bad));
  CHECK_FALSE(is_lagrangian(bad));
  CHECK(error_of([&] { to_darboux(bad); }) == ErrorKind::NotLagrangian);
}

TEST_CASE("pairing is constant and antisymmetric") {
  Gen g(79);
  std::vector<GaussianRational> exps{0, 1, 2, I(), q(1, 2)};
  for (int n = 0; n < 200; ++n) {
    // Symmetric multiset: 0 with even multiplicity plus pairs +-c.
    ExponentMultiset e;
    int m0 = 2 * g.integer(0, 2);
    if (m0 > 0) e[0] = m0;
    GaussianRational c = exps[static_cast<std::size_t>(g.integer(1, 4))];
    int mc = g.integer(0, 2);
    if (mc > 0) {
      e[c] = mc;
      e[-c] = mc;
    }
    if (e.empty()) e[0] = 2;
    std::vector<QuasiExp> V;
    int size = g.integer(1, 3);
    for (int j = 0; j < size; ++j) {
      QuasiExp f;
      for (const auto& [pt, mult] : e) {
        std::vector<GaussianRational> coeffs;
        for (int k = 0; k < mult; ++k) coeffs.push_back(g.integer(0, 1) ? g.scalar() : GaussianRational(0));
        f += QuasiExp::term(Poly(Var::x, coeffs), pt);
      }
      V.push_back(f);
    }
    Matrix m = concomitant_pairing(e, V);
    for (std::size_t i = 0; i < V.size(); ++i) {
      for (std::size_t j = 0; j < V.size(); ++j) CHECK(m[i][j] == -m[j][i]);
    }
    // Constancy: the pairing computed through the concomitant at two points agrees.
    OreOp d = constant_operator(e);
    for (std::size_t i = 0; i < V.size(); ++i) {
      for (std::size_t j = 0; j < V.size(); ++j) {
        if (V[i].terms().size() != 1 || V[j].terms().size() != 1) continue;
        if (!V[i].terms().begin()->first.is_zero() || !V[j].terms().begin()->first.is_zero()) continue;
        const Poly& fi = V[i].terms().begin()->second;
        const Poly& fj = V[j].terms().begin()->second;
        CHECK(concomitant(d, fi, fj, q(0)) == concomitant(d, fi, fj, q(5, 3)));
        CHECK(concomitant(d, fi, fj, q(0)) == m[i][j]);
      }
    }
  }
}
