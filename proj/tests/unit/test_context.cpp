#include "doctest.h"

#include "bispectral/concomitant.hpp"
#include "bispectral/context.hpp"
#include "bispectral/error.hpp"
#include "bispectral/linalg.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace bispectral;
using namespace bispectral::testing;

namespace {

GenExpr gen(const Context& ctx, const std::string& text) { return fourier(ctx, parse(text, ctx.dialect())); }

int basis_rank(const Context& ctx, int l, int m) {
  std::vector<OreOp> ops;
  for (const auto& b : sym_basis(ctx, l, m)) ops.push_back(b.expr.x_op);
  return rank(coordinatize(ops).matrix, static_cast<int>(ops.size()));
}

}  // namespace

TEST_CASE("generator images") {
  auto e = generator_images(Context::exp());
  REQUIRE(e.size() == 2);
  CHECK(e[0].symbol == "x");
  CHECK(e[0].y_op == op("Dy", Var::y));
  CHECK(e[1].symbol == "Dx");
  CHECK(e[1].y_op == op("y", Var::y));
  auto a = generator_images(Context::airy());
  CHECK(a[0].y_op == op("Dy^2 - y", Var::y));
  CHECK(a[1].y_op == op("Dy", Var::y));
  auto b = generator_images(Context::bessel(q(1, 2)));
  REQUIRE(b.size() == 3);
  CHECK(b[0].symbol == "BB");
  CHECK(b[0].x_op == op("Dx^2 - 3/4/x^2"));
  CHECK(b[0].y_op == op("y^2", Var::y));
  CHECK(b[1].x_op == op("x*Dx"));
  CHECK(b[1].y_op == op("y*Dy", Var::y));
  CHECK(b[2].x_op == op("x^2"));
  CHECK(b[2].y_op == op("Dy^2 - 3/4/y^2", Var::y));
}

TEST_CASE("bessel contexts reject integer nu") {
  CHECK_THROWS_AS(Context::bessel(q(2)), Error);
  CHECK_THROWS_AS(Context::bessel(q(1, 2) + I()), Error);
}

TEST_CASE("fourier images") {
  GenExpr e = gen(Context::exp(), "x^2*Dx");
  CHECK(e.y_op == op("y*Dy^2", Var::y));
  CHECK(e.order == 1);
  CHECK(e.coorder == 2);
  CHECK(gen(Context::airy(), "x").y_op == op("Dy^2 - y", Var::y));
  Context be = Context::bessel(q(1, 2));
  GenExpr c = gen(be, "S*BB - BB*S");
  OreOp s = op("x*Dx");
  OreOp bb = op("Dx^2 - 3/4/x^2");
  CHECK(c.x_op == s * bb - bb * s);
  OreOp sy = op("y*Dy", Var::y);
  OreOp yy = op("y^2", Var::y);
  CHECK(c.y_op == yy * sy - sy * yy);
}

TEST_CASE("symmetric bases") {
  auto e = sym_basis(Context::exp(), 1, 1);
  REQUIRE(e.size() == 4);
  std::vector<OreOp> want{op("1"), op("x^2"), op("Dx^2"), op("Dx*x^2*Dx")};
  for (const auto& w : want) {
    bool found = false;
    for (const auto& b : e) found = found || b.expr.x_op == w;
    CHECK(found);
  }
  CHECK(basis_rank(Context::exp(), 1, 1) == 4);
  auto a = sym_basis(Context::airy(), 2, 2);
  REQUIRE(a.size() == 9);
  for (const auto& b : a) {
    CHECK(b.expr.coorder == 2 * b.k);
    CHECK(b.expr.order == 2 * b.j);
  }
  auto bs = sym_basis(Context::bessel(q(1, 2)), 2, 2);
  REQUIRE(bs.size() == 9);
  for (const auto& b : bs) {
    CAPTURE(b.family);
    if (b.family == "bessel-ajk") {
      CHECK(b.expr.order == 2 * b.j + 2 * b.k);
      CHECK(b.expr.coorder == 2 * b.k);
    } else {
      CHECK(b.expr.order == 2 * b.k);
      CHECK(b.expr.coorder == 2 * b.j + 2 * b.k);
    }
    CHECK(sigma(b.expr.x_op) == b.expr.x_op);
    CHECK(is_formally_symmetric(b.expr.x_op));
    CHECK(is_formally_symmetric(b.expr.y_op));
  }
}

TEST_CASE("base operators") {
  CHECK(base_operator(Context::exp()).op == op("Dx"));
  CHECK(base_operator(Context::exp()).eigenvalue == poly("y", Var::y));
  CHECK(base_operator(Context::airy()).op == op("Dx^2 - x"));
  CHECK(base_operator(Context::bessel(q(1, 2))).op == op("Dx^2 - 3/4/x^2"));
  CHECK(base_operator(Context::bessel(q(1, 2))).eigenvalue == poly("y^2", Var::y));
}

TEST_CASE("fourier map is an anti-homomorphism") {
  Gen g(37);
  for (Context ctx : {Context::exp(), Context::airy(), Context::bessel(q(1, 3))}) {
    FourierCache cache(ctx);
    for (int n = 0; n < 100; ++n) {
      ExprTree w1 = g.word(ctx, 3), w2 = g.word(ctx, 3);
      GenExpr a = fourier(cache, w1), b = fourier(cache, w2);
      GenExpr ab = fourier(cache, ExprTree::make_product({w1, w2}));
      CHECK(ab.x_op == a.x_op * b.x_op);
      CHECK(ab.y_op == b.y_op * a.y_op);
    }
  }
}

TEST_CASE("exp fourier images agree with the truncated kernel") {
  Gen g(41);
  const int N = 12;
  Bivariate psi = truncated_exp(N);
  for (int n = 0; n < 200; ++n) {
    GenExpr e = fourier(Context::exp(), g.word(Context::exp(), 3));
    Bivariate lhs = apply_bivariate(e.x_op, psi);
    Bivariate rhs = apply_bivariate(e.y_op, psi);
    for (int a = 0; a <= N - 3; ++a) {
      for (int b = 0; b <= N - 3; ++b) {
        GaussianRational l = lhs.count({a, b}) ? lhs[{a, b}] : GaussianRational(0);
        GaussianRational r = rhs.count({a, b}) ? rhs[{a, b}] : GaussianRational(0);
        CHECK(l == r);
      }
    }
  }
}

TEST_CASE("symmetric basis elements are sigma invariant in the exp and bessel contexts") {
  for (Context ctx : {Context::exp(), Context::bessel(q(1, 2)), Context::bessel(q(-1, 3))}) {
    for (int l = 0; l <= 4; ++l) {
      for (const auto& b : sym_basis(ctx, l, 4)) {
        CHECK(sigma(b.expr.x_op) == b.expr.x_op);
        CHECK(sigma(b.expr.y_op) == b.expr.y_op);
      }
    }
  }
}
