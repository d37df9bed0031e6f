#include "bispectral/context.hpp"

#include "bispectral/error.hpp"

namespace bispectral {

Context Context::exp() { return Context{ContextKind::exp, GaussianRational(0)}; }

Context Context::airy() { return Context{ContextKind::airy, GaussianRational(0)}; }

Context Context::bessel(const GaussianRational& nu) {
  if (!nu.is_real()) throw Error(ErrorKind::InvalidContext, "Bessel order must be real, got " + nu.to_string());
  if (nu.re().get_den() == 1) throw Error(ErrorKind::InvalidContext, "Bessel order must not be an integer, got " + nu.to_string());
  return Context{ContextKind::bessel, nu};
}

GaussianRational Context::nu_term() const { return nu * (nu + GaussianRational(1)); }

std::string Context::describe() const {
  if (kind == ContextKind::bessel) return std::string("bessel(nu=") + nu.to_string() + ")";
  return context_kind_name(kind);
}

namespace {

OreOp var_op(Var v) { return OreOp::function(RatFunc(Poly::variable(v))); }

// D^2 - c/v^2
OreOp bessel_operator(const GaussianRational& c, Var v) {
  OreOp d2 = OreOp::derivation(v).pow(2);
  RatFunc inv_sq(Poly::constant(c, v), Poly::monomial(1, 2, v));
  return d2 - OreOp::function(inv_sq);
}

// D^2 - v
OreOp airy_operator(Var v) { return OreOp::derivation(v).pow(2) - var_op(v); }

}  // namespace

std::vector<GeneratorImage> generator_images(const Context& ctx) {
  const OreOp x = var_op(Var::x);
  const OreOp y = var_op(Var::y);
  const OreOp dx = OreOp::derivation(Var::x);
  const OreOp dy = OreOp::derivation(Var::y);
  switch (ctx.kind) {
    case ContextKind::exp: return {{"x", x, dy}, {"Dx", dx, y}};
    case ContextKind::airy: return {{"x", x, airy_operator(Var::y)}, {"Dx", dx, dy}};
    case ContextKind::bessel: {
      GaussianRational c = ctx.nu_term();
      return {{"BB", bessel_operator(c, Var::x), y * y},
              {"S", x * dx, y * dy},
              {"X2", x * x, bessel_operator(c, Var::y)}};
    }
  }
  throw Error(ErrorKind::InvalidContext, "unknown context");
}

FourierCache::FourierCache(const Context& ctx) : ctx_(ctx) {
  for (auto& g : generator_images(ctx)) memo_.emplace(g.symbol, std::make_pair(g.x_op, g.y_op));
}

std::pair<OreOp, OreOp> FourierCache::eval(const ExprTree& e) {
  switch (e.kind) {
    case ExprTree::Kind::scalar: return {OreOp::scalar(e.value, Var::x), OreOp::scalar(e.value, Var::y)};
    case ExprTree::Kind::symbol: {
      auto it = memo_.find(e.name);
      if (it == memo_.end()) {
        throw Error(ErrorKind::ReservedSymbolMisuse, "'" + e.name + "' is not a generator of " + ctx_.describe());
      }
      return it->second;
    }
    case ExprTree::Kind::quotient:
      throw Error(ErrorKind::InvalidArgument, "division is not available in generator expressions");
    default: break;
  }
  const std::string key = to_string(e);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::pair<OreOp, OreOp> out{OreOp(Var::x), OreOp(Var::y)};
  switch (e.kind) {
    case ExprTree::Kind::sum:
      for (const auto& c : e.children) {
        auto [a, b] = eval(c);
        out.first += a;
        out.second += b;
      }
      break;
    case ExprTree::Kind::product: {
      out = {OreOp::identity(Var::x), OreOp::identity(Var::y)};
      for (const auto& c : e.children) {
        auto [a, b] = eval(c);
        out.first = out.first * a;
        out.second = b * out.second;  // anti-homomorphism
      }
      break;
    }
    case ExprTree::Kind::power: {
      if (e.exponent == 0) {
        out = {OreOp::identity(Var::x), OreOp::identity(Var::y)};
      } else {
        auto base = eval(e.children[0]);
        auto prev = eval(ExprTree::make_power(e.children[0], e.exponent - 1));
        out = {prev.first * base.first, base.second * prev.second};
      }
      break;
    }
    default: break;
  }
  memo_.emplace(key, out);
  return out;
}

GenExpr fourier(FourierCache& cache, const ExprTree& e) {
  auto [x, y] = cache.eval(e);
  GenExpr g;
  g.tree = e;
  g.x_op = std::move(x);
  g.y_op = std::move(y);
  g.order = g.x_op.order();
  g.coorder = g.y_op.order();
  return g;
}

GenExpr fourier(const Context& ctx, const ExprTree& e) {
  FourierCache cache(ctx);
  return fourier(cache, e);
}

namespace {

ExprTree neg(ExprTree e) { return ExprTree::make_product({ExprTree::make_scalar(-1), std::move(e)}); }

// S* = -S - 1
ExprTree s_star() { return ExprTree::make_sum({neg(ExprTree::make_symbol("S")), ExprTree::make_scalar(-1)}); }

}  // namespace

ExprTree adjoint_tree(const Context& ctx, const ExprTree& e) {
  switch (e.kind) {
    case ExprTree::Kind::scalar: return e;
    case ExprTree::Kind::symbol:
      if (e.name == "Dx") return neg(e);
      if (e.name == "S") return s_star();
      if (e.name == "x" || e.name == "BB" || e.name == "X2") return e;
      throw Error(ErrorKind::ReservedSymbolMisuse, "'" + e.name + "' is not a generator of " + ctx.describe());
    case ExprTree::Kind::sum: {
      std::vector<ExprTree> terms;
      for (const auto& c : e.children) terms.push_back(adjoint_tree(ctx, c));
      return ExprTree::make_sum(std::move(terms));
    }
    case ExprTree::Kind::product: {
      std::vector<ExprTree> factors;
      for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) factors.push_back(adjoint_tree(ctx, *it));
      return ExprTree::make_product(std::move(factors));
    }
    case ExprTree::Kind::power: return ExprTree::make_power(adjoint_tree(ctx, e.children[0]), e.exponent);
    case ExprTree::Kind::quotient:
      throw Error(ErrorKind::InvalidArgument, "division is not available in generator expressions");
  }
  return e;
}

ExprTree tree_from_operator(const Context& ctx, const OreOp& d) {
  if (ctx.kind == ContextKind::bessel) {
    throw Error(ErrorKind::InvalidArgument, "Bessel operators must be given as generator words");
  }
  if (!d.has_polynomial_coefficients()) {
    throw Error(ErrorKind::InvalidArgument, "operator has non-polynomial coefficients: " + to_string(d));
  }
  std::vector<ExprTree> terms;
  for (int j = d.order(); j >= 0; --j) {
    const Poly& p = d.coeffs()[static_cast<std::size_t>(j)].num();
    for (int k = p.degree(); k >= 0; --k) {
      if (p.coeff(k).is_zero()) continue;
      std::vector<ExprTree> f{ExprTree::make_scalar(p.coeff(k))};
      if (k > 0) f.push_back(ExprTree::make_power(ExprTree::make_symbol("x"), static_cast<unsigned>(k)));
      if (j > 0) f.push_back(ExprTree::make_power(ExprTree::make_symbol("Dx"), static_cast<unsigned>(j)));
      terms.push_back(ExprTree::make_product(std::move(f)));
    }
  }
  if (terms.empty()) return ExprTree::make_scalar(0);
  return ExprTree::make_sum(std::move(terms));
}

namespace {

ExprTree pw(const ExprTree& base, int n) { return ExprTree::make_power(base, static_cast<unsigned>(n)); }

}  // namespace

std::vector<SymBasisElem> sym_basis(FourierCache& cache, const Context& ctx, int l, int m) {
  std::vector<SymBasisElem> out;
  if (l < 0 || m < 0) return out;
  switch (ctx.kind) {
    case ContextKind::exp: {
      const ExprTree dx = ExprTree::make_symbol("Dx");
      const ExprTree x = ExprTree::make_symbol("x");
      for (int j = 0; j <= l; ++j) {
        for (int k = 0; k <= m; ++k) {
          ExprTree t = ExprTree::make_product({pw(dx, j), pw(x, 2 * k), pw(dx, j)});
          out.push_back({fourier(cache, t), j, k, "exp-jk"});
        }
      }
      break;
    }
    case ContextKind::airy: {
      const ExprTree x = ExprTree::make_symbol("x");
      const ExprTree dai = ExprTree::make_sum({pw(ExprTree::make_symbol("Dx"), 2), neg(x)});
      for (int j = 0; j <= l; ++j) {
        for (int k = 0; k <= m; ++k) {
          ExprTree t = ExprTree::make_sum({ExprTree::make_product({pw(dai, j), pw(x, k)}),
                                           ExprTree::make_product({pw(x, k), pw(dai, j)})});
          out.push_back({fourier(cache, t), j, k, "airy-ajk"});
        }
      }
      break;
    }
    case ContextKind::bessel: {
      const ExprTree s = ExprTree::make_symbol("S");
      const ExprTree ss = s_star();
      const ExprTree bb = ExprTree::make_symbol("BB");
      const ExprTree x2 = ExprTree::make_symbol("X2");
      for (int k = 0; k <= std::min(l, m); ++k) {
        for (int j = 0; j + k <= l; ++j) {
          ExprTree t = ExprTree::make_product({pw(s, k), pw(bb, j), pw(ss, k)});
          out.push_back({fourier(cache, t), j, k, "bessel-ajk"});
        }
      }
      for (int k = 0; k <= std::min(l, m); ++k) {
        for (int j = 1; j + k <= m; ++j) {
          ExprTree t = ExprTree::make_product({pw(s, k), pw(x2, j), pw(ss, k)});
          out.push_back({fourier(cache, t), j, k, "bessel-bjk"});
        }
      }
      break;
    }
  }
  return out;
}

std::vector<SymBasisElem> sym_basis(const Context& ctx, int l, int m) {
  FourierCache cache(ctx);
  return sym_basis(cache, ctx, l, m);
}

BaseOperator base_operator(const Context& ctx) {
  switch (ctx.kind) {
    case ContextKind::exp: return {OreOp::derivation(Var::x), Poly::variable(Var::y)};
    case ContextKind::airy: return {airy_operator(Var::x), Poly::variable(Var::y)};
    case ContextKind::bessel: return {bessel_operator(ctx.nu_term(), Var::x), Poly::monomial(1, 2, Var::y)};
  }
  throw Error(ErrorKind::InvalidContext, "unknown context");
}

BaseOperator base_operator_y(const Context& ctx) {
  switch (ctx.kind) {
    case ContextKind::exp: return {OreOp::derivation(Var::y), Poly::variable(Var::x)};
    case ContextKind::airy: return {airy_operator(Var::y), Poly::variable(Var::x)};
    case ContextKind::bessel: return {bessel_operator(ctx.nu_term(), Var::y), Poly::monomial(1, 2, Var::x)};
  }
  throw Error(ErrorKind::InvalidContext, "unknown context");
}

}  // namespace bispectral
