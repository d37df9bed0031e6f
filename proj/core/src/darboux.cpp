#include "bispectral/darboux.hpp"

#include <algorithm>

#include "bispectral/error.hpp"

namespace bispectral {

Poly compose(const Poly& f, const Poly& e) {
  Poly acc(e.var());
  for (int k = f.degree(); k >= 0; --k) {
    acc = acc * e + Poly::constant(f.coeff(k), e.var());
  }
  return acc;
}

namespace {

bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.scaled(b.leading()) == b.scaled(a.leading());
}

// a = c * b for some nonzero scalar c
bool proportional(const OreOp& a, const OreOp& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.order() != b.order()) return false;
  const RatFunc& la = a.leading();
  const RatFunc& lb = b.leading();
  GaussianRational c = la.num().leading() / lb.num().leading();
  return a == b.scaled(c);
}

Poly leading_polynomial(const OreOp& d, const char* what) {
  const RatFunc& lc = d.leading();
  if (!lc.is_polynomial()) {
    throw Error(ErrorKind::NonPolynomialLeadingCoefficient, std::string(what) + " has leading coefficient " + lc.to_string());
  }
  return lc.num();
}

BaseRewrite factor_through_base(const OreOp& d, const OreOp& base, const char* what) {
  try {
    return rewrite_in_base(d, base);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInBaseAlgebra) throw;
    throw Error(ErrorKind::FactorizationFails, std::string(what) + " is not a polynomial in the base operator: " + e.what());
  }
}

}  // namespace

DarbouxTransform build_transform(const Context& ctx, const GenExpr& u_expr, const std::optional<Poly>& p_override,
                                 const std::optional<Poly>& q_override) {
  if (u_expr.x_op.is_zero()) throw Error(ErrorKind::InvalidArgument, "u must be nonzero");
  DarbouxTransform t;
  t.ctx = ctx;
  t.u_expr = u_expr;
  t.u = u_expr.x_op;
  t.w = u_expr.y_op;
  t.p = leading_polynomial(t.u, "u").with_var(Var::x);
  t.q = leading_polynomial(t.w, "b(u)").with_var(Var::y);
  if (p_override && !proportional(p_override->with_var(Var::x), t.p)) {
    throw Error(ErrorKind::InvalidArgument, "p override " + p_override->to_string() +
                                                " is not proportional to the leading coefficient " + t.p.to_string());
  }
  if (q_override && !proportional(q_override->with_var(Var::y), t.q)) {
    throw Error(ErrorKind::QMismatch, "q override " + q_override->to_string() +
                                          " is not proportional to the leading coefficient " + t.q.to_string());
  }
  t.d1 = t.u.order();
  t.d2 = t.w.order();
  t.u_adj = adjoint(t.u);
  t.w_adj = adjoint(t.w);
  t.trivial = t.d1 == 0 && t.d2 == 0 && t.u.is_scalar();

  GenExpr u_star = fourier(ctx, adjoint_tree(ctx, u_expr.tree));
  if (!proportional(u_star.y_op, t.w_adj)) {
    throw Error(ErrorKind::FactorizationFails, "the image of u* is not a multiple of the adjoint of the image of u");
  }

  BaseOperator bx = base_operator(ctx);
  OreOp fx = t.u_adj * left_divide(t.p * t.p, t.u);
  BaseRewrite rx = factor_through_base(fx, bx.op, "u*(1/p^2)u");
  t.f = rx.f;
  t.unit = rx.unit;
  if (!proportional(compose(rx.f, bx.eigenvalue), t.q * t.q)) {
    throw Error(ErrorKind::QMismatch, "f(eigenvalue) = " + compose(rx.f, bx.eigenvalue).to_string() +
                                          " is not a multiple of q^2 = " + (t.q * t.q).to_string());
  }

  BaseOperator by = base_operator_y(ctx);
  OreOp fy = t.w_adj * left_divide(t.q * t.q, t.w);
  BaseRewrite ry = factor_through_base(fy, by.op, "w*(1/q^2)w");
  t.g = ry.f;
  t.unit_y = ry.unit;
  if (!proportional(compose(ry.f, by.eigenvalue), t.p * t.p)) {
    throw Error(ErrorKind::QMismatch, "g(eigenvalue) = " + compose(ry.f, by.eigenvalue).to_string() +
                                          " is not a multiple of p^2 = " + (t.p * t.p).to_string());
  }
  return t;
}

DarbouxTransform trivial_transform(const Context& ctx) {
  GenExpr one = fourier(ctx, ExprTree::make_scalar(1));
  return build_transform(ctx, one);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::constant: return "constant";
    case Family::basis: return "basis";
    case Family::u_family: return "u-family";
    case Family::p_family: return "p-family";
    case Family::solution: return "solution";
  }
  return "?";
}

std::string Provenance::label() const {
  if (family == Family::constant) return "constant";
  if (family == Family::solution) return "solution(" + std::to_string(j) + ")";
  return std::string(family_name(family)) + "(" + std::to_string(j) + "," + std::to_string(k) + ")[" + basis_family + "]";
}

CandidatePair conj_p(const DarbouxTransform& t, const SymBasisElem& b) {
  CandidatePair c;
  c.provenance = {Family::p_family, b.j, b.k, b.family};
  if (t.p.degree() == 0 && t.q.degree() == 0 && t.d2 == 0) {
    c.x_op = b.expr.x_op.scaled(t.p.coeff(0) * t.p.coeff(0));
    c.y_op = b.expr.y_op.scaled((t.q.coeff(0) * t.q.coeff(0)).inv());
    return c;
  }
  OreOp p_op = OreOp::function(RatFunc(t.p));
  c.x_op = p_op * b.expr.x_op * p_op;
  c.y_op = left_divide(t.q, right_divide(t.w * b.expr.y_op * t.w_adj, t.q));
  if (c.x_op.order() != b.expr.order || c.y_op.order() != b.expr.coorder + 2 * t.d2) {
    throw Error(ErrorKind::InexactDivision, "p-family order bookkeeping failed for " + c.provenance.label());
  }
  return c;
}

CandidatePair conj_u(const DarbouxTransform& t, const SymBasisElem& b) {
  CandidatePair c;
  c.provenance = {Family::u_family, b.j, b.k, b.family};
  if (t.p.degree() == 0 && t.q.degree() == 0 && t.d1 == 0) {
    GaussianRational s = t.u.leading().constant_value();
    c.x_op = b.expr.x_op.scaled(s * s / (t.p.coeff(0) * t.p.coeff(0)));
    c.y_op = b.expr.y_op.scaled(t.q.coeff(0) * t.q.coeff(0));
    return c;
  }
  OreOp q_op = OreOp::function(RatFunc(t.q));
  c.x_op = left_divide(t.p, right_divide(t.u * b.expr.x_op * t.u_adj, t.p));
  c.y_op = q_op * b.expr.y_op * q_op;
  if (c.x_op.order() != b.expr.order + 2 * t.d1 || c.y_op.order() != b.expr.coorder) {
    throw Error(ErrorKind::InexactDivision, "u-family order bookkeeping failed for " + c.provenance.label());
  }
  return c;
}

std::size_t candidate_count(const DarbouxTransform& t, int L, int M, const CandidateBounds& bounds) {
  auto basis_size = [](int l, int m) -> std::size_t {
    return l < 0 || m < 0 ? 0 : static_cast<std::size_t>(l + 1) * static_cast<std::size_t>(m + 1);
  };
  if (t.trivial && bounds.empty()) return basis_size(L, M);
  FamilyBounds ub = bounds.u_family.value_or(FamilyBounds{L - t.d1, M});
  FamilyBounds pb = bounds.p_family.value_or(FamilyBounds{std::max(0, t.d1 - 1), M - t.d2});
  return (bounds.include_constant.value_or(true) ? 1 : 0) + basis_size(ub.l, ub.m) + basis_size(pb.l, pb.m);
}

std::vector<CandidatePair> candidate_space(const DarbouxTransform& t, int L, int M, const CandidateBounds& bounds) {
  std::vector<CandidatePair> out;
  FourierCache cache(t.ctx);
  if (t.trivial && bounds.empty()) {
    for (const auto& b : sym_basis(cache, t.ctx, L, M)) {
      CandidatePair c;
      c.x_op = b.expr.x_op;
      c.y_op = b.expr.y_op;
      c.provenance = {Family::basis, b.j, b.k, b.family};
      out.push_back(std::move(c));
    }
    return out;
  }
  if (bounds.include_constant.value_or(true)) {
    CandidatePair c;
    c.x_op = OreOp::identity(Var::x);
    c.y_op = OreOp::identity(Var::y);
    out.push_back(std::move(c));
  }
  FamilyBounds ub = bounds.u_family.value_or(FamilyBounds{L - t.d1, M});
  FamilyBounds pb = bounds.p_family.value_or(FamilyBounds{std::max(0, t.d1 - 1), M - t.d2});
  for (const auto& b : sym_basis(cache, t.ctx, ub.l, ub.m)) out.push_back(conj_u(t, b));
  for (const auto& b : sym_basis(cache, t.ctx, pb.l, pb.m)) out.push_back(conj_p(t, b));
  return out;
}

}  // namespace bispectral
