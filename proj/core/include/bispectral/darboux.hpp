#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bispectral/context.hpp"
#include "bispectral/exactnum.hpp"
#include "bispectral/orealg.hpp"

namespace bispectral {

// Self-adjoint bispectral Darboux data psi~ = (1/(p q)) u . psi.
struct DarbouxTransform {
  Context ctx;
  GenExpr u_expr;
  OreOp u{Var::x};
  OreOp u_adj{Var::x};
  OreOp w{Var::y};
  OreOp w_adj{Var::y};
  Poly p{Var::x};
  Poly q{Var::y};
  int d1 = 0;
  int d2 = 0;
  // u* (1/p^2) u = unit * f(base_x);  w* (1/q^2) w = unit_y * g(base_y).
  GaussianRational unit{1};
  Poly f{Var::x};
  GaussianRational unit_y{1};
  Poly g{Var::x};
  bool trivial = false;
};

DarbouxTransform build_transform(const Context& ctx, const GenExpr& u_expr,
                                 const std::optional<Poly>& p_override = std::nullopt,
                                 const std::optional<Poly>& q_override = std::nullopt);
DarbouxTransform trivial_transform(const Context& ctx);

enum class Family { constant, basis, u_family, p_family, solution };

const char* family_name(Family f);

struct Provenance {
  Family family = Family::constant;
  int j = 0;
  int k = 0;
  std::string basis_family;  // tag of the underlying symmetric basis element

  std::string label() const;
};

struct CandidatePair {
  OreOp x_op{Var::x};
  OreOp y_op{Var::y};
  Provenance provenance;
};

CandidatePair conj_p(const DarbouxTransform& t, const SymBasisElem& b);
CandidatePair conj_u(const DarbouxTransform& t, const SymBasisElem& b);

// Index bounds (l, m) of sym_basis for one family.
struct FamilyBounds {
  int l = 0;
  int m = 0;
};

struct CandidateBounds {
  std::optional<FamilyBounds> u_family;
  std::optional<FamilyBounds> p_family;
  std::optional<bool> include_constant;

  bool empty() const { return !u_family && !p_family && !include_constant; }
};

std::vector<CandidatePair> candidate_space(const DarbouxTransform& t, int L, int M,
                                           const CandidateBounds& bounds = {});

// f(e) for polynomials f and e.
// Size of candidate_space(t, L, M, bounds) without building it.
std::size_t candidate_count(const DarbouxTransform& t, int L, int M, const CandidateBounds& bounds = {});

Poly compose(const Poly& f, const Poly& e);

}  // namespace bispectral
