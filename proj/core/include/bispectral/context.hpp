#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bispectral/exactnum.hpp"
#include "bispectral/orealg.hpp"
#include "bispectral/parser.hpp"

namespace bispectral {

// One of the elementary bispectral functions e^{xy}, the Airy kernel, or the
// Bessel kernel of rational non-integer order nu.
struct Context {
  ContextKind kind = ContextKind::exp;
  GaussianRational nu;

  static Context exp();
  static Context airy();
  static Context bessel(const GaussianRational& nu);

  // nu(nu+1), the constant in D^2 - nu(nu+1)/x^2.
  GaussianRational nu_term() const;
  Dialect dialect() const { return Dialect::generators(kind); }
  std::string describe() const;
};

struct GeneratorImage {
  std::string symbol;
  OreOp x_op;
  OreOp y_op;
};

std::vector<GeneratorImage> generator_images(const Context& ctx);

// An element of the Fourier algebra with both of its expansions.
struct GenExpr {
  ExprTree tree;
  OreOp x_op{Var::x};
  OreOp y_op{Var::y};
  int order = -1;
  int coorder = -1;
};

// Memo for repeated subexpressions (powers in particular) across fourier calls.
class FourierCache {
 public:
  explicit FourierCache(const Context& ctx);
  std::pair<OreOp, OreOp> eval(const ExprTree& e);

 private:
  Context ctx_;
  std::map<std::string, std::pair<OreOp, OreOp>> memo_;
};

GenExpr fourier(const Context& ctx, const ExprTree& e);
GenExpr fourier(FourierCache& cache, const ExprTree& e);

// Formal adjoint at the level of generator words.
ExprTree adjoint_tree(const Context& ctx, const ExprTree& e);

// exp/airy only: wrap an operator with polynomial coefficients as a generator tree.
ExprTree tree_from_operator(const Context& ctx, const OreOp& d);

struct SymBasisElem {
  GenExpr expr;
  int j = 0;
  int k = 0;
  std::string family;  // exp-jk | airy-ajk | bessel-ajk | bessel-bjk
};

std::vector<SymBasisElem> sym_basis(const Context& ctx, int l, int m);
std::vector<SymBasisElem> sym_basis(FourierCache& cache, const Context& ctx, int l, int m);

// The operator whose eigenvalue on the kernel is a polynomial in the other variable.
struct BaseOperator {
  OreOp op;
  Poly eigenvalue;
};

BaseOperator base_operator(const Context& ctx);    // x-side operator, eigenvalue in y
BaseOperator base_operator_y(const Context& ctx);  // y-side operator, eigenvalue in x

}  // namespace bispectral
