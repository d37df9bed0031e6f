#pragma once

#include <map>
#include <utility>

#include "bispectral/orealg.hpp"

namespace bispectral::testing {

// Bivariate polynomial as {(a, b): coefficient of x^a y^b}.
using Bivariate = std::map<std::pair<int, int>, GaussianRational>;

// sum_{n <= N} x^n y^n / n!, the truncation of e^{xy}.
inline Bivariate truncated_exp(int N) {
  Bivariate out;
  mpz_class fact = 1;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fact *= n;
    out[{n, n}] = GaussianRational(mpq_class(1, fact));
  }
  return out;
}

// Applies an operator with polynomial coefficients in the variable of d to a bivariate polynomial.
inline Bivariate apply_bivariate(const OreOp& d, const Bivariate& f) {
  Bivariate out;
  bool on_x = d.var() == Var::x;
  for (const auto& [mono, c] : f) {
    int e = on_x ? mono.first : mono.second;
    for (int j = 0; j <= d.order(); ++j) {
      if (j > e) break;
      const RatFunc& a = d.coeff(j);
      GaussianRational ff(mpq_class(falling_factorial(static_cast<unsigned long>(e), static_cast<unsigned long>(j))));
      for (int k = 0; k <= a.num().degree(); ++k) {
        GaussianRational v = c * ff * a.num().coeff(k) / a.den().coeff(0);
        if (v.is_zero()) continue;
        std::pair<int, int> m = on_x ? std::make_pair(e - j + k, mono.second) : std::make_pair(mono.first, e - j + k);
        out[m] += v;
      }
    }
  }
  return out;
}

}  // namespace bispectral::testing
