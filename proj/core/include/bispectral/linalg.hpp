#pragma once

#include <cstdint>
#include <vector>

#include "bispectral/exactnum.hpp"

namespace bispectral {

using Vector = std::vector<GaussianRational>;
using Matrix = std::vector<Vector>;

struct Kernel {
  // Reduced basis: vector f has a 1 in free column f and 0 in the other free columns.
  std::vector<Vector> basis;
  std::vector<int> pivots;  // leftmost-greedy independent columns
  int rank = 0;
};

// Exact kernel over Q(i). Rows are preselected by an elimination modulo a
// word-size prime; the kernel of the selected rows is computed by fraction-free
// Gauss-Jordan elimination and then checked exactly against every row.
Kernel nullspace(const Matrix& a, int cols);

// Columns forming a maximal independent set, chosen leftmost first.
std::vector<int> independent_columns(const Matrix& a, int cols);

int rank(const Matrix& a, int cols);

Vector mat_vec(const Matrix& a, const Vector& v);

namespace modular {

// A prime p = 1 (mod 4) below 2^62 together with a square root of -1.
struct Prime {
  std::uint64_t p;
  std::uint64_t sqrt_minus_one;
};

const Prime& prime(std::size_t index);

struct RowProfile {
  std::vector<int> rows;    // rows kept, in input order
  std::vector<int> pivots;  // pivot columns, ascending
  bool ok = true;           // false if a denominator vanished modulo p
};

RowProfile row_profile(const Matrix& a, int cols, const Prime& pr);

}  // namespace modular

}  // namespace bispectral
