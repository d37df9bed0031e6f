#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bispectral/darboux.hpp"
#include "bispectral/exactnum.hpp"
#include "bispectral/linalg.hpp"
#include "bispectral/orealg.hpp"

namespace bispectral {

// C_d(f, g) = sum_{j=1}^m sum_{k<j} (-1)^k f^(j-1-k) (d_j g)^(k), with
// d/dx C_d(f, g) = (d f) g - f (d* g).
RatFunc concomitant_symbolic(const OreOp& d, const RatFunc& f, const RatFunc& g);
GaussianRational concomitant(const OreOp& d, const RatFunc& f, const RatFunc& g, const GaussianRational& p);
GaussianRational concomitant(const OreOp& d, const Poly& f, const Poly& g, const GaussianRational& p);

bool concomitant_derivative_identity_check(const OreOp& d, const Poly& f, const Poly& g);
// C_{ab}(f, g; p) = C_a(b f, g; p) + C_b(f, a* g; p)
bool concomitant_decomposition_check(const OreOp& a, const OreOp& b, const Poly& f, const Poly& g,
                                     const GaussianRational& p);

// B with C_d(f, g; p) = sum_{a,l} f^(a)(p) B[a][l] g^(l)(p); size ord d x ord d.
Matrix concomitant_form(const OreOp& d, const GaussianRational& p);

enum class EndpointMode { symmetric_pair, finite_plus_infinity };

const char* endpoint_mode_name(EndpointMode m);  // "sym" | "inf"
EndpointMode parse_endpoint_mode(const std::string& s);

struct EndpointSpec {
  GaussianRational x_point;
  GaussianRational y_point;
  EndpointMode x_mode = EndpointMode::symmetric_pair;
  EndpointMode y_mode = EndpointMode::symmetric_pair;
};

// Rows C(x^j, x^k; x_point) then C(y^j, y^k; y_point) for 0 <= j, k <= N,
// N the largest order on that side; one column per candidate.
Matrix assemble_system(const std::vector<CandidatePair>& cands, const EndpointSpec& ep);

// Same kernel with fewer rows: the entries B[a][l], a + l < N, of each concomitant form.
Matrix assemble_reduced_system(const std::vector<CandidatePair>& cands, const EndpointSpec& ep);

// Operators written over one common denominator: op_i = (1/den) sum_j num[i][j] D^j.
struct OperatorCoordinates {
  Poly den;
  std::vector<std::vector<Poly>> num;
  Matrix matrix;  // one row per (j, degree) monomial, one column per operator
};

OperatorCoordinates coordinatize(const std::vector<OreOp>& ops);
OreOp combine(const OperatorCoordinates& c, const Vector& coeffs, Var v);

// True iff target is a linear combination of ops.
bool span_contains(const std::vector<OreOp>& ops, const OreOp& target);

struct SystemStats {
  int candidates = 0;   // before de-duplication
  int independent = 0;  // columns of the system
  int rows = 0;
  int rank = 0;
  int jet_order_x = 0;
  int jet_order_y = 0;
};

struct SolveResult {
  std::vector<CandidatePair> solution_basis;
  int dimension = 0;
  std::optional<CandidatePair> nonconstant_witness;
  SystemStats stats;
  // dim of the independent candidate space vs. L(L+1)/2 + M(M+1)/2 + 1
  int lower_bound = 0;
  bool positive_order_guaranteed = false;
};

SolveResult solve(const DarbouxTransform& t, int L, int M, const EndpointSpec& ep,
                  const CandidateBounds& bounds = {});
SolveResult solve_candidates(const std::vector<CandidatePair>& cands, int L, int M, const EndpointSpec& ep);

// Monic leading numerator, constant term of the order-0 polynomial part removed.
CandidatePair normalize_witness(const CandidatePair& c);
bool equal_modulo_constants(const OreOp& a, const OreOp& b);

struct Residual {
  char side = 'x';
  GaussianRational point;
  int j = 0;
  int k = 0;
  GaussianRational value;
};

struct VerifyReport {
  bool x_symmetric = false;
  bool y_symmetric = false;
  std::vector<Residual> residuals;  // nonzero values only
  bool passed() const { return x_symmetric && y_symmetric && residuals.empty(); }
};

// Formal symmetry of both sides and vanishing of C(v^j, v^k) for j, k <= order at the
// endpoints; in symmetric-pair mode the mirror point -p is checked as well.
VerifyReport verify_report(const CandidatePair& pair, const EndpointSpec& ep);
bool verify_bisymmetric(const CandidatePair& pair, const EndpointSpec& ep);

}  // namespace bispectral
