// Acceptance gate: one PASS/FAIL line per criterion. Criterion 6 needs --slow-ok.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bispectral/concomitant.hpp"
#include "bispectral/error.hpp"
#include "bispectral/grassmannian.hpp"
#include "bispectral/linalg.hpp"
#include "bispectral/parser.hpp"

using namespace bispectral;
using GR = GaussianRational;

namespace {

// Runtime limits in seconds.
constexpr double kLimitPerExample = 1.0;
constexpr double kLimitBessel22 = 60.0;
constexpr double kLimitOrder22 = 3600.0;
constexpr double kLimitDimensionLaw = 5.0;
constexpr double kLimitProperties = 30.0;
constexpr double kLimitLagrangian = 60.0;
constexpr int kMinDimensionOrder22 = 35;
constexpr int kLagrangianPlanes = 30;

struct Outcome {
  bool pass = false;
  std::string detail;
};

EndpointSpec endpoints(const GR& x, const GR& y, EndpointMode mode) { return {x, y, mode, mode}; }

OreOp x_op(const std::string& text) { return parse_op(text, Var::x); }

bool witness_matches(const SolveResult& r, const OreOp& want, std::ostringstream& d) {
  if (!r.nonconstant_witness) {
    d << "no nonconstant witness";
    return false;
  }
  OreOp got = normalize_witness(*r.nonconstant_witness).x_op;
  d << "witness " << print_op(got);
  return equal_modulo_constants(got, want);
}

Outcome prolate() {
  std::ostringstream d;
  SolveResult r = solve(trivial_transform(Context::exp()), 1, 1, endpoints(1, GR::imag_unit(), EndpointMode::symmetric_pair));
  bool ok = witness_matches(r, x_op("(x^2 - 1)*Dx^2 + 2*x*Dx + x^2"), d);
  d << ", dimension " << r.dimension;
  return {ok && r.dimension == 2, d.str()};
}

Outcome airy_second_order() {
  std::ostringstream d;
  SolveResult r = solve(trivial_transform(Context::airy()), 1, 1, endpoints(1, 2, EndpointMode::finite_plus_infinity));
  bool ok = witness_matches(r, x_op("(x - 1)*Dx^2 + Dx - x^2 - x"), d);
  return {ok, d.str()};
}

Outcome bessel_second_order() {
  std::ostringstream d;
  GR nu = GR::fraction(1, 2);
  Context ctx = Context::bessel(nu);
  EndpointSpec ep = endpoints(1, 2, EndpointMode::symmetric_pair);
  SolveResult r = solve(trivial_transform(ctx), 1, 1, ep);
  std::vector<OreOp> span;
  for (const auto& b : r.solution_basis) span.push_back(b.x_op);
  // Dx (x^2 - t^2) Dx + a s^2 x^2 + b t^2 nu (nu + 1) / x^2 for the four sign choices, t = 1, s = 2.
  int passing = 0;
  std::string accepted;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      OreOp v = x_op("Dx*(x^2 - 1)*Dx") + OreOp::function(RatFunc(Poly::monomial(4 * a, 2))) +
                OreOp::function(RatFunc(Poly::constant(ctx.nu_term() * b), Poly::monomial(1, 2)));
      bool in_span = span_contains(span, v);
      bool verified = false;
      if (in_span && r.nonconstant_witness && equal_modulo_constants(normalize_witness(*r.nonconstant_witness).x_op, v)) {
        verified = verify_bisymmetric(*r.nonconstant_witness, ep);
      }
      if (in_span && verified) {
        ++passing;
        accepted = std::string(a < 0 ? "-" : "+") + "s^2 x^2, " + (b < 0 ? "-" : "+") + "t^2 nu(nu+1)/x^2";
      }
    }
  }
  d << passing << " sign variant(s) bisymmetric";
  if (passing == 1) d << " (" << accepted << ")";
  return {passing == 1, d.str()};
}

Outcome rank_one() {
  std::ostringstream d;
  DarbouxTransform t = to_darboux(make_plane({ConditionFunctional{0, {0, 1}}}));
  bool data = t.u == x_op("x*Dx - 1") && t.p == parse_poly("x", Var::x) && t.q == parse_poly("y", Var::y);
  d << "u = " << print_op(t.u) << ", p = " << t.p << ", q = " << t.q;
  EndpointSpec ep = endpoints(1, GR::imag_unit(), EndpointMode::symmetric_pair);
  SolveResult r = solve(t, 1, 1, ep);
  bool ok = data && r.nonconstant_witness && r.nonconstant_witness->x_op.order() == 2 &&
            verify_bisymmetric(*r.nonconstant_witness, ep);
  if (r.nonconstant_witness) d << ", witness " << print_op(normalize_witness(*r.nonconstant_witness).x_op);
  return {ok, d.str()};
}

// Coefficients of the two tabulated solutions as polynomials in nu, keyed by candidate label.
const std::vector<std::map<std::string, std::string>> kBesselTables{
    {{"p-family(0,0)[bessel-ajk]", "6*nu^4+60*nu^3+206*nu^2+288*nu+136"},
     {"p-family(1,0)[bessel-ajk]", "-4*nu^4-56*nu^3-256*nu^2-444*nu-240"},
     {"p-family(2,0)[bessel-ajk]", "nu^4+18*nu^3+95*nu^2+150*nu+78"},
     {"p-family(3,0)[bessel-ajk]", "4*nu^2+36*nu+20"},
     {"p-family(4,0)[bessel-ajk]", "6"},
     {"p-family(0,1)[bessel-ajk]", "12*nu^2+60*nu+80"},
     {"p-family(1,1)[bessel-ajk]", "-8*nu^2-56*nu-76"},
     {"p-family(2,1)[bessel-ajk]", "2*nu^2+18*nu+18"},
     {"p-family(3,1)[bessel-ajk]", "4"},
     {"p-family(0,2)[bessel-ajk]", "6"},
     {"p-family(1,2)[bessel-ajk]", "-4"},
     {"p-family(2,2)[bessel-ajk]", "1"},
     {"p-family(1,0)[bessel-bjk]", "4*nu^2+20*nu+24"},
     {"p-family(2,0)[bessel-bjk]", "1"},
     {"p-family(1,1)[bessel-bjk]", "4"},
     {"u-family(0,0)[bessel-ajk]", "-4*nu^2-12*nu-8"},
     {"u-family(1,0)[bessel-ajk]", "4*nu^2+20*nu+16"},
     {"u-family(2,0)[bessel-ajk]", "1"},
     {"u-family(0,1)[bessel-ajk]", "-4"},
     {"u-family(1,1)[bessel-ajk]", "4"},
     {"u-family(1,0)[bessel-bjk]", "0"}},
    {{"p-family(0,0)[bessel-ajk]", "3*nu^2+9*nu+6"},
     {"p-family(1,0)[bessel-ajk]", "-3*nu^2-15*nu-9"},
     {"p-family(2,0)[bessel-ajk]", "nu^2+7*nu"},
     {"p-family(3,0)[bessel-ajk]", "3"},
     {"p-family(0,1)[bessel-ajk]", "3"},
     {"p-family(1,1)[bessel-ajk]", "-3"},
     {"p-family(2,1)[bessel-ajk]", "1"},
     {"p-family(1,0)[bessel-bjk]", "1"},
     {"u-family(0,0)[bessel-ajk]", "3*nu^2+9*nu+6"},
     {"u-family(1,0)[bessel-ajk]", "1"},
     {"u-family(0,1)[bessel-ajk]", "3"},
     {"u-family(1,0)[bessel-bjk]", "3"}}};

Outcome bessel_bidegree_two() {
  std::ostringstream d;
  GR nu = GR::fraction(1, 2);
  ParamEnv env{{"nu", nu}};
  Context ctx = Context::bessel(nu);
  DarbouxTransform t =
      build_transform(ctx, fourier(ctx, parse("X2*BB + (2*nu - 1)*S + 2*nu^2 - nu", ctx.dialect(), env)));
  CandidateBounds bounds;
  bounds.u_family = FamilyBounds{2, 1};
  bounds.p_family = FamilyBounds{4, 2};
  bounds.include_constant = false;
  EndpointSpec ep = endpoints(1, 1, EndpointMode::symmetric_pair);
  std::vector<CandidatePair> cands = candidate_space(t, 4, 4, bounds);
  SolveResult r = solve_candidates(cands, 4, 4, ep);
  std::vector<OreOp> span;
  for (const auto& b : r.solution_basis) span.push_back(b.x_op);
  int found = 0;
  for (const auto& table : kBesselTables) {
    OreOp target(Var::x);
    for (const auto& c : cands) {
      auto it = table.find(c.provenance.label());
      if (it != table.end()) target += c.x_op.scaled(parse_scalar(it->second, env));
    }
    if (!target.is_zero() && span_contains(span, target)) ++found;
  }
  d << cands.size() << " generators, dimension " << r.dimension << ", " << found << "/2 tabulated solutions in span";
  return {cands.size() == 21 && r.dimension >= 2 && found == 2, d.str()};
}

Outcome order_twenty_two() {
  std::ostringstream d;
  Context ctx = Context::airy();
  ParamEnv env{{"a", GR(1)}, {"b", GR(0)}};
  DarbouxTransform t = build_transform(
      ctx, fourier(ctx, parse("((1 - a^2*b^2 - a^2*x)*Dx^2 + a^2*Dx + a^2*b^4 + 2*a^2*b^2*x + a^2*x^2 - b^2 - x)^2 - a^2",
                              ctx.dialect(), env)));
  EndpointSpec ep = endpoints(2, 2, EndpointMode::finite_plus_infinity);
  SolveResult r = solve(t, 16, 16, ep);
  std::vector<OreOp> span;
  for (const auto& b : r.solution_basis) span.push_back(b.x_op);
  OreOp dai = x_op("Dx^2 - x");
  OreOp inner = dai.pow(4).scaled(35) + dai.pow(5).scaled(84) + dai.pow(6).scaled(70) + dai.pow(7).scaled(20);
  OreOp p_op = OreOp::function(RatFunc(t.p));
  OreOp displayed = left_divide(t.p, right_divide(t.u * inner * t.u_adj, t.p)) +
                    p_op * OreOp::function(RatFunc(parse_poly("1 - 4*x + 10*x^2 - 20*x^3", Var::x))) * p_op;
  bool member = span_contains(span, displayed);
  d << r.stats.candidates << " generators, rank " << r.stats.rank << ", dimension " << r.dimension << " (need >= "
    << kMinDimensionOrder22 << "), displayed operator of order " << displayed.order() << " "
    << (member ? "in" : "not in") << " span";
  return {r.dimension >= kMinDimensionOrder22 && member, d.str()};
}

Outcome dimension_laws() {
  std::ostringstream d;
  int bad = 0;
  for (Context ctx : {Context::exp(), Context::airy(), Context::bessel(GR::fraction(1, 2))}) {
    FourierCache cache(ctx);
    for (int l = 0; l <= 4; ++l) {
      for (int m = 0; m <= 4; ++m) {
        std::vector<OreOp> ops;
        for (const auto& b : sym_basis(cache, ctx, l, m)) ops.push_back(b.expr.x_op);
        int r = rank(coordinatize(ops).matrix, static_cast<int>(ops.size()));
        if (r != l * m + l + m + 1) {
          ++bad;
          d << ctx.describe() << " (" << l << "," << m << ") rank " << r << "; ";
        }
      }
    }
  }
  d << 75 - bad << "/75 (context, l, m) cases match lm + l + m + 1";
  return {bad == 0, d.str()};
}

Outcome property_suites(const std::string& unit_binary) {
  const char* suites =
      "operator algebra laws on random data,symmetric decomposition roundtrip on random data,"
      "concomitant derivative identity on random data,concomitant decomposition identity on random data,"
      "fourier map is an anti-homomorphism,exp fourier images agree with the truncated kernel,"
      "candidates of exp and bessel transforms are sigma invariant,pairing is constant and antisymmetric";
  std::string cmd = "\"" + unit_binary + "\" --test-case=\"" + suites + "\" --minimal > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return {status == 0, "8 randomized suites, each at least 200 cases, via " + unit_binary};
}

// Lagrangian planes by construction: monomials at 0 taking one of each pair {k, 2a-1-k}, and for
// each pair +-c of multiplicity 2b the span of x^k e^{cx}, k < b, together with its sigma-image.
struct Synthesis {
  ExponentMultiset e;
  std::vector<QuasiExp> V;
  std::vector<QuasiExp> partners;  // partners[i] pairs nonzero with V[i]
};

Synthesis synthesize(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<GR> points{1, 2, GR::fraction(1, 2), GR::imag_unit(), GR(1) + GR::imag_unit(), GR::fraction(-3, 2)};
  Synthesis s;
  int budget = pick(1, 3);  // half order
  int a = pick(0, budget);
  if (a > 0) {
    s.e[0] = 2 * a;
    for (int k = 0; k < a; ++k) {
      int lo = k, hi = 2 * a - 1 - k;
      if (pick(0, 1)) std::swap(lo, hi);
      s.V.push_back(QuasiExp::term(Poly::monomial(1, lo), 0));
      s.partners.push_back(QuasiExp::term(Poly::monomial(1, hi), 0));
    }
  }
  std::vector<GR> used;
  int left = budget - a;
  while (left > 1) {
    int b = pick(1, left / 2);
    GR c;
    do {
      c = points[static_cast<std::size_t>(pick(0, static_cast<int>(points.size()) - 1))];
    } while (std::find(used.begin(), used.end(), c) != used.end() || std::find(used.begin(), used.end(), -c) != used.end());
    used.push_back(c);
    s.e[c] = 2 * b;
    s.e[-c] = 2 * b;
    for (int k = 0; k < b; ++k) {
      QuasiExp f = QuasiExp::term(Poly::monomial(1, k), c);
      QuasiExp partner = QuasiExp::term(Poly::monomial(1, 2 * b - 1 - k), -c);
      s.V.push_back(f);
      s.partners.push_back(partner);
      s.V.push_back(f.sigma());
      s.partners.push_back(partner.sigma());
    }
    left -= 2 * b;
  }
  if (s.V.empty()) {
    s.e[0] = 2;
    s.V.push_back(QuasiExp::term(Poly::monomial(1, 1), 0));
    s.partners.push_back(QuasiExp::term(Poly::monomial(1, 0), 0));
  }
  // Same span, scrambled basis: unit upper-triangular recombination.
  std::vector<QuasiExp> mixed = s.V;
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    for (std::size_t j = i + 1; j < mixed.size(); ++j) mixed[i] += s.V[j].scaled(GR::fraction(pick(-3, 3), pick(1, 3)));
  }
  s.partners.resize(s.V.size());
  s.V = mixed;
  return s;
}

bool has_nonzero(const Matrix& m) {
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (!x.is_zero()) return true;
    }
  }
  return false;
}

Outcome lagrangian_correspondence() {
  std::ostringstream d;
  std::mt19937_64 rng(20240613);
  int accepted = 0, perturbed = 0, perturbed_rejected = 0;
  for (int n = 0; n < kLagrangianPlanes; ++n) {
    Synthesis s = synthesize(rng);
    AdelicPlane plane;
    plane.ambient = s.e;
    plane.V = s.V;
    if (is_lagrangian(plane) && is_sigma_stable(plane) && factorization_check(s.V, s.e)) ++accepted;
    // Swap in the partner of one element: still half-dimensional and independent, no longer isotropic.
    for (std::size_t j = 0; j < s.V.size(); ++j) {
      std::vector<QuasiExp> W = s.V;
      W[s.V.size() - 1 - j] = s.partners[j];
      if (W.size() > 1 && s.V.size() - 1 - j == j) continue;
      if (!has_nonzero(concomitant_pairing(s.e, W))) continue;
      ++perturbed;
      bool factors = false;
      try {
        factors = factorization_check(W, s.e);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DependentKernel) {
          --perturbed;
          continue;
        }
      }
      if (!factors) ++perturbed_rejected;
      break;
    }
  }
  d << accepted << "/" << kLagrangianPlanes << " synthesized planes factor, " << perturbed_rejected << "/" << perturbed
    << " perturbed planes rejected";
  return {accepted == kLagrangianPlanes && perturbed >= kLagrangianPlanes / 2 && perturbed_rejected == perturbed,
          d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance gate"};
  bool slow_ok = false;
  std::vector<int> only;
  std::string unit_binary = BISPECTRAL_UNIT_TESTS;
  app.add_flag("--slow-ok", slow_ok, "run the slow order-22 criterion");
  app.add_option("--only", only, "criteria to run");
  app.add_option("--unit-tests", unit_binary, "unit test binary for the property suites");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    const char* name;
    double limit;
    bool slow;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "prolate reproduction", kLimitPerExample, false, prolate},
      {2, "Airy second-order operator", kLimitPerExample, false, airy_second_order},
      {3, "Bessel second-order operator", kLimitPerExample, false, bessel_second_order},
      {4, "rank-1 Grassmannian pipeline", kLimitPerExample, false, rank_one},
      {5, "Bessel bidegree (2,2) tables", kLimitBessel22, false, bessel_bidegree_two},
      {6, "order-22 Airy operator", kLimitOrder22, true, order_twenty_two},
      {7, "symmetric basis dimension laws", kLimitDimensionLaw, false, dimension_laws},
      {8, "property suites", kLimitProperties, false, [&] { return property_suites(unit_binary); }},
      {9, "Lagrangian correspondence", kLimitLagrangian, false, lagrangian_correspondence},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    if (c.slow && !slow_ok) {
      std::cout << "criterion " << c.id << ": SKIP " << c.name << " (needs --slow-ok)\n";
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass && secs < c.limit;
    if (o.pass && !pass) o.detail += "; over the time limit";
    failures += pass ? 0 : 1;
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " " << c.name << " [" << o.detail << "; "
              << time.str() << " s, limit " << c.limit << " s]\n";
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
