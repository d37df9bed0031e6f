#include "bispectral/linalg.hpp"

#include <algorithm>
#include <mutex>

#include "bispectral/error.hpp"

namespace bispectral {

namespace modular {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 reduce_int(const mpz_class& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

bool reduce_rational(const mpq_class& q, u64 p, u64& out) {
  u64 d = reduce_int(q.get_den(), p);
  if (d == 0) return false;
  out = mulmod(reduce_int(q.get_num(), p), invmod(d, p), p);
  return true;
}

bool reduce(const GaussianRational& z, const Prime& pr, u64& out) {
  u64 re = 0;
  u64 im = 0;
  if (!reduce_rational(z.re(), pr.p, re)) return false;
  if (!z.is_real()) {
    if (!reduce_rational(z.im(), pr.p, im)) return false;
  }
  out = (re + mulmod(im, pr.sqrt_minus_one, pr.p)) % pr.p;
  return true;
}

std::vector<Prime> generate_primes(std::size_t count) {
  std::vector<Prime> out;
  mpz_class candidate = (mpz_class(1) << 62) - 1;
  while (out.size() < count) {
    if (mpz_fdiv_ui(candidate.get_mpz_t(), 4) == 1 && mpz_probab_prime_p(candidate.get_mpz_t(), 40) > 0) {
      u64 p = candidate.get_ui();
      for (u64 g = 2;; ++g) {
        u64 r = powmod(g, (p - 1) / 4, p);
        if (mulmod(r, r, p) == p - 1) {
          out.push_back({p, r});
          break;
        }
      }
    }
    candidate -= 1;
  }
  return out;
}

}  // namespace

const Prime& prime(std::size_t index) {
  static std::mutex mu;
  static std::vector<Prime> primes;
  std::lock_guard<std::mutex> lock(mu);
  if (index >= primes.size()) primes = generate_primes(index + 4);
  return primes[index];
}

RowProfile row_profile(const Matrix& a, int cols, const Prime& pr) {
  const u64 p = pr.p;
  RowProfile prof;
  std::vector<std::vector<u64>> basis;
  std::vector<int> basis_pivot;
  std::vector<u64> row(static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(basis.size()) == cols) break;
    bool any = false;
    for (int j = 0; j < cols; ++j) {
      if (!reduce(a[i][static_cast<std::size_t>(j)], pr, row[static_cast<std::size_t>(j)])) {
        prof.ok = false;
        return prof;
      }
      any = any || row[static_cast<std::size_t>(j)] != 0;
    }
    if (!any) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto c = static_cast<std::size_t>(basis_pivot[b]);
      u64 coef = row[c];
      if (coef == 0) continue;
      const auto& br = basis[b];
      for (std::size_t j = c; j < static_cast<std::size_t>(cols); ++j) {
        if (br[j] != 0) row[j] = submod(row[j], mulmod(coef, br[j], p), p);
      }
    }
    int lead = -1;
    for (int j = 0; j < cols; ++j) {
      if (row[static_cast<std::size_t>(j)] != 0) {
        lead = j;
        break;
      }
    }
    if (lead < 0) continue;
    u64 inv = invmod(row[static_cast<std::size_t>(lead)], p);
    for (auto& v : row) v = mulmod(v, inv, p);
    for (auto& br : basis) {
      u64 coef = br[static_cast<std::size_t>(lead)];
      if (coef == 0) continue;
      for (std::size_t j = static_cast<std::size_t>(lead); j < static_cast<std::size_t>(cols); ++j) {
        if (row[j] != 0) br[j] = submod(br[j], mulmod(coef, row[j], p), p);
      }
    }
    basis.push_back(row);
    basis_pivot.push_back(lead);
    prof.rows.push_back(static_cast<int>(i));
  }
  prof.pivots = basis_pivot;
  std::sort(prof.pivots.begin(), prof.pivots.end());
  return prof;
}

}  // namespace modular

namespace {

// Integral entries: mpz_class for real matrices, Gaussian integers otherwise.
struct RealRing {
  using T = mpz_class;
  static T make(const mpz_class& re, const mpz_class&) { return re; }
  static bool zero(const T& a) { return sgn(a) == 0; }
  static std::size_t bits(const T& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }
  // out = (piv*a - b*c) / prev
  static void update(T& out, const T& piv, const T& b, const T& c, const T& prev, T& tmp) {
    mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), out.get_mpz_t());
    mpz_submul(tmp.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
    mpz_divexact(out.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
  }
  static void scale(T& out, const T& piv, const T& prev, T& tmp) {
    mpz_mul(tmp.get_mpz_t(), piv.get_mpz_t(), out.get_mpz_t());
    mpz_divexact(out.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
  }
  static T mul(const T& a, const T& b) { return a * b; }
  static void add_to(T& acc, const T& v) { acc += v; }
  static T neg(const T& a) { return -a; }
  static GaussianRational ratio(const T& a, const T& b) {
    mpq_class q(a, b);
    q.canonicalize();
    return GaussianRational(q);
  }
  static T one() { return 1; }
};

struct GaussInt {
  mpz_class re;
  mpz_class im;
};

struct GaussRing {
  using T = GaussInt;
  static T make(const mpz_class& re, const mpz_class& im) { return {re, im}; }
  static bool zero(const T& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }
  static std::size_t bits(const T& a) {
    return mpz_sizeinbase(a.re.get_mpz_t(), 2) + mpz_sizeinbase(a.im.get_mpz_t(), 2);
  }
  static T mul(const T& a, const T& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  static T sub(const T& a, const T& b) { return {a.re - b.re, a.im - b.im}; }
  static T divexact(const T& a, const T& b) {
    if (sgn(b.im) == 0) {
      T r;
      mpz_divexact(r.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
      mpz_divexact(r.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
      return r;
    }
    mpz_class n = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    T r;
    mpz_divexact(r.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(r.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
    return r;
  }
  static void update(T& out, const T& piv, const T& b, const T& c, const T& prev, T&) {
    out = divexact(sub(mul(piv, out), mul(b, c)), prev);
  }
  static void scale(T& out, const T& piv, const T& prev, T&) { out = divexact(mul(piv, out), prev); }
  static void add_to(T& acc, const T& v) {
    acc.re += v.re;
    acc.im += v.im;
  }
  static T neg(const T& a) { return {-a.re, -a.im}; }
  static GaussianRational ratio(const T& a, const T& b) {
    GaussianRational num(mpq_class(a.re), mpq_class(a.im));
    GaussianRational den(mpq_class(b.re), mpq_class(b.im));
    return num / den;
  }
  static T one() { return {1, 0}; }
};

template <class R>
std::vector<typename R::T> integral_row(const Vector& row) {
  mpz_class l = 1;
  for (const auto& z : row) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.im().get_den_mpz_t());
  }
  std::vector<typename R::T> out;
  out.reserve(row.size());
  for (const auto& z : row) {
    mpz_class re = z.re().get_num() * (l / z.re().get_den());
    mpz_class im = z.im().get_num() * (l / z.im().get_den());
    out.push_back(R::make(re, im));
  }
  return out;
}

template <class R>
struct ExactResult {
  std::vector<int> pivots;
  std::vector<int> free_cols;
  std::vector<std::vector<typename R::T>> int_basis;  // integral kernel vectors
  std::vector<Vector> basis;
};

// Fraction-free Gauss-Jordan elimination on the given integral rows.
template <class R>
ExactResult<R> exact_kernel(std::vector<std::vector<typename R::T>> m, int cols) {
  using T = typename R::T;
  const std::size_t nrows = m.size();
  T prev = R::one();
  T tmp;
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < nrows; ++c) {
    auto cc = static_cast<std::size_t>(c);
    std::size_t best = nrows;
    std::size_t best_bits = 0;
    for (std::size_t i = r; i < nrows; ++i) {
      if (R::zero(m[i][cc])) continue;
      std::size_t b = R::bits(m[i][cc]);
      if (best == nrows || b < best_bits) {
        best = i;
        best_bits = b;
      }
    }
    if (best == nrows) continue;
    std::swap(m[r], m[best]);
    const std::vector<T> prow = m[r];
    const T piv = prow[cc];
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      auto& row = m[i];
      const T factor = row[cc];
      const bool eliminate = !R::zero(factor);
      for (std::size_t j = 0; j < static_cast<std::size_t>(cols); ++j) {
        if (j == cc) continue;
        if (eliminate && !R::zero(prow[j])) {
          R::update(row[j], piv, factor, prow[j], prev, tmp);
        } else if (!R::zero(row[j])) {
          R::scale(row[j], piv, prev, tmp);
        }
      }
      row[cc] = T();
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  ExactResult<R> out;
  out.pivots = pivots;
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int pc : pivots) is_pivot[static_cast<std::size_t>(pc)] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    out.free_cols.push_back(f);
    std::vector<T> iv(static_cast<std::size_t>(cols));
    Vector v(static_cast<std::size_t>(cols));
    iv[static_cast<std::size_t>(f)] = prev;
    v[static_cast<std::size_t>(f)] = GaussianRational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      auto pc = static_cast<std::size_t>(pivots[i]);
      const T& entry = m[i][static_cast<std::size_t>(f)];
      if (R::zero(entry)) continue;
      // Every pivot entry equals the final pivot `prev`.
      iv[pc] = R::neg(entry);
      v[pc] = -R::ratio(entry, m[i][pc]);
    }
    out.int_basis.push_back(std::move(iv));
    out.basis.push_back(std::move(v));
  }
  return out;
}

template <class R>
bool annihilates(const std::vector<typename R::T>& row, const std::vector<typename R::T>& v) {
  typename R::T acc{};
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (R::zero(row[j]) || R::zero(v[j])) continue;
    R::add_to(acc, R::mul(row[j], v[j]));
  }
  return R::zero(acc);
}

template <class R>
Kernel nullspace_impl(const Matrix& a, int cols) {
  Kernel k;
  std::vector<int> selected;
  for (std::size_t pi = 0;; ++pi) {
    auto prof = modular::row_profile(a, cols, modular::prime(pi));
    if (prof.ok) {
      selected = prof.rows;
      break;
    }
    if (pi > 64) throw Error(ErrorKind::InvalidArgument, "no usable prime for modular elimination");
  }
  if (static_cast<int>(selected.size()) == cols) {
    k.rank = cols;
    for (int c = 0; c < cols; ++c) k.pivots.push_back(c);
    return k;
  }
  std::vector<std::vector<typename R::T>> int_rows(a.size());
  std::vector<bool> converted(a.size(), false);
  auto row_of = [&](std::size_t i) -> const std::vector<typename R::T>& {
    if (!converted[i]) {
      int_rows[i] = integral_row<R>(a[i]);
      converted[i] = true;
    }
    return int_rows[i];
  };
  std::vector<bool> in_selection(a.size(), false);
  for (int i : selected) in_selection[static_cast<std::size_t>(i)] = true;
  while (true) {
    std::vector<std::vector<typename R::T>> sub;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (in_selection[i]) sub.push_back(row_of(i));
    }
    ExactResult<R> ex = exact_kernel<R>(std::move(sub), cols);
    std::size_t failing = a.size();
    for (std::size_t i = 0; i < a.size() && failing == a.size(); ++i) {
      if (in_selection[i]) continue;
      for (const auto& v : ex.int_basis) {
        if (!annihilates<R>(row_of(i), v)) {
          failing = i;
          break;
        }
      }
    }
    if (failing == a.size()) {
      k.basis = std::move(ex.basis);
      k.pivots = std::move(ex.pivots);
      k.rank = static_cast<int>(k.pivots.size());
      return k;
    }
    in_selection[failing] = true;
  }
}

bool all_real(const Matrix& a) {
  for (const auto& row : a) {
    for (const auto& z : row) {
      if (!z.is_real()) return false;
    }
  }
  return true;
}

}  // namespace

Kernel nullspace(const Matrix& a, int cols) {
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix");
  }
  if (cols == 0) return {};
  if (all_real(a)) return nullspace_impl<RealRing>(a, cols);
  return nullspace_impl<GaussRing>(a, cols);
}

std::vector<int> independent_columns(const Matrix& a, int cols) { return nullspace(a, cols).pivots; }

int rank(const Matrix& a, int cols) { return nullspace(a, cols).rank; }

Vector mat_vec(const Matrix& a, const Vector& v) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    GaussianRational acc(0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (a[i][j].is_zero() || v[j].is_zero()) continue;
      acc += a[i][j] * v[j];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace bispectral
