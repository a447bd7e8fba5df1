#include "eqloc/lattice.hpp"

#include <numeric>
#include <utility>

namespace eqloc {

namespace {

using ZMat = std::vector<std::vector<Integer>>;

ZMat to_z(const IntMat& m) {
  ZMat out;
  out.reserve(m.size());
  for (const auto& row : m) {
    std::vector<Integer> r;
    r.reserve(row.size());
    for (auto x : row) r.emplace_back(static_cast<long>(x));
    out.push_back(std::move(r));
  }
  return out;
}

Integer bareiss(ZMat a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw LatticeError("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

std::int64_t dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw LatticeError("dot: dimension mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t gcd_of(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

bool is_zero(const IntVec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

bool is_primitive(const IntVec& v) { return gcd_of(v) == 1; }

IntVec primitive_part(const IntVec& v) {
  const auto g = gcd_of(v);
  if (g <= 1) return v;
  IntVec out(v);
  for (auto& x : out) x /= g;
  return out;
}

IntVec negated(const IntVec& v) {
  IntVec out(v);
  for (auto& x : out) x = -x;
  return out;
}

IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw LatticeError("add: dimension mismatch");
  IntVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

IntVec scaled(const IntVec& v, std::int64_t k) {
  IntVec out(v);
  for (auto& x : out) x *= k;
  return out;
}

bool is_canonical_direction(const IntVec& v) {
  for (auto x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return true;
}

IntVec canonical_direction(const IntVec& v) { return is_canonical_direction(v) ? v : negated(v); }

Integer determinant(const IntMat& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw LatticeError("determinant: matrix is not square");
  return bareiss(to_z(m));
}

std::size_t rank_of(const IntMat& rows, std::size_t ncols) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (auto x : r) row.emplace_back(static_cast<long>(x));
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < ncols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

IntMat integer_kernel(const IntMat& rows, std::size_t n) {
  ZMat a = to_z(rows);
  for (const auto& r : a)
    if (r.size() != n) throw LatticeError("integer_kernel: dimension mismatch");
  ZMat u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  // Column operations act on a (all rows) and on u (columns are basis vectors).
  auto col_combine = [&](std::size_t c, std::size_t j, const Integer& s, const Integer& t,
                         const Integer& p, const Integer& q) {
    // new col c = s*c + t*j ; new col j = p*c + q*j
    for (auto& row : a) {
      Integer x = row[c], y = row[j];
      row[c] = s * x + t * y;
      row[j] = p * x + q * y;
    }
    for (auto& row : u) {
      Integer x = row[c], y = row[j];
      row[c] = s * x + t * y;
      row[j] = p * x + q * y;
    }
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < a.size() && pivot < n; ++r) {
    for (std::size_t j = pivot + 1; j < n; ++j) {
      if (a[r][j] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][pivot].get_mpz_t(), a[r][j].get_mpz_t());
      Integer p = -a[r][j] / g;
      Integer q = a[r][pivot] / g;
      col_combine(pivot, j, s, t, p, q);
    }
    if (a[r][pivot] != 0) ++pivot;
  }

  IntMat kernel;
  for (std::size_t c = pivot; c < n; ++c) {
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = to_int64(u[i][c]);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

Integer maximal_minor_gcd(const IntMat& rows) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  const std::size_t n = rows[0].size();
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  combinations(n, k, 0, cur, subsets);
  Integer g = 0;
  for (const auto& cols : subsets) {
    IntMat sub(k, IntVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = rows[i][cols[j]];
    Integer d = determinant(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  }
  return g;
}

std::optional<std::vector<Rational>> solve_combination(const IntMat& rows, const IntVec& x) {
  const std::size_t k = rows.size();
  const std::size_t n = x.size();
  // Augmented n x (k+1) system: columns are the rows, last column is x.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = static_cast<long>(rows[j].at(i));
    a[i][k] = static_cast<long>(x[i]);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < k && r < n; ++col) {
    std::size_t piv = r;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    Rational inv = 1 / a[r][col];
    for (std::size_t j = col; j <= k; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(col);
    ++r;
  }
  if (pivot_cols.size() != k) throw LatticeError("solve_combination: rows are linearly dependent");
  for (std::size_t i = r; i < n; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<Rational> sol(k);
  for (std::size_t i = 0; i < r; ++i) sol[pivot_cols[i]] = a[i][k];
  return sol;
}

IntMat scaled_dual_basis(const IntMat& v, Integer& det_out) {
  const std::size_t n = v.size();
  det_out = determinant(v);
  if (det_out == 0) throw LatticeError("scaled_dual_basis: singular matrix");
  IntMat w(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        IntVec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(v[r][c]);
        minor.push_back(std::move(row));
      }
      Integer c = determinant(minor);
      if ((i + j) % 2 == 1) c = -c;
      w[i][j] = to_int64(c);
    }
  }
  return w;
}

}  // namespace eqloc
