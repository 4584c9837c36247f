#pragma once

// Brute-force reference computations used to cross-check the library. None of
// these call into the code under test beyond plain data accessors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Int = mpz_class;
using Mat = std::vector<std::vector<long>>;

// Determinant by cofactor expansion.
inline Int det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Int term = m[0][c] * det(minor);
    out += (c % 2 == 0) ? term : Int(-term);
  }
  return out;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Determinantal divisors d_k = gcd of all k x k minors, k = 1..min(rows, cols).
inline std::vector<Int> determinantal_divisors(const Mat& m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<Int> out;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Mat sub;
        for (auto i : r) {
          std::vector<long> row;
          for (auto j : c) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        Int d = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    out.push_back(g);
  }
  return out;
}

// Invariant factors s_k = d_k / d_{k-1}; zeros once a d_k vanishes.
inline std::vector<Int> smith_diagonal(const Mat& m, std::size_t cols) {
  std::vector<Int> d = determinantal_divisors(m, cols), out;
  Int prev = 1;
  for (const auto& dk : d) {
    if (dk == 0 || prev == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

// Cokernel of the relation rows of `m` in Z^n, by enumerating Z^n modulo d,
// where d > 0 is a multiple of the cokernel exponent (for full column rank,
// the gcd of the maximal minors). Returns the number of cokernel elements x
// with k*x = 0, for every k dividing d, keyed by k.
inline std::map<long, long> cokernel_kill_counts(const Mat& m, std::size_t n, long d) {
  std::map<long, long> out;
  // Encode vectors mod d as integers in [0, d^n).
  long total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= d;
  auto encode = [&](const std::vector<long>& v) {
    long code = 0;
    for (std::size_t i = 0; i < n; ++i) code = code * d + ((v[i] % d) + d) % d;
    return code;
  };
  auto decode = [&](long code) {
    std::vector<long> v(n);
    for (std::size_t i = n; i-- > 0;) {
      v[i] = code % d;
      code /= d;
    }
    return v;
  };
  // Image of the relation lattice mod d, by closure under adding rows.
  std::vector<char> in_lattice(static_cast<std::size_t>(total), 0);
  std::vector<long> queue{0};
  in_lattice[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::vector<long> v = decode(queue[q]);
    for (const auto& row : m) {
      std::vector<long> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + row[i];
      long c = encode(w);
      if (!in_lattice[static_cast<std::size_t>(c)]) {
        in_lattice[static_cast<std::size_t>(c)] = 1;
        queue.push_back(c);
      }
    }
  }
  const long lattice = static_cast<long>(queue.size());
  for (long k = 1; k <= d; ++k) {
    if (d % k) continue;
    long killed = 0;
    for (long code = 0; code < total; ++code) {
      std::vector<long> v = decode(code);
      for (auto& x : v) x *= k;
      if (in_lattice[static_cast<std::size_t>(encode(v))]) ++killed;
    }
    out[k] = killed / lattice;
  }
  return out;
}

// Elements of a finite abelian group Z_{t1} x ... x Z_{tr}, as coordinate tuples.
inline std::vector<std::vector<long>> enumerate_finite(const std::vector<long>& torsion) {
  std::vector<std::vector<long>> out{{}};
  for (long t : torsion) {
    std::vector<std::vector<long>> next;
    for (const auto& v : out)
      for (long x = 0; x < t; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

// Index of the subgroup generated by `gens` in Z_{t1} x ... x Z_{tr}, by closure.
inline long finite_subgroup_index(const std::vector<long>& torsion, const Mat& gens) {
  std::set<std::vector<long>> seen{std::vector<long>(torsion.size(), 0)};
  std::vector<std::vector<long>> queue(seen.begin(), seen.end());
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& g : gens) {
      std::vector<long> w(torsion.size());
      for (std::size_t i = 0; i < torsion.size(); ++i) w[i] = ((queue[q][i] + g[i]) % torsion[i] + torsion[i]) % torsion[i];
      if (seen.insert(w).second) queue.push_back(w);
    }
  long order = 1;
  for (long t : torsion) order *= t;
  return order / static_cast<long>(seen.size());
}

// Invariant factors of a finite abelian group from its element-order counts:
// the number of elements killed by k is prod gcd(k, d_j).
inline long killed_by(const std::vector<long>& factors, long k) {
  long out = 1;
  for (long d : factors) out *= std::gcd(k, d);
  return out;
}

using Table = std::vector<std::vector<int>>;

// Exhaustive isomorphism search over all bijections fixing the identity.
inline bool isomorphic_by_permutation(const Table& a, int ea, const Table& b, int eb) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;
  std::vector<int> rest_a, rest_b;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (i != ea) rest_a.push_back(i);
    if (i != eb) rest_b.push_back(i);
  }
  std::sort(rest_b.begin(), rest_b.end());
  do {
    std::vector<int> f(n);
    f[static_cast<std::size_t>(ea)] = eb;
    for (std::size_t i = 0; i < rest_a.size(); ++i) f[static_cast<std::size_t>(rest_a[i])] = rest_b[i];
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        ok = f[static_cast<std::size_t>(a[x][y])] == b[static_cast<std::size_t>(f[x])][static_cast<std::size_t>(f[y])];
    if (ok) return true;
  } while (std::next_permutation(rest_b.begin(), rest_b.end()));
  return false;
}

// Binomial coefficients by Pascal's rule.
inline Int binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  std::vector<Int> row{1};
  for (long r = 1; r <= a; ++r) {
    std::vector<Int> next(static_cast<std::size_t>(r) + 1, Int(1));
    for (long k = 1; k < r; ++k) next[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k - 1)] + row[static_cast<std::size_t>(k)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(b)];
}

// Fixed pseudorandom sample of integer matrices with entries in [lo, hi].
inline std::vector<Mat> random_matrices(std::size_t count, std::uint32_t seed, long lo, long hi) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> entry(lo, hi);
  std::uniform_int_distribution<int> dim(1, 3);
  std::vector<Mat> out;
  for (std::size_t i = 0; i < count; ++i) {
    int r = dim(rng), c = dim(rng);
    Mat m(static_cast<std::size_t>(r), std::vector<long>(static_cast<std::size_t>(c)));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    out.push_back(m);
  }
  return out;
}

}  // namespace oracle
