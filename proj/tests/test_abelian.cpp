#include <doctest.h>

#include "oracles.hpp"
#include "thg/abelian.hpp"
#include "thg/error.hpp"

using namespace thg;

namespace {

IntMatrix to_matrix(const oracle::Mat& m, std::size_t cols) {
  std::vector<Vector> rows;
  for (const auto& r : m) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    rows.push_back(v);
  }
  return IntMatrix::from_rows(rows, cols);
}

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

bool is_divisor_chain(const Vector& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] == 0) {
      if (d[i + 1] != 0) return false;
      continue;
    }
    if (d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("extended naturals") {
  CHECK(ExtNat(3) * ExtNat(4) == ExtNat(12));
  CHECK((ExtNat(2) * ExtNat::infinity()).is_infinite());
  CHECK(ExtNat(0) * ExtNat::infinity() == ExtNat(0));
  CHECK(ExtNat(2).pow(10) == ExtNat(1024));
  CHECK(ExtNat::infinity().pow(0).is_one());
  CHECK(ExtNat::infinity().to_string() == "inf");
}

TEST_CASE("canonical form examples") {
  FgAbelian a = canonical_form(0, vec({4, 2}));
  CHECK(a.rank() == 0);
  CHECK(a.torsion() == vec({2, 4}));
  CHECK(canonical_form(0, vec({2, 3})).torsion() == vec({6}));
  FgAbelian f = canonical_form(3, {});
  CHECK(f.rank() == 3);
  CHECK(f.torsion().empty());
  CHECK_THROWS_AS(canonical_form(0, vec({1})), Error);
  try {
    canonical_form(0, vec({0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("canonical form agrees with brute-force element counts") {
  // Z4 x Z2 and Z2 x Z3 by enumeration of element orders.
  for (const auto& t : std::vector<std::vector<long>>{{4, 2}, {2, 3}, {6, 4}, {2, 2, 4}, {3, 9, 6}}) {
    Vector tv;
    for (long x : t) tv.emplace_back(x);
    FgAbelian g = canonical_form(0, tv);
    std::vector<long> factors;
    for (const auto& d : g.torsion()) factors.push_back(d.get_si());
    long order = 1;
    for (long x : t) order *= x;
    for (long k = 1; k <= order; ++k) {
      long brute = 0;
      for (const auto& v : oracle::enumerate_finite(t)) {
        bool killed = true;
        for (std::size_t i = 0; i < t.size(); ++i) killed = killed && (k * v[i]) % t[i] == 0;
        brute += killed;
      }
      CHECK(brute == oracle::killed_by(factors, k));
    }
  }
}

TEST_CASE("canonical form is idempotent and order-insensitive") {
  FgAbelian a = canonical_form(1, vec({12, 8, 6}));
  CHECK(canonical_form(a.rank(), a.torsion()) == a);
  CHECK(canonical_form(1, vec({6, 12, 8})) == a);
  CHECK(canonical_form(1, vec({8, 6, 12})) == a);
}

TEST_CASE("direct products and powers") {
  CHECK(direct_product(FgAbelian::cyclic(2), FgAbelian::cyclic(2)).torsion() == vec({2, 2}));
  CHECK(direct_product(FgAbelian::cyclic(2), FgAbelian::cyclic(3)) == FgAbelian::cyclic(6));
  FgAbelian b = canonical_form(2, vec({2}));
  FgAbelian p = direct_product(FgAbelian::free(1), b);
  CHECK(p.rank() == 3);
  CHECK(p.torsion() == vec({2}));
  CHECK(power(FgAbelian::cyclic(6), 2).torsion() == vec({6, 6}));
  CHECK(power(FgAbelian::free(1), 3) == FgAbelian::free(3));
  CHECK(power(b, 0).is_trivial());

  const std::vector<FgAbelian> sample = {FgAbelian(), FgAbelian::cyclic(4), canonical_form(1, vec({6})),
                                         canonical_form(0, vec({2, 10})), FgAbelian::free(2)};
  for (const auto& x : sample) {
    CHECK(direct_product(x, FgAbelian()) == x);
    for (const auto& y : sample) {
      CHECK(direct_product(x, y) == direct_product(y, x));
      for (const auto& z : sample)
        CHECK(direct_product(direct_product(x, y), z) == direct_product(x, direct_product(y, z)));
    }
  }
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}})).diag == vec({2, 4}));
  CHECK(smith_normal_form(IntMatrix::identity(2)).diag == vec({1, 1}));
  CHECK(smith_normal_form(IntMatrix::from_rows({{0}})).diag == vec({0}));
  CHECK(smith_normal_form(IntMatrix()).diag.empty());
}

TEST_CASE("smith normal form matches determinantal divisors on a random sample") {
  auto sample = oracle::random_matrices(600, 20260101u, -4, 4);
  int checked = 0;
  for (const auto& m : sample) {
    const std::size_t cols = m.front().size();
    IntMatrix a = to_matrix(m, cols);
    SmithForm s = smith_normal_form(a);
    IntMatrix d(a.rows(), a.cols());
    for (std::size_t i = 0; i < s.diag.size(); ++i) d(i, i) = s.diag[i];
    CHECK(s.left * a * s.right == d);
    CHECK(is_divisor_chain(s.diag));
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
    auto expected = oracle::smith_diagonal(m, cols);
    REQUIRE(expected.size() == s.diag.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(abs(s.diag[i]) == expected[i]);
    ++checked;
  }
  CHECK(checked >= 500);
}

TEST_CASE("cokernel examples") {
  FgAbelian c = cokernel(FgAbelian::free(2), IntMatrix::from_rows({{2, 0}}));
  CHECK(c.rank() == 1);
  CHECK(c.torsion() == vec({2}));
  CHECK(cokernel(FgAbelian::free(1), IntMatrix(0, 1)) == FgAbelian::free(1));
  CHECK(cokernel(FgAbelian::free(2), IntMatrix::identity(2)).is_trivial());
  CHECK_THROWS_AS(cokernel(FgAbelian::free(2), IntMatrix::from_rows({{1, 2, 3}})), Error);
}

TEST_CASE("cokernel and subgroup index match coset enumeration") {
  auto sample = oracle::random_matrices(600, 7u, -4, 4);
  int enumerated = 0;
  for (const auto& m : sample) {
    const std::size_t cols = m.front().size();
    IntMatrix a = to_matrix(m, cols);
    FgAbelian c = cokernel(FgAbelian::free(cols), a);
    auto dd = oracle::determinantal_divisors(m, cols);
    const bool full_rank = dd.size() == cols && dd.back() != 0;
    CHECK(c.is_finite() == full_rank);
    ExtNat idx = subgroup_index(FgAbelian::free(cols), a);
    if (!full_rank) {
      CHECK(idx.is_infinite());
      continue;
    }
    const long d = Integer(abs(dd.back())).get_si();
    CHECK(idx == ExtNat(d));
    CHECK(c.order() == ExtNat(d));
    long total = 1;
    for (std::size_t i = 0; i < cols; ++i) total *= d;
    if (total > 300000) continue;
    std::vector<long> factors;
    for (const auto& t : c.torsion()) factors.push_back(t.get_si());
    for (const auto& [k, count] : oracle::cokernel_kill_counts(m, cols, d)) CHECK(count == oracle::killed_by(factors, k));
    ++enumerated;
  }
  CHECK(enumerated >= 200);
}

TEST_CASE("subgroup index examples") {
  CHECK(subgroup_index(FgAbelian::free(1), IntMatrix::from_rows({{2}})) == ExtNat(2));
  CHECK(subgroup_index(FgAbelian::cyclic(2), IntMatrix::from_rows({{1}})).is_one());
  CHECK(subgroup_index(FgAbelian::free(2), IntMatrix::from_rows({{1, 0}})).is_infinite());
  CHECK_THROWS_AS(subgroup_index(FgAbelian::free(2), IntMatrix::from_rows({{1}})), Error);
}

TEST_CASE("subgroup index in finite ambients matches closure") {
  const std::vector<std::vector<long>> ambients = {{2, 4}, {2, 2, 2}, {12}, {3, 6}};
  auto sample = oracle::random_matrices(400, 99u, -5, 5);
  for (const auto& t : ambients) {
    Vector tv;
    for (long x : t) tv.emplace_back(x);
    FgAbelian g = canonical_form(0, tv);
    REQUIRE(g.torsion() == tv);  // ambients chosen already in invariant-factor form
    for (const auto& m : sample) {
      if (m.front().size() != t.size()) continue;
      CHECK(subgroup_index(g, to_matrix(m, t.size())) == ExtNat(oracle::finite_subgroup_index(t, m)));
    }
  }
}

TEST_CASE("full generator matrices have index one") {
  for (const auto& g : {FgAbelian::free(3), canonical_form(1, vec({2, 4})), FgAbelian::cyclic(12)})
    CHECK(subgroup_index(g, IntMatrix::identity(g.generator_count())).is_one());
}

TEST_CASE("isomorphism of abelian groups") {
  CHECK(is_isomorphic(direct_product(FgAbelian::cyclic(2), FgAbelian::cyclic(3)), FgAbelian::cyclic(6)));
  CHECK_FALSE(is_isomorphic(FgAbelian::cyclic(4), canonical_form(0, vec({2, 2}))));
  CHECK(is_isomorphic(FgAbelian::free(2), FgAbelian::free(2)));
}

TEST_CASE("left kernel and integer solving") {
  auto sample = oracle::random_matrices(300, 5u, -3, 3);
  for (const auto& m : sample) {
    const std::size_t cols = m.front().size();
    IntMatrix a = to_matrix(m, cols);
    IntMatrix k = left_kernel(a);
    if (!k.empty()) CHECK((k * a) == IntMatrix(k.rows(), a.cols()));
    CHECK(k.rows() + matrix_rank(a) == a.rows());
    // Right-hand sides in the column image are always solvable.
    Vector x(cols, Integer(1));
    Vector rhs = a.apply(x);
    auto sol = solve_integer(a, rhs);
    REQUIRE(sol);
    CHECK(a.apply(*sol) == rhs);
  }
  CHECK_FALSE(solve_integer(IntMatrix::from_rows({{2}}), vec({1})));
}
