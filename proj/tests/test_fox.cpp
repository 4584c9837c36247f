#include <doctest.h>

#include "oracles.hpp"
#include "thg/error.hpp"
#include "thg/fox.hpp"

using namespace thg;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

}  // namespace

TEST_CASE("multiplicity examples") {
  CHECK(fox::multiplicities(3, 2).gamma == 2);
  auto m = fox::multiplicities(4, 2);
  CHECK(m.alpha == 1);
  CHECK(m.beta == 1);
  CHECK(m.gamma == 3);
  CHECK(m.beta + m.gamma == 4);
  auto b = fox::multiplicities(1, 1);
  CHECK(b.gamma == 1);
  CHECK(b.alpha == 0);
  CHECK_THROWS_AS(fox::multiplicities(3, 4), Error);
  CHECK_THROWS_AS(fox::multiplicities(3, 0), Error);
}

TEST_CASE("Pascal and telescoping identities through n = 30") {
  for (int n = 1; n <= 30; ++n)
    for (int i = 1; i <= n; ++i) {
      auto t = fox::multiplicities(n, i);
      CHECK(t.alpha == oracle::binomial(n - 2, i - 2));
      CHECK(t.beta == oracle::binomial(n - 1, i - 2));
      CHECK(t.gamma == oracle::binomial(n - 1, i - 1));
      CHECK(t.beta + t.gamma == oracle::binomial(n, i - 1));
      if (i >= 2) {
        Integer sum = 0;
        for (int m = i; m <= n; ++m) sum += oracle::binomial(m - 2, i - 2);
        CHECK(sum == t.gamma);
      }
      CHECK(fox::stacked_multiplicity(n, i) == t.gamma);
    }
}

TEST_CASE("tau examples") {
  for (const auto& name : cat().space_names()) {
    SpaceModel x = cat().space(name);
    TowerSummary t = fox::tau_invariants(x, 1);
    CHECK(t.layers.empty());
    CHECK(t.finite_order() == pi1_order(x.pi1));
  }
  SpaceModel s3 = cat().space("S3");
  TowerSummary t4 = fox::tau_invariants(s3, 4);
  REQUIRE(t4.layers.size() == 3);
  CHECK(t4.layers[0].multiplicity == 3);  // pi_2 = 0
  CHECK(t4.layers[1].degree == 3);
  CHECK(t4.layers[1].multiplicity == 3);
  CHECK(t4.layers[2].multiplicity == 1);
  CHECK(t4.free_rank() == 3);
  CHECK(t4.finite_order().is_infinite());

  SpaceModel rp3 = cat().space("RP3");
  TowerSummary r3 = fox::tau_invariants(rp3, 3);
  CHECK(r3.base.order == ExtNat(2));
  CHECK(r3.layers.back().group == FgAbelian::free(1));
  CHECK(r3.layers.back().multiplicity == 1);
  CHECK(r3.free_rank() == 1);
  CHECK(r3.is_direct_product);

  CHECK_THROWS_AS(fox::tau_invariants(s3, 9), Error);
  try {
    fox::tau_invariants(s3, 9);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  CHECK_FALSE(fox::tau_invariants(cat().space("S2"), 3).is_direct_product);
}

TEST_CASE("finite order is the product of layer orders") {
  SpaceModel x = cat().space("S3/Q8");
  for (int n = 1; n <= 2; ++n) {
    TowerSummary t = fox::tau_invariants(x, n);
    Integer expected = 8;
    for (int i = 2; i <= n; ++i) {
      ExtNat o = x.pi_at(i).order();
      REQUIRE(o.is_finite());
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), o.value().get_mpz_t(), oracle::binomial(n - 1, i - 1).get_ui());
      expected *= p;
    }
    CHECK(t.finite_order() == ExtNat(expected));
  }
}

TEST_CASE("loop-space kernel") {
  SpaceModel s3 = cat().space("S3");
  TowerSummary k2 = fox::loop_tau_invariants(s3, 2);
  REQUIRE(k2.layers.size() == 1);
  CHECK(k2.layers[0].multiplicity == 1);
  TowerSummary k4 = fox::loop_tau_invariants(s3, 4);
  CHECK(k4.free_rank() == 2);  // pi_3 twice
  CHECK(k4.layers[2].group == FgAbelian::cyclic(2));
  CHECK(k4.layers[2].multiplicity == 1);
  TowerSummary t = fox::loop_tau_invariants(cat().space("T3"), 3);
  CHECK(t.finite_order().is_one());
  CHECK_THROWS_AS(fox::loop_tau_invariants(s3, 1), Error);
}

TEST_CASE("split sequence checks pass on every catalog space") {
  for (const auto& name : cat().space_names()) {
    SpaceModel x = cat().space(name);
    for (int n = 2; n <= x.truncation; ++n) {
      CheckReport r = fox::fox_sequence_check(x, n);
      CHECK(r.entries.size() == 3);
      for (const auto& e : r.entries) {
        CAPTURE(e.detail);
        CHECK(e.status == CheckStatus::Pass);
      }
    }
  }
}

TEST_CASE("Gottlieb predicates") {
  CHECK(fox::is_n_gottlieb(cat().space("S3/Z4"), 1) == Verdict::True);
  CHECK(fox::is_n_gottlieb(cat().space("S3/Q8"), 1) == Verdict::False);
  CHECK(fox::is_n_gottlieb(cat().space("S3"), 1) == Verdict::True);
  CHECK(fox::is_n_gottlieb(cat().space("S2"), 2) == Verdict::False);
  CHECK(fox::is_n_gottlieb(cat().space("S2"), 3) == Verdict::Indeterminate);
  CHECK(*fox::gottlieb_index(cat().space("S3/Q8"), 1) == ExtNat(4));
  CHECK(fox::gottlieb_group(cat().space("S3/Q8"), 1) == FgAbelian::cyclic(2));
  CHECK(fox::gottlieb_group(cat().space("RP3"), 1) == FgAbelian::cyclic(2));
}

TEST_CASE("Gottlieb-Fox equivalence on the catalog") {
  for (const auto& name : cat().space_names()) {
    SpaceModel x = cat().space(name);
    CheckReport r = fox::gottlieb_fox_equivalence_check(x, x.truncation);
    for (const auto& e : r.entries) {
      CAPTURE(name);
      CAPTURE(e.detail);
      CHECK_FALSE(is_failure(e.status));
    }
  }
  SpaceModel rp3 = cat().space("RP3");
  for (int n = 1; n <= 6; ++n) {
    CHECK(fox::is_n_gottlieb(rp3, n) == Verdict::True);
    CHECK(fox::is_n_gottlieb_fox(rp3, n) == Verdict::True);
  }
  SpaceModel q = cat().space("S3/Q8");
  CHECK(fox::is_n_gottlieb_fox(q, 1) == Verdict::False);
  CheckReport r = fox::gottlieb_fox_equivalence_check(q, 1);
  CHECK(r.entries.front().status == CheckStatus::Pass);
  CHECK(r.entries.front().detail.find("4") != std::string::npos);
  SpaceModel t3 = cat().space("T3");
  for (int n = 1; n <= 6; ++n) CHECK(fox::is_n_gottlieb_fox(t3, n) == Verdict::True);
}

TEST_CASE("Gottlieb-Fox invariants") {
  fox::GottliebFox s2 = fox::gottlieb_fox_invariants(cat().space("S2"), 3);
  CHECK_FALSE(s2.summary);
  CHECK(s2.missing == std::vector<int>{3});
  fox::GottliebFox rp3 = fox::gottlieb_fox_invariants(cat().space("RP3"), 1);
  REQUIRE(rp3.summary);
  CHECK(rp3.summary->base.order == ExtNat(2));
  fox::GottliebFox t3 = fox::gottlieb_fox_invariants(cat().space("T3"), 2);
  REQUIRE(t3.summary);
  CHECK(t3.summary->free_rank() == 3);
}
