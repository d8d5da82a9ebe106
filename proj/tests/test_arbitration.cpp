#include <doctest.h>

#include <cmath>
#include <vector>

#include "tcsim/arbitration.hpp"
#include "tcsim/errors.hpp"
#include "tcsim/rng.hpp"

using namespace tcsim;

TEST_CASE("window mean over full, partial and evicting buffers") {
  SUBCASE("full window") {
    DocWindow w(3);
    w.push(1.0, 0.0);
    w.push(1.0, 0.0);
    CHECK(w.push(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("partial window averages what exists") {
    DocWindow w(3);
    w.push(0.0, 0.0);
    CHECK(w.push(3.0, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(w.size() == 2);
  }
  SUBCASE("oldest value is evicted") {
    DocWindow w(2);
    w.push(1.0, 0.0);
    w.push(2.0, 0.0);
    CHECK(w.push(4.0, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(w.size() == 2);
  }
  SUBCASE("difference enters as an absolute value") {
    DocWindow w(2);
    CHECK(w.push(30.0, 32.5) == doctest::Approx(2.5).epsilon(1e-15));
  }
  SUBCASE("length must be positive") {
    CHECK_THROWS_AS(DocWindow(0), ConfigError);
  }
}

TEST_CASE("degree of conflict values") {
  const ArbitratorConfig cfg;
  SUBCASE("agreeing sensors give negligible conflict") {
    const double f0 = degree_of_conflict(0.0, cfg);
    CHECK(f0 == doctest::Approx(1.0 / (1.0 + std::exp(10.0))).epsilon(1e-12));
    CHECK(f0 >= 4.5e-5);
    CHECK(f0 <= 4.6e-5);
  }
  SUBCASE("center maps to one half") {
    CHECK(degree_of_conflict(1.0, cfg) == 0.5);
  }
  SUBCASE("two meters of disagreement is near-certain conflict") {
    CHECK(degree_of_conflict(2.0, cfg) ==
          doctest::Approx(0.9999546).epsilon(1e-7));
  }
}

TEST_CASE("degree of conflict is strictly increasing") {
  // Doubles saturate to 1.0 beyond z ~ 4.4; strictness is only observable
  // below that, non-strict monotonicity everywhere.
  const ArbitratorConfig cfg;
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double z = 4.0 * i / 1000.0;
    const double f = degree_of_conflict(z, cfg);
    CHECK(f > prev);
    CHECK(f > 0.0);
    CHECK(f < 1.0);
    prev = f;
  }
  prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double f = degree_of_conflict(5.0 * i / 1000.0, cfg);
    CHECK(f >= prev);
    CHECK(f > 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
}

TEST_CASE("degree of conflict is point-symmetric about (center, 1/2)") {
  const ArbitratorConfig cfg;
  for (int i = 0; i <= 1000; ++i) {
    const double d = 4.0 * i / 1000.0;
    const double sum =
        degree_of_conflict(1.0 - d, cfg) + degree_of_conflict(1.0 + d, cfg);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("authority allocation") {
  ArbitratorConfig cfg;
  cfg.doc_threshold = 0.5;
  SUBCASE("below threshold the automation drives") {
    const auto [la, lh] = allocate_authority(0.3, cfg);
    CHECK(la == 1.0);
    CHECK(lh == 0.0);
  }
  SUBCASE("the boundary falls to the human") {
    const auto [la, lh] = allocate_authority(0.5, cfg);
    CHECK(la == 0.0);
    CHECK(lh == 1.0);
  }
  SUBCASE("above threshold the human drives") {
    const auto [la, lh] = allocate_authority(0.9, cfg);
    CHECK(la == 0.0);
    CHECK(lh == 1.0);
  }
  SUBCASE("weights always sum to one") {
    NoiseStream rng(3);
    for (int i = 0; i < 10000; ++i) {
      const auto [la, lh] = allocate_authority(rng.uniform(), cfg);
      CHECK(la + lh == 1.0);
    }
  }
  SUBCASE("memoryless: a replayed sequence reproduces the same split") {
    NoiseStream rng(4);
    std::vector<double> docs;
    for (int i = 0; i < 100; ++i) docs.push_back(rng.uniform());
    std::vector<double> first;
    for (double d : docs) first.push_back(allocate_authority(d, cfg).first);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      CHECK(allocate_authority(docs[i], cfg).first == first[i]);
    }
  }
}

TEST_CASE("acceleration blending") {
  SUBCASE("full automation authority passes its command through") {
    CHECK(blend_acceleration(-123.0, 2.0, 0.0, 1.0) == 2.0);
  }
  SUBCASE("full human authority passes its command through") {
    CHECK(blend_acceleration(-1.5, 99.0, 1.0, 0.0) == -1.5);
  }
  SUBCASE("an even split averages") {
    CHECK(blend_acceleration(1.0, 3.0, 0.5, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("weights that do not sum to one are a contract violation") {
    CHECK_THROWS_AS(blend_acceleration(1.0, 2.0, 0.6, 0.6), ContractViolation);
    CHECK_THROWS_AS(blend_acceleration(1.0, 2.0, 0.0, 0.0), ContractViolation);
  }
  SUBCASE("output stays in the hull of the two commands") {
    NoiseStream rng(5);
    for (int i = 0; i < 2000; ++i) {
      const double ah = 4.0 * rng.normal();
      const double aa = 4.0 * rng.normal();
      const double lh = rng.uniform();
      const double blended = blend_acceleration(ah, aa, lh, 1.0 - lh);
      CHECK(blended >= std::min(ah, aa) - 1e-12);
      CHECK(blended <= std::max(ah, aa) + 1e-12);
    }
  }
}
