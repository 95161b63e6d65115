#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "lacuna/directions.hpp"

using namespace lacuna;

TEST_CASE("sigma_set sizes") {
  CHECK(sigma_set(2).size() == 1);
  CHECK(sigma_set(3).size() == 3);
  CHECK(sigma_set(4).size() == 6);
}

TEST_CASE("sector_of worked ratios") {
  Basis b = canonical_basis(2);
  // ratio |w_2|/|w_1| = 3/8 lands in [1/4, 1/2)
  CHECK(sector_of(direction_from({8.0, 3.0}), {0, 1}, b) == 1);
  // boundary ratio 1/2 belongs to the upper band by the half-open rule
  CHECK(sector_of(direction_from({2.0, 1.0}), {0, 1}, b) == 0);
  // ratio 5 solves 4 <= 5 < 8
  CHECK(sector_of(direction_from({1.0, 5.0}), {0, 1}, b) == -3);
  CHECK_THROWS(sector_of(direction_from({1.0, 0.0}), {0, 1}, b));
}

TEST_CASE("cell_of agrees with sector_of per pair and partitions") {
  Dissection d{canonical_basis(3)};
  auto set = carbery_set(3, 0, 2);
  for (const auto& w : set.members) {
    CellIndex c = cell_of(w, d);
    for (auto sigma : sigma_set(3)) CHECK(c.entries.at(sigma) == sector_of(w, sigma, d.basis));
  }
  // distinct directions of this set land in distinct cells
  std::set<CellIndex> seen;
  for (const auto& w : set.members) seen.insert(cell_of(w, d));
  CHECK(seen.size() == set.members.size());
}

TEST_CASE("carbery generator counts and dedup") {
  auto single = carbery_set(2, 0, 0);
  CHECK(single.members.size() == 1);
  CHECK(single.members[0].coords[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  // 16 raw vectors collapse to the 7 distinct ratios 2^{k2-k1}
  auto set = carbery_set(2, 0, 3);
  CHECK(set.members.size() == 7);
  CHECK(set.claimed_order == 1);
}

TEST_CASE("nsw generator ratios") {
  auto collinear = nsw_set(0.5, {1.0, 1.0}, 5);
  CHECK(collinear.members.size() == 1);
  auto set = nsw_set(0.5, {1.0, 2.0}, 3);
  REQUIRE(set.members.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    double r = set.members[k - 1].coords[1] / set.members[k - 1].coords[0];
    CHECK(r == doctest::Approx(std::ldexp(1.0, -k)).epsilon(1e-12));
  }
  auto quarter = nsw_set(0.25, {1.0, 2.0}, 2);
  CHECK(quarter.members[0].coords[1] / quarter.members[0].coords[0] == doctest::Approx(0.25));
  CHECK(quarter.members[1].coords[1] / quarter.members[1].coords[0] == doctest::Approx(0.0625));
}

TEST_CASE("lacunary2d base and order zero") {
  auto base = lacunary2d(1, 4);
  REQUIRE(base.members.size() == 4);
  std::multiset<double> slopes;
  for (const auto& w : base.members) slopes.insert(w.coords[1] / w.coords[0]);
  std::multiset<double> want{0.5, 0.25, 0.125, 0.0625};
  auto it = want.begin();
  for (double s : slopes) CHECK(s == doctest::Approx(*it++).epsilon(1e-12));
  CHECK(lacunary2d(0, 1).members.size() == 1);
}

TEST_CASE("uniform set angles") {
  auto one = uniform_set(1);
  REQUIRE(one.members.size() == 1);
  CHECK(std::atan2(one.members[0].coords[1], one.members[0].coords[0]) ==
        doctest::Approx(std::numbers::pi / 4));
  auto two = uniform_set(2);
  CHECK(std::atan2(two.members[0].coords[1], two.members[0].coords[0]) ==
        doctest::Approx(std::numbers::pi / 6));
  auto four = uniform_set(4);
  for (size_t i = 0; i + 1 < four.members.size(); ++i) {
    double a = std::atan2(four.members[i].coords[1], four.members[i].coords[0]);
    double b = std::atan2(four.members[i + 1].coords[1], four.members[i + 1].coords[0]);
    CHECK(b - a == doctest::Approx(std::numbers::pi / 10));
  }
}

TEST_CASE("verify_lacunary base cases") {
  Dissection d{canonical_basis(2)};
  DirectionSet singleton = lacunary2d(0, 1);
  CHECK(verify_lacunary(singleton, d, 0).ok);

  auto base = lacunary2d(1, 6);
  CHECK(verify_lacunary(base, d, 1).ok);

  auto uniform = uniform_set(16);
  auto rep = verify_lacunary(uniform, d, 1);
  CHECK(!rep.ok);
  CHECK(!rep.witness.empty());
}

TEST_CASE("verify_lacunary monotone in the order") {
  Dissection d{canonical_basis(2)};
  auto base = lacunary2d(1, 6);
  for (int order = 1; order <= 4; ++order) CHECK(verify_lacunary(base, d, order).ok);
}

TEST_CASE("sector partition is exact for fixed sigma") {
  Dissection d{canonical_basis(3)};
  auto set = carbery_set(3, 0, 3);
  for (auto sigma : sigma_set(3)) {
    size_t total = 0;
    std::map<int, int> buckets;
    for (const auto& w : set.members) {
      ++buckets[sector_of(w, sigma, d.basis)];
      ++total;
    }
    size_t acc = 0;
    for (auto& [l, c] : buckets) acc += c;
    CHECK(acc == total);
  }
}

TEST_CASE("rotation basis stays orthonormal") {
  CHECK(is_orthonormal(canonical_basis(4)));
  CHECK(is_orthonormal(rotation_basis_2d(0.37)));
}
