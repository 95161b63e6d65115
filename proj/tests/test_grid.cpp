#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lacuna/grid.hpp"

using namespace lacuna;

namespace {
Field random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Field f{g, std::vector<cplx>(g.points())};
  for (auto& v : f.values) v = cplx{gauss(rng), gauss(rng)};
  return f;
}
}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS(make_grid(0, 8));
  CHECK_THROWS(make_grid(5, 8));
  CHECK_THROWS(make_grid(2, 6));
  CHECK_THROWS(make_grid(2, 2));
  CHECK_THROWS(make_grid_sides({8, 3}, 1.0));
  Grid g = make_grid(2, 8);
  CHECK(g.points() == 64);
  CHECK(g.side() == 8);
  Grid r = make_grid_sides({4, 2}, 1.0);
  CHECK(r.points() == 8);
  CHECK_THROWS(r.side());
}

TEST_CASE("frequency box is half open with Nyquist negative") {
  Grid g = make_grid(1, 8);
  CHECK(g.freq_of_index(0, 0) == 0);
  CHECK(g.freq_of_index(3, 0) == 3);
  CHECK(g.freq_of_index(4, 0) == -4);
  CHECK(g.freq_of_index(7, 0) == -1);
  for (int k = 0; k < 8; ++k) CHECK(g.index_of_freq(g.freq_of_index(k, 0), 0) == k);
}

TEST_CASE("forward transform matches a naive DFT") {
  Grid g = make_grid(1, 8);
  std::mt19937_64 rng(11);
  Field f = random_field(g, rng);
  Spectrum sp = forward_transform(f);
  for (int k = 0; k < 8; ++k) {
    int xi = g.freq_of_index(k, 0);
    cplx acc = 0.0;
    for (int j = 0; j < 8; ++j) {
      double ph = -2.0 * std::numbers::pi * xi * j / 8.0;
      acc += f.values[j] * cplx{std::cos(ph), std::sin(ph)};
    }
    acc /= std::sqrt(8.0);
    CHECK(std::abs(acc - sp.coeffs[k]) < 1e-12);
  }
}

TEST_CASE("Plancherel and round trip over random fields") {
  std::mt19937_64 rng(5);
  for (int side : {4, 8, 16, 32}) {
    for (int d : {1, 2}) {
      Grid g = make_grid(d, side);
      for (int rep = 0; rep < (side <= 8 ? 50 : 10); ++rep) {
        Field f = random_field(g, rng);
        Spectrum sp = forward_transform(f);
        CHECK(std::abs(norm_l2(f) - norm_l2(sp)) < 1e-10 * norm_l2(f));
        Field back = inverse_transform(sp);
        double err = 0.0;
        for (size_t i = 0; i < f.values.size(); ++i)
          err = std::max(err, std::abs(f.values[i] - back.values[i]));
        CHECK(err < 1e-12);
      }
    }
  }
}

TEST_CASE("multiplier application is diagonal, linear, and composes") {
  Grid g = make_grid(2, 8);
  std::mt19937_64 rng(17);
  Field f = random_field(g, rng);
  Field h = random_field(g, rng);
  Symbol a;
  a.label = "a";
  a.eval = [](std::span<const int> xi) { return cplx{1.0 / (1.0 + xi[0] * xi[0]), 0.3 * xi[1]}; };
  Symbol b;
  b.label = "b";
  b.eval = [](std::span<const int> xi) { return cplx{static_cast<double>(xi[0] >= 0), 0.0}; };

  Field ab1 = apply_multiplier(apply_multiplier(f, a), b);
  Field ab2 = apply_multiplier(apply_multiplier(f, b), a);
  Field lin1 = apply_multiplier(f, a);
  Field lin2 = apply_multiplier(h, a);
  Field sum{g, std::vector<cplx>(g.points())};
  for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = f.values[i] + 2.0 * h.values[i];
  Field lin3 = apply_multiplier(sum, a);
  for (size_t i = 0; i < f.values.size(); ++i) {
    CHECK(std::abs(ab1.values[i] - ab2.values[i]) < 1e-11);
    CHECK(std::abs(lin3.values[i] - lin1.values[i] - 2.0 * lin2.values[i]) < 1e-11);
  }
}

TEST_CASE("constant symbol scales and NaN symbols are rejected") {
  Grid g = make_grid(2, 4);
  std::mt19937_64 rng(3);
  Field f = random_field(g, rng);
  Field half = apply_multiplier(f, constant_symbol(0.5));
  for (size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(half.values[i] - 0.5 * f.values[i]) < 1e-13);
  Symbol bad;
  bad.label = "bad";
  bad.eval = [](std::span<const int>) { return cplx{std::nan(""), 0.0}; };
  CHECK_THROWS(apply_multiplier(f, bad));
}
