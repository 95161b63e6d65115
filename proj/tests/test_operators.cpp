#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lacuna/operators.hpp"

using namespace lacuna;

namespace {
Field random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Field f{g, std::vector<cplx>(g.points())};
  for (auto& v : f.values) v = cplx{gauss(rng), gauss(rng)};
  return f;
}
}  // namespace

TEST_CASE("half-space projection algebra") {
  Grid g = make_grid(2, 16);
  std::mt19937_64 rng(2);
  Direction w = direction_from({3.0, 1.0});
  Field f = random_field(g, rng);
  Field hf = hilbert_dir(f, w, HalfspaceConvention::indicator);
  Field hhf = hilbert_dir(hf, w, HalfspaceConvention::indicator);
  for (size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(hhf.values[i] - hf.values[i]) < 1e-10);
  CHECK(norm_l2(hf) <= norm_l2(f) * (1 + 1e-12));
  // self-adjointness
  Field h = random_field(g, rng);
  Field hh = hilbert_dir(h, w, HalfspaceConvention::indicator);
  CHECK(inner_real(hf, h) == doctest::Approx(inner_real(f, hh)).epsilon(1e-10));
}

TEST_CASE("opposite directions reassemble the identity off the hyperplane") {
  Grid g = make_grid(2, 16);
  std::mt19937_64 rng(3);
  Direction w = direction_from({2.0, 0.7});
  Direction wm = direction_from({-2.0, -0.7});
  Field f = random_field(g, rng);
  // remove the zero frequency: the only lattice point on the hyperplane here
  Spectrum sp = forward_transform(f);
  sp.coeffs[0] = 0.0;
  f = inverse_transform(sp);
  Field a = hilbert_dir(f, w, HalfspaceConvention::indicator);
  Field b = hilbert_dir(f, wm, HalfspaceConvention::indicator);
  for (size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(a.values[i] + b.values[i] - f.values[i]) < 1e-10);
}

TEST_CASE("axis direction matches a per-row projection oracle") {
  Grid g = make_grid(2, 8);
  std::mt19937_64 rng(4);
  Field f = random_field(g, rng);
  Field hf = hilbert_dir(f, direction_from({1.0, 0.0}), HalfspaceConvention::indicator);
  Spectrum sp = forward_transform(f);
  for_each_frequency(g, [&](std::span<const int> xi, size_t idx) {
    if (xi[0] <= 0) sp.coeffs[idx] = 0.0;
  });
  Field oracle = inverse_transform(sp);
  for (size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(hf.values[i] - oracle.values[i]) < 1e-12);
}

TEST_CASE("maximal hilbert is a monotone pointwise sup") {
  Grid g = make_grid(2, 8);
  std::mt19937_64 rng(5);
  Field f = random_field(g, rng);
  DirectionSet small;
  small.dims = 2;
  small.members = {direction_from({4.0, 1.0}), direction_from({4.0, 3.0})};
  DirectionSet big = small;
  big.members.push_back(direction_from({1.0, 1.0}));
  Field ms = maximal_hilbert(f, small, HalfspaceConvention::sign);
  Field mb = maximal_hilbert(f, big, HalfspaceConvention::sign);
  Field h0 = hilbert_dir(f, small.members[0], HalfspaceConvention::sign);
  Field h1 = hilbert_dir(f, small.members[1], HalfspaceConvention::sign);
  for (size_t i = 0; i < f.values.size(); ++i) {
    CHECK(ms.values[i].real() <= mb.values[i].real() + 1e-12);
    double want = std::max(std::abs(h0.values[i]), std::abs(h1.values[i]));
    CHECK(ms.values[i].real() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("segment averages reproduce constants, linear slopes, odd symmetry") {
  Grid g = make_grid(2, 32);
  Field c{g, std::vector<cplx>(g.points(), cplx{2.5, -1.0})};
  SegmentSpec seg{{0.3, 0.4}, 0.1, direction_from({1.0, 2.0})};
  CHECK(std::abs(avg_segment(c, seg) - cplx{2.5, -1.0}) < 1e-12);

  // sin(2 pi x1) averaged on a segment centered at the origin along e1
  Field s{g, std::vector<cplx>(g.points())};
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      s.values[i * 32 + j] = std::sin(2.0 * std::numbers::pi * i / 32.0);
  SegmentSpec odd{{0.0, 0.0}, 0.25, direction_from({1.0, 0.0})};
  CHECK(std::abs(avg_segment(s, odd)) < 1e-10);
}

TEST_CASE("directional maximal function basics") {
  Grid g = make_grid(2, 16);
  auto radii = dyadic_radii(g);
  REQUIRE(radii.size() == 4);  // 1/16 .. 1/2
  Field ones{g, std::vector<cplx>(g.points(), cplx{1.0})};
  Direction e1 = direction_from({1.0, 0.0});
  Field m = maximal_dir(ones, e1, radii);
  for (const auto& v : m.values) CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));

  // impulse mass spreads like (cell mass)/(2r) along the direction
  Field imp{g, std::vector<cplx>(g.points(), cplx{0.0})};
  imp.values[0] = 1.0;
  Field mi = maximal_dir(imp, e1, radii);
  double r = 0.25;
  double cell = 1.0 / 16.0;
  double expect = cell / (2.0 * r);
  double got = mi.values[(16 / 4) * 16 + 0].real();  // distance r along e1
  CHECK(got == doctest::Approx(expect).epsilon(0.1));
}

TEST_CASE("maximal operators are sublinear and homogeneous") {
  Grid g = make_grid(2, 8);
  std::mt19937_64 rng(6);
  Field f = random_field(g, rng);
  Field h = random_field(g, rng);
  DirectionSet dirs;
  dirs.dims = 2;
  dirs.members = {direction_from({1.0, 0.0}), direction_from({2.0, 1.0})};
  auto radii = dyadic_radii(g);
  Field sum{g, std::vector<cplx>(g.points())};
  for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = f.values[i] + h.values[i];
  Field msum = maximal_set(sum, dirs, radii);
  Field mf = maximal_set(f, dirs, radii);
  Field mh = maximal_set(h, dirs, radii);
  Field scaled{g, std::vector<cplx>(g.points())};
  for (size_t i = 0; i < f.values.size(); ++i) scaled.values[i] = -3.0 * f.values[i];
  Field mscaled = maximal_set(scaled, dirs, radii);
  for (size_t i = 0; i < f.values.size(); ++i) {
    CHECK(msum.values[i].real() <= mf.values[i].real() + mh.values[i].real() + 1e-10);
    CHECK(mscaled.values[i].real() == doctest::Approx(3.0 * mf.values[i].real()).epsilon(1e-10));
  }
}

TEST_CASE("strong maximal matches the exhaustive rectangle oracle") {
  Grid g = make_grid(2, 8);
  std::mt19937_64 rng(7);
  Field f = random_field(g, rng);
  Field m = strong_maximal(f);
  // brute force: all dyadic rectangle sizes, all anchors, periodic
  std::vector<double> best(64, 0.0);
  for (int wx = 1; wx <= 8; wx *= 2)
    for (int wy = 1; wy <= 8; wy *= 2)
      for (int sx = 0; sx < 8; ++sx)
        for (int sy = 0; sy < 8; ++sy) {
          double sum = 0.0;
          for (int i = 0; i < wx; ++i)
            for (int j = 0; j < wy; ++j)
              sum += std::abs(f.values[((sx + i) % 8) * 8 + ((sy + j) % 8)]);
          double avg = sum / (wx * wy);
          for (int i = 0; i < wx; ++i)
            for (int j = 0; j < wy; ++j) {
              size_t idx = ((sx + i) % 8) * 8 + ((sy + j) % 8);
              best[idx] = std::max(best[idx], avg);
            }
        }
  for (size_t i = 0; i < best.size(); ++i)
    CHECK(m.values[i].real() == doctest::Approx(best[i]).epsilon(1e-12));
  for (size_t i = 0; i < best.size(); ++i)
    CHECK(m.values[i].real() >= std::abs(f.values[i]) - 1e-12);
}

TEST_CASE("dyadic expectations nest and the square function is orthogonal") {
  Grid g = make_grid(2, 16);
  std::mt19937_64 rng(8);
  Field f = random_field(g, rng);
  Field c{g, std::vector<cplx>(g.points(), cplx{1.5})};
  Field e = dyadic_expect(c, 2, 0);
  for (const auto& v : e.values) CHECK(std::abs(v - cplx{1.5}) < 1e-14);
  CHECK_THROWS(dyadic_expect(f, 5, 0));
  CHECK_THROWS(dyadic_expect(f, -1, 1));

  Field e2 = dyadic_expect(f, 2, 0);
  Field e2e3 = dyadic_expect(dyadic_expect(f, 3, 0), 2, 0);
  for (size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(e2.values[i] - e2e3.values[i]) < 1e-12);

  Field e0 = dyadic_expect(f, 0, 0);
  Field sq = martingale_sq(f, 0);
  double lhs = 0.0, rhs = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) {
    lhs += std::norm(f.values[i] - e0.values[i]);
    rhs += std::norm(sq.values[i]);
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("good-lambda probe behaves on trivial input") {
  Grid g = make_grid(1, 32);
  Field c{g, std::vector<cplx>(g.points(), cplx{3.0})};
  auto res = cww_probe(c, 0.5, 0.5, 0);
  CHECK(res.lhs == 0.0);
  CHECK(!res.violation);
}
