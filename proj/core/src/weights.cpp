#include "lacuna/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lacuna {

namespace {
constexpr double kFloor = 1e-8;

Field as_field(const Weight& w) {
  Field f{w.grid, {}};
  f.values.assign(w.values.begin(), w.values.end());
  return f;
}
}  // namespace

Weight make_weight(const Grid& grid, std::vector<double> values) {
  if (values.size() != static_cast<size_t>(grid.points()))
    throw std::invalid_argument("make_weight: value count does not match the grid");
  for (double& v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("make_weight: non-finite value");
    v = std::max(v, kFloor);
  }
  return Weight{grid, std::move(values)};
}

Weight unit_weight(const Grid& grid) {
  return Weight{grid, std::vector<double>(grid.points(), 1.0)};
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("dual_weight: requires p > 1");
  Weight out = w;
  for (double& v : out.values) v = std::pow(v, -1.0 / (p - 1.0));
  return out;
}

std::vector<SegmentSpec> make_segment_family(const Grid& grid, const DirectionSet& dirs, int stride) {
  if (stride < 1) throw std::invalid_argument("make_segment_family: stride must be positive");
  std::vector<SegmentSpec> fam;
  auto radii = dyadic_radii(grid);
  int d = grid.dim();
  std::vector<int> c(d, 0);
  while (true) {
    std::vector<double> x(d);
    for (int a = 0; a < d; ++a) x[a] = c[a] * grid.length / grid.sides[a];
    for (const auto& w : dirs.members)
      for (double r : radii) fam.push_back(SegmentSpec{x, r, w});
    int a = d - 1;
    while (a >= 0 && (c[a] += stride) >= grid.sides[a]) c[a--] = 0;
    if (a < 0) break;
  }
  return fam;
}

double ap_constant(const Weight& w, double p, const std::vector<SegmentSpec>& family) {
  Field wf = as_field(w);
  Field sf = as_field(dual_weight(w, p));
  double best = 0.0;
  for (const auto& seg : family) {
    double aw = avg_segment(wf, seg).real();
    double as = avg_segment(sf, seg).real();
    best = std::max(best, aw * std::pow(as, p - 1.0));
  }
  return best;
}

double a1_constant(const Weight& w, const DirectionSet& dirs, const std::vector<double>& radii) {
  Field mw = maximal_set(as_field(w), dirs, radii);
  double best = 0.0;
  for (size_t i = 0; i < w.values.size(); ++i)
    best = std::max(best, mw.values[i].real() / w.values[i]);
  return best;
}

Field rubio_de_francia(const Field& g, const DirectionSet& dirs, const std::vector<double>& radii,
                       double norm_est, int terms) {
  if (!(norm_est > 0.0)) throw std::invalid_argument("rubio_de_francia: norm estimate must be positive");
  for (const auto& v : g.values)
    if (v.real() < 0.0 || v.imag() != 0.0)
      throw std::invalid_argument("rubio_de_francia: input must be real and nonnegative");
  Field acc = g;
  Field iter = g;
  double scale = 1.0;
  for (int k = 1; k <= terms; ++k) {
    iter = maximal_set(iter, dirs, radii);
    scale /= 2.0 * norm_est;
    for (size_t i = 0; i < acc.values.size(); ++i)
      acc.values[i] += scale * iter.values[i].real();
  }
  return acc;
}

FactorizationReport factorization_check(const Weight& w, const Weight& u, double p, double p0,
                                        const DirectionSet& dirs,
                                        const std::vector<SegmentSpec>& family,
                                        const std::vector<double>& radii) {
  if (!(p >= 1.0) || !(p0 > 1.0)) throw std::invalid_argument("factorization_check: bad exponents");
  FactorizationReport rep;
  double cw = p > 1.0 ? ap_constant(w, p, family) : a1_constant(w, dirs, radii);
  double cu = a1_constant(u, dirs, radii);
  if (p <= p0) {
    Weight mixed = w;
    for (size_t i = 0; i < mixed.values.size(); ++i)
      mixed.values[i] = std::max(kFloor, w.values[i] * std::pow(u.values[i], p - p0));
    rep.lhs = ap_constant(mixed, p0, family);
    rep.rhs = cw * cu;
  } else {
    double a = (p0 - 1.0) / (p - 1.0);
    Weight mixed = w;
    for (size_t i = 0; i < mixed.values.size(); ++i)
      mixed.values[i] = std::max(kFloor, std::pow(w.values[i], a) * std::pow(u.values[i], 1.0 - a));
    rep.lhs = ap_constant(mixed, p0, family);
    rep.rhs = std::pow(cw, a) * std::pow(cu, 1.0 - a);
  }
  rep.ok = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

double norm_lp_weighted(const Field& f, const Weight& w, double p) {
  double cellvol = 1.0;
  for (int a = 0; a < f.grid.dim(); ++a) cellvol *= f.grid.length / f.grid.sides[a];
  double acc = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    acc += std::pow(std::abs(f.values[i]), p) * w.values[i];
  return std::pow(acc * cellvol, 1.0 / p);
}

WeightedProbe weighted_norm_probe(const DirectionSet& dirs, double p, const Weight& w,
                                  const std::vector<double>& radii, int trials, std::uint64_t seed) {
  WeightedProbe probe;
  const Grid& g = w.grid;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int tr = 0; tr < trials; ++tr) {
    Field f{g, std::vector<cplx>(g.points())};
    for (auto& v : f.values) v = std::abs(gauss(rng));
    double den = norm_lp_weighted(f, w, p);
    if (den == 0.0) continue;
    Field mf = maximal_set(f, dirs, radii);
    probe.norm_estimate = std::max(probe.norm_estimate, norm_lp_weighted(mf, w, p) / den);
  }
  probe.ap_estimate = ap_constant(w, p, make_segment_family(g, dirs, std::max(1, g.sides[0] / 8)));
  return probe;
}

}  // namespace lacuna
