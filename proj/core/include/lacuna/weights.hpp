#pragma once

#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/operators.hpp"

namespace lacuna {

/// Positive weight sampled on a grid; values floored at 1e-8.
struct Weight {
  Grid grid;
  std::vector<double> values;
};

Weight make_weight(const Grid& grid, std::vector<double> values);
Weight unit_weight(const Grid& grid);

Weight dual_weight(const Weight& w, double p);

/// Segments with centers on a sublattice of the given stride (in cells),
/// dyadic radii, one copy per direction.
std::vector<SegmentSpec> make_segment_family(const Grid& grid, const DirectionSet& dirs, int stride);

/// Sampled sup over the family of (avg_I w)(avg_I w^{-1/(p-1)})^{p-1}.
double ap_constant(const Weight& w, double p, const std::vector<SegmentSpec>& family);

/// max_x M_dirs(w)(x) / w(x).
double a1_constant(const Weight& w, const DirectionSet& dirs, const std::vector<double>& radii);

/// Truncated majorant sum_{k<=K} M^(k) g / (2 norm_est)^k; g must be >= 0.
Field rubio_de_francia(const Field& g, const DirectionSet& dirs, const std::vector<double>& radii,
                       double norm_est, int terms);

struct FactorizationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

FactorizationReport factorization_check(const Weight& w, const Weight& u, double p, double p0,
                                        const DirectionSet& dirs,
                                        const std::vector<SegmentSpec>& family,
                                        const std::vector<double>& radii);

/// Weighted L^p(w) norm of a field.
double norm_lp_weighted(const Field& f, const Weight& w, double p);

struct WeightedProbe {
  double norm_estimate = 0.0;  // sampled sup of |M f|_{L^p(w)} / |f|_{L^p(w)}
  double ap_estimate = 0.0;
};

WeightedProbe weighted_norm_probe(const DirectionSet& dirs, double p, const Weight& w,
                                  const std::vector<double>& radii, int trials = 12,
                                  std::uint64_t seed = 7);

}  // namespace lacuna
