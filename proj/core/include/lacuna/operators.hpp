#pragma once

#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/symbols.hpp"

namespace lacuna {

Field hilbert_dir(const Field& f, const Direction& omega, HalfspaceConvention conv);

/// Pointwise sup over the set of |H_omega f|; output is real-valued.
Field maximal_hilbert(const Field& f, const DirectionSet& dirs, HalfspaceConvention conv);

/// Line segment on the torus: center, half-length, direction.
struct SegmentSpec {
  std::vector<double> center;
  double radius = 0.0;
  Direction omega;
};

/// Periodic multilinear interpolation of f at a real point.
cplx interpolate(const Field& f, std::span<const double> x);

/// Trapezoid average of f over the segment, step a quarter grid cell.
cplx avg_segment(const Field& f, const SegmentSpec& seg);

/// Dyadic ladder of radii from one grid cell to half the period.
std::vector<double> dyadic_radii(const Grid& g);

Field maximal_dir(const Field& f, const Direction& omega, const std::vector<double>& radii);
Field maximal_set(const Field& f, const DirectionSet& dirs, const std::vector<double>& radii);

/// Strong maximal function over axis-parallel rectangles with dyadic sides.
Field strong_maximal(const Field& f);
Field strong_maximal_sq(const Field& f);  // M_s(M_s f)

/// Conditional expectation onto dyadic blocks of length 2^-j * period along
/// one axis; j = 0 averages the whole axis.
Field dyadic_expect(const Field& f, int level, int axis);

/// Square function sqrt(sum_j |E_{j+1}f - E_j f|^2) along one axis.
Field martingale_sq(const Field& f, int axis);

struct CwwResult {
  double lhs = 0.0;  // |{ |g - E_0 g| > 2 lambda, square function <= gamma lambda }|
  double rhs = 0.0;  // A exp(-b / gamma^2) |{ M g > lambda }|
  bool violation = false;
};

/// Good-lambda probe for the unweighted square-function inequality; A and b
/// are calibrated constants, not canonical ones.
CwwResult cww_probe(const Field& g, double lambda, double gamma_param, int axis, double A = 12.0,
                    double b = 0.08);

}  // namespace lacuna
