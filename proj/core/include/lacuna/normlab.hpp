#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/symbols.hpp"
#include "lacuna/weights.hpp"

namespace lacuna {

/// Family {T_w} of linear operators on fields.  apply_all shares work across
/// members; frozen_adjoint applies the adjoint of the selection-frozen
/// operator S f(x) = T_{sel(x)} f(x).
struct OpFamily {
  int count = 0;
  std::function<std::vector<Field>(const Field&)> apply_all;
  std::function<Field(const Field&, const std::vector<int>&)> frozen_adjoint;
};

OpFamily multiplier_family(std::vector<Symbol> symbols);
OpFamily halfspace_family(const DirectionSet& dirs, HalfspaceConvention conv);

struct NormReport {
  double estimate = 0.0;
  Field witness;
  int iterations = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
};

struct EstimatorOptions {
  int iters = 30;
  int restarts = 8;
  std::uint64_t seed = 1;
  const Field* warm_start = nullptr;
  const Weight* weight = nullptr;                // weighted L2 when set
  std::function<void(Spectrum&)> projector;      // spectral constraint on extremizers
};

/// Alternating maximization: pointwise argmax selection, then adjoint power
/// iteration on the frozen linear operator.  The estimate is a certified
/// lower bound with the witness stored.
NormReport estimate_maximal_norm(const OpFamily& family, const Grid& grid,
                                 const EstimatorOptions& opt = {});

/// Recompute |sup_w |T_w f| | / |f| for a stored witness.
double evaluate_witness(const OpFamily& family, const Field& witness, const Weight* weight = nullptr);

/// Exact max over all pointwise selections on a tiny grid via dense SVD.
double brute_force_selection_norm(const OpFamily& family, const Grid& grid);

struct GrowthRow {
  int n = 0;
  double estimate = 0.0;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  double c_sqrtlog = 0.0, resid_sqrtlog = 0.0;
  double c_log = 0.0, resid_log = 0.0;
};

GrowthTable growth_experiment(const std::function<DirectionSet(int)>& generator,
                              const std::vector<int>& sizes, const Grid& grid,
                              HalfspaceConvention conv, const EstimatorOptions& opt = {});

/// Sampled lower bound of the best weighted norm over subsets of size <= n.
double theta_probe(const DirectionSet& dirs, const Weight& w, int n,
                   const std::function<DirectionSet(std::mt19937_64&)>& sampler, int budget,
                   const Grid& grid, const EstimatorOptions& opt = {});

/// Counterexample family in S^{2d-1}: one direction per index m in {1..N}^d,
/// with exact integer exponent bookkeeping for the cells.
struct Counterexample {
  int d = 1;
  int n = 2;  // N
  DirectionSet dirs;
  std::vector<CellIndex> cells;  // aligned with dirs.members
  struct Factor {
    SigmaPair sigma;           // the (2k-1, 2k) pair, 0-based
    int annulus_lo_exp = 0;    // spectrum scale bookkeeping, powers of two
    int annulus_hi_exp = 0;
  };
  std::vector<Factor> factors;
  bool small_n_warning = false;  // N below the regime the construction targets
};

Counterexample counterexample_build(int d, int n);

/// Product over factors of the 2D model norm
/// |f -> sup_m |(Id - K^+_{(1,2),m}) f||; identical factors by dilation
/// invariance, so this is the first factor norm to the d-th power.
double model_outer_norm(int d, int n, const Grid& grid2d, const EstimatorOptions& opt = {});

struct TwoSidedReport {
  double estimate = 0.0;       // lower bound on the maximal multiplier norm
  double sqrtlog_ratio = 0.0;  // estimate / sqrt(log(N+1))
};

TwoSidedReport two_sided_2d_probe(int n, const Grid& grid, KappaKind eps,
                                  const EstimatorOptions& opt = {});

/// Spectral projector onto {xi_1 > 0, xi_2 < 0} intersected with an annulus.
std::function<void(Spectrum&)> quadrant_annulus_projector(double r_lo, double r_hi);

}  // namespace lacuna
