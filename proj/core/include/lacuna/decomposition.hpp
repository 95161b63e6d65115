#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/operators.hpp"
#include "lacuna/symbols.hpp"

namespace lacuna {

/// Frequencies xi in the dual cone of omega (|xi.omega| < max_j |omega_j xi_j| / n)
/// that escape the union of cell wedges; the contract is an empty list.
std::vector<std::vector<int>> check_inclusion(const Direction& omega, const CellIndex& cell,
                                              const Grid& grid);

/// Max over grid frequencies of the inclusion-exclusion defect
/// |1 - sum_U (-1)^{#U+1} prod_{sigma in U} k_sigma - prod_sigma (1 - k_sigma)|.
double inclusion_exclusion_residual(const CellIndex& cell, const Grid& grid);

/// Pointwise margin C (|f| + sup_U |H K_U f| + sup_eps sup_U |K^eps_U f|) - |H f|.
Field represent_bound_check(const Field& f, const Direction& omega, double C,
                            HalfspaceConvention conv = HalfspaceConvention::sign);

/// Octant of R^3 given by coordinate signs; the multiplier selection follows
/// the per-case choice of the Littlewood-Paley axis.
struct OctantSpec {
  std::vector<int> signs;  // +1 or -1 per coordinate
};

/// Axis choice for the annular bound; nullopt means the composed multiplier
/// vanishes identically on the octant.
std::optional<int> choose_lp_axis(const std::vector<SigmaPair>& subset,
                                  const std::map<SigmaPair, KappaKind>& eps, const OctantSpec& oct);

/// Worst ratio |K^eps_U (P_t f)| / (M_s^2 (P_t f) + floor) over the grid.
double annular_bound_check(const Field& f, const std::vector<SigmaPair>& subset,
                           const std::map<SigmaPair, KappaKind>& eps, const CellIndex& cell, int t,
                           const OctantSpec& oct);

/// General-dimension variant: spanning-set projections against n-fold M_s.
double annular_bound_check_general(const Field& f, const std::vector<SigmaPair>& subset,
                                   const std::map<SigmaPair, KappaKind>& eps, const CellIndex& cell,
                                   int t);

struct GraphReport {
  bool has_odd_cycle = false;
  std::vector<int> spanning;  // minimum vertex cover of the pair graph
};

GraphReport spanning_and_cycles(const std::vector<SigmaPair>& subset, int n);

}  // namespace lacuna
