#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/grid.hpp"

namespace lacuna {

/// C^inf ramp: 0 for x <= 0, 1 for x >= 1, strictly increasing between.
double smooth_ramp(double x);

/// Angular cutoff profiles.  plus: 0 below -(n+1), 1 above -n.
/// minus: 1 below -1/(2n), 0 above -1/(2(n+1)).
enum class CutoffKind { plus, minus };

struct CutoffProfile {
  CutoffKind kind;
  int dim_param;
  double operator()(double x) const;
};

enum class KappaKind { plus, minus, both };  // both = product kappa^+ kappa^-

/// Wedge in frequency space: xi_{sigma(2)} != 0 and
/// 2^-(l+1)/gamma <= -xi_{sigma(1)}/xi_{sigma(2)} < gamma 2^-l.
/// gamma = n gives the core wedge, gamma = n+1 the enlarged one.
struct WedgeSpec {
  SigmaPair sigma;
  int ell = 0;
  double gamma = 2.0;
};

bool wedge_contains(std::span<const double> xi, const WedgeSpec& spec);
bool wedge_contains(std::span<const int> xi, const WedgeSpec& spec);

/// kappa^eps_{sigma,l}(xi) = phi^eps(2^l xi_{sigma(1)} / xi_{sigma(2)}),
/// with kappa^+ = 1, kappa^- = 0 on xi_{sigma(2)} = 0.
double kappa_value(std::span<const double> xi, SigmaPair sigma, int ell, KappaKind eps, int n);

Symbol kappa(SigmaPair sigma, int ell, KappaKind eps, int n);

/// Product of kappa factors over a pair subset, sector indices from the cell.
Symbol compose_K(const std::vector<SigmaPair>& subset, const CellIndex& cell,
                 const std::map<SigmaPair, KappaKind>& eps, int n);

enum class HalfspaceConvention { sign, indicator };

/// sign(xi.omega) or 1_{(0,inf)}(xi.omega); both vanish on the hyperplane.
Symbol halfspace_symbol(const Direction& omega, HalfspaceConvention conv);

/// Littlewood-Paley profiles: p supported in 1/2 < |x| < 2 with
/// sum_t p(2^-t x) = 1 for x != 0; q supported in 1/4 < |x| < 4, q = 1 on supp p.
double lp_p(double x);
double lp_q(double x);

enum class LpKind { P, Q };

/// xi -> p(2^-t xi_axis) or q(2^-t xi_axis).
Symbol project_symbol(int t, int axis, LpKind kind);

/// Max over random samples and multi-indices |a| <= 4 of the scaled
/// finite-difference |xi_1|^{a1} |xi_2|^{a2} |D^a kappa|.
double derivative_bound_probe(SigmaPair sigma, int ell, KappaKind eps, int n, int samples,
                              std::uint64_t seed = 1);

}  // namespace lacuna
