#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lacuna {

/// Unit vector on S^{n-1}.
struct Direction {
  std::vector<double> coords;
  int dim() const { return static_cast<int>(coords.size()); }
};

/// Orthonormal basis of R^d, stored as rows.
struct Basis {
  std::vector<std::vector<double>> rows;
  int dim() const { return static_cast<int>(rows.size()); }
};

Basis canonical_basis(int d);
Basis rotation_basis_2d(double angle);
bool is_orthonormal(const Basis& b, double tol = 1e-12);

/// Coordinate pair sigma = (j,k), 0-based, j < k.
using SigmaPair = std::pair<int, int>;

/// All pairs Sigma(d); |Sigma(d)| = d(d-1)/2.
std::vector<SigmaPair> sigma_set(int d);

/// Cell address: one dyadic sector index per coordinate pair.
struct CellIndex {
  std::map<SigmaPair, int> entries;
  bool operator==(const CellIndex&) const = default;
  bool operator<(const CellIndex& o) const { return entries < o.entries; }
};

struct DirectionSet {
  int dims = 2;
  std::vector<Direction> members;
  std::optional<int> claimed_order;
  std::optional<Basis> basis;
};

/// Lacunary dissection: an ONB together with the fixed dyadic sequence
/// theta_l = 2^-l for every pair.
struct Dissection {
  Basis basis;
  int dim() const { return basis.dim(); }
};

double dot(const Direction& w, const std::vector<double>& e);

/// Dyadic sector index: the unique l with 2^-(l+1) <= r < 2^-l where
/// r = |w.e_{sigma(2)}| / |w.e_{sigma(1)}|.  Throws for directions on a
/// coordinate hyperplane of the basis.
int sector_of(const Direction& w, SigmaPair sigma, const Basis& basis);

CellIndex cell_of(const Direction& w, const Dissection& d);

struct LacunarityReport {
  bool ok = true;
  std::string witness;  // description of the offending sector when !ok
};

/// Basis supplied to the recursive verifier for a sector; receives the sector
/// contents and the basis used one level up.
using BasisProvider = std::function<Basis(const DirectionSet& sector, const Basis& parent)>;

BasisProvider same_basis_provider();

/// 2D heuristic: sweeps rotations and returns a basis whose dyadic sectors
/// separate the given set as finely as possible.
BasisProvider rotation_search_provider(int sweep = 4096);

LacunarityReport verify_lacunary(const DirectionSet& set, const Dissection& d, int order,
                                 const BasisProvider& provider = same_basis_provider());

// Generators.  All emit directions in the open positive 2^d-tant; the
// dissection basis is attached as metadata, not as members.
DirectionSet carbery_set(int n, int k_lo, int k_hi);
DirectionSet nsw_set(double lambda, const std::vector<double>& alphas, int count);
DirectionSet lacunary2d(int order, int depth);
DirectionSet uniform_set(int count);

Direction direction_from(std::vector<double> coords);  // normalizes

}  // namespace lacuna
