#include "lacuna/directions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lacuna {

Direction direction_from(std::vector<double> coords) {
  double n2 = 0.0;
  for (double c : coords) n2 += c * c;
  double n = std::sqrt(n2);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("direction: zero or non-finite vector");
  for (double& c : coords) c /= n;
  return Direction{std::move(coords)};
}

Basis canonical_basis(int d) {
  Basis b;
  b.rows.assign(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) b.rows[i][i] = 1.0;
  return b;
}

Basis rotation_basis_2d(double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return Basis{{{c, s}, {-s, c}}};
}

bool is_orthonormal(const Basis& b, double tol) {
  int d = b.dim();
  for (const auto& r : b.rows)
    if (static_cast<int>(r.size()) != d) return false;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double dp = 0.0;
      for (int a = 0; a < d; ++a) dp += b.rows[i][a] * b.rows[j][a];
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(dp - want) > tol) return false;
    }
  return true;
}

std::vector<SigmaPair> sigma_set(int d) {
  std::vector<SigmaPair> out;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) out.emplace_back(j, k);
  return out;
}

double dot(const Direction& w, const std::vector<double>& e) {
  double s = 0.0;
  for (size_t i = 0; i < e.size(); ++i) s += w.coords[i] * e[i];
  return s;
}

namespace {
std::atomic<bool> warned_boundary{false};

void maybe_warn_boundary(double r, int l) {
  // exact dyadic data never trips this; warn once when a ratio sits within the
  // guard band of a sector boundary and the half-open rule had to break the tie
  double lo = std::ldexp(1.0, -(l + 1));
  double hi = std::ldexp(1.0, -l);
  if (std::min(std::abs(r - lo), std::abs(hi - r)) < 1e-12 * hi && r != lo) {
    if (!warned_boundary.exchange(true))
      std::fprintf(stderr, "warning: direction ratio %.17g lies within 1e-12 of a dyadic sector boundary\n", r);
  }
}
}  // namespace

int sector_of(const Direction& w, SigmaPair sigma, const Basis& basis) {
  double a = dot(w, basis.rows[sigma.first]);
  double b = dot(w, basis.rows[sigma.second]);
  if (a == 0.0 || b == 0.0)
    throw std::domain_error("sector_of: direction lies on a coordinate hyperplane of the basis");
  double r = std::abs(b) / std::abs(a);
  if (!std::isfinite(r) || r <= 0.0) throw std::domain_error("sector_of: degenerate ratio");
  // unique l with 2^-(l+1) <= r < 2^-l; comparisons against exact powers of two
  int l = static_cast<int>(std::floor(-std::log2(r)));
  for (int trial = l - 2; trial <= l + 2; ++trial) {
    if (std::ldexp(1.0, -(trial + 1)) <= r && r < std::ldexp(1.0, -trial)) {
      maybe_warn_boundary(r, trial);
      return trial;
    }
  }
  throw std::logic_error("sector_of: dyadic band search failed");
}

CellIndex cell_of(const Direction& w, const Dissection& d) {
  CellIndex c;
  for (auto sigma : sigma_set(d.dim())) c.entries[sigma] = sector_of(w, sigma, d.basis);
  return c;
}

BasisProvider same_basis_provider() {
  return [](const DirectionSet&, const Basis& parent) { return parent; };
}

namespace {

// occupancy score of the order-1 test for a 2D set under a rotated basis:
// (max directions in one sector, number of occupied sectors negated)
std::pair<int, int> sector_score_2d(const std::vector<double>& angles, double phi) {
  std::map<int, int> count;
  int worst = 0;
  for (double th : angles) {
    double rel = th - phi;
    double c = std::cos(rel), s = std::sin(rel);
    if (std::abs(c) < 1e-9 || std::abs(s) < 1e-9) return {1 << 20, 0};
    double r = std::abs(s) / std::abs(c);
    int l = static_cast<int>(std::floor(-std::log2(r)));
    while (!(std::ldexp(1.0, -(l + 1)) <= r)) ++l;
    while (!(r < std::ldexp(1.0, -l))) --l;
    worst = std::max(worst, ++count[l]);
  }
  return {worst, -static_cast<int>(count.size())};
}

}  // namespace

BasisProvider rotation_search_provider(int sweep) {
  return [sweep](const DirectionSet& sector, const Basis& parent) -> Basis {
    if (sector.dims != 2 || sector.members.size() < 2) return parent;
    std::vector<double> angles;
    for (const auto& w : sector.members) angles.push_back(std::atan2(w.coords[1], w.coords[0]));
    double lo = *std::min_element(angles.begin(), angles.end());
    double hi = *std::max_element(angles.begin(), angles.end());
    double span = hi - lo;
    // candidate rotations put the whole sector on one side of the rotated axes
    // and sweep over how the dyadic bands fall across it
    double best_phi = lo - span - 1e-3;
    auto best = sector_score_2d(angles, best_phi);
    for (int i = 0; i < sweep; ++i) {
      double phi = lo - 2.0 * span - 0.3 + (2.0 * span + 0.6) * (i + 0.5) / sweep;
      auto s = sector_score_2d(angles, phi);
      if (s < best) {
        best = s;
        best_phi = phi;
      }
    }
    return rotation_basis_2d(best_phi);
  };
}

LacunarityReport verify_lacunary(const DirectionSet& set, const Dissection& d, int order,
                                 const BasisProvider& provider) {
  if (order < 0) return {false, "negative order"};
  if (static_cast<int>(set.members.size()) <= 1) return {true, {}};
  if (order == 0) {
    std::ostringstream os;
    os << "order 0 requires a singleton, set has " << set.members.size() << " members";
    return {false, os.str()};
  }
  for (auto sigma : sigma_set(d.dim())) {
    std::map<int, DirectionSet> sectors;
    for (const auto& w : set.members) {
      int l = sector_of(w, sigma, d.basis);
      auto& grp = sectors[l];
      grp.dims = set.dims;
      grp.members.push_back(w);
    }
    for (auto& [l, grp] : sectors) {
      if (grp.members.size() <= 1) continue;
      Basis sub = provider(grp, d.basis);
      auto rep = verify_lacunary(grp, Dissection{sub}, order - 1, provider);
      if (!rep.ok) {
        std::ostringstream os;
        os << "sector sigma=(" << sigma.first << "," << sigma.second << ") l=" << l << " with "
           << grp.members.size() << " members fails at order " << (order - 1) << ": " << rep.witness;
        return {false, os.str()};
      }
    }
  }
  return {true, {}};
}

namespace {
// collinearity dedup for positive vectors: compare the normalized coordinates
void push_unique(std::vector<Direction>& out, Direction w) {
  for (const auto& v : out) {
    double diff = 0.0;
    for (int i = 0; i < w.dim(); ++i) diff = std::max(diff, std::abs(v.coords[i] - w.coords[i]));
    if (diff < 1e-12) return;
  }
  out.push_back(std::move(w));
}
}  // namespace

DirectionSet carbery_set(int n, int k_lo, int k_hi) {
  if (n < 2 || n > 4) throw std::invalid_argument("carbery_set: dimension must be 2..4");
  if (k_lo > k_hi) throw std::invalid_argument("carbery_set: empty exponent range");
  if (k_hi - k_lo > 500) throw std::invalid_argument("carbery_set: exponent range overflows normalization");
  DirectionSet out;
  out.dims = n;
  out.claimed_order = n - 1;
  out.basis = canonical_basis(n);
  std::vector<int> k(n, k_lo);
  while (true) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::ldexp(1.0, k[i] - k[0]);
    push_unique(out.members, direction_from(std::move(v)));
    int axis = n - 1;
    while (axis >= 0 && ++k[axis] > k_hi) k[axis--] = k_lo;
    if (axis < 0) break;
  }
  return out;
}

DirectionSet nsw_set(double lambda, const std::vector<double>& alphas, int count) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("nsw_set: lambda must lie in (0,1)");
  if (count < 1) throw std::invalid_argument("nsw_set: count must be positive");
  for (double a : alphas)
    if (!(a > 0.0)) throw std::invalid_argument("nsw_set: exponents must be positive");
  int n = static_cast<int>(alphas.size());
  DirectionSet out;
  out.dims = n;
  out.claimed_order = 1;
  out.basis = canonical_basis(n);
  double amin = *std::min_element(alphas.begin(), alphas.end());
  for (int k = 1; k <= count; ++k) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      // factor out the dominant component so large k stays in range
      v[i] = std::pow(lambda, static_cast<double>(k) * (alphas[i] - amin));
      if (v[i] == 0.0) throw std::overflow_error("nsw_set: component underflow");
    }
    push_unique(out.members, direction_from(std::move(v)));
  }
  return out;
}

namespace {
Direction dir_from_angle(double th) { return Direction{{std::cos(th), std::sin(th)}}; }
}  // namespace

DirectionSet lacunary2d(int order, int depth) {
  if (order < 0) throw std::invalid_argument("lacunary2d: order must be nonnegative");
  if (order >= 1 && depth < 1) throw std::invalid_argument("lacunary2d: depth must be positive");
  DirectionSet out;
  out.dims = 2;
  out.claimed_order = std::max(order, 1);
  out.basis = canonical_basis(2);
  if (order == 0) {
    out.claimed_order = 0;
    out.members.push_back(direction_from({2.0, 1.0}));
    return out;
  }
  // base: slopes 2^-k, k = 1..depth, as angles in decreasing order
  std::vector<double> angles;
  for (int k = 1; k <= depth; ++k) angles.push_back(std::atan(std::ldexp(1.0, -k)));
  std::sort(angles.begin(), angles.end());
  for (int level = 2; level <= order; ++level) {
    std::vector<double> next;
    next.reserve(angles.size() * (1 + 2 * depth));
    for (size_t i = 0; i + 1 < angles.size(); ++i) {
      double a = angles[i], b = angles[i + 1];
      next.push_back(a);
      // geometric interpolation toward each endpoint with ratio 1/2
      for (int m = 1; m <= depth; ++m) {
        double off = (b - a) * std::ldexp(1.0, -(m + 1));
        next.push_back(a + off);
        next.push_back(b - off);
      }
    }
    next.push_back(angles.back());
    std::sort(next.begin(), next.end());
    angles.swap(next);
  }
  for (double th : angles) out.members.push_back(dir_from_angle(th));
  return out;
}

DirectionSet uniform_set(int count) {
  if (count < 1) throw std::invalid_argument("uniform_set: count must be positive");
  DirectionSet out;
  out.dims = 2;
  out.basis = canonical_basis(2);
  for (int i = 1; i <= count; ++i) {
    double th = (std::numbers::pi / 2.0) * i / (count + 1);
    out.members.push_back(dir_from_angle(th));
  }
  return out;
}

}  // namespace lacuna
