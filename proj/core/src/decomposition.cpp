#include "lacuna/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lacuna {

std::vector<std::vector<int>> check_inclusion(const Direction& omega, const CellIndex& cell,
                                              const Grid& grid) {
  int n = grid.dim();
  Dissection diss{canonical_basis(n)};
  if (!(cell_of(omega, diss) == cell))
    throw std::invalid_argument("check_inclusion: cell does not match cell_of(omega)");
  std::vector<WedgeSpec> wedges;
  for (const auto& [sigma, ell] : cell.entries) wedges.push_back({sigma, ell, static_cast<double>(n)});
  std::vector<std::vector<int>> bad;
  for_each_frequency(grid, [&](std::span<const int> xi, size_t) {
    double dotv = 0.0, mx = 0.0;
    for (int j = 0; j < n; ++j) {
      dotv += omega.coords[j] * xi[j];
      mx = std::max(mx, std::abs(omega.coords[j] * xi[j]));
    }
    if (!(std::abs(dotv) < mx / n)) return;
    for (const auto& w : wedges)
      if (wedge_contains(xi, w)) return;
    bad.emplace_back(xi.begin(), xi.end());
  });
  return bad;
}

double inclusion_exclusion_residual(const CellIndex& cell, const Grid& grid) {
  int n = grid.dim();
  auto pairs = sigma_set(n);
  int np = static_cast<int>(pairs.size());
  double worst = 0.0;
  std::vector<double> k(np);
  for_each_frequency(grid, [&](std::span<const int> xi, size_t) {
    std::vector<double> r(xi.begin(), xi.end());
    for (int i = 0; i < np; ++i)
      k[i] = kappa_value(r, pairs[i], cell.entries.at(pairs[i]), KappaKind::both, n);
    double incl = 0.0;
    for (int mask = 1; mask < (1 << np); ++mask) {
      double prod = 1.0;
      int bits = 0;
      for (int i = 0; i < np; ++i)
        if (mask & (1 << i)) {
          prod *= k[i];
          ++bits;
        }
      incl += (bits % 2 ? 1.0 : -1.0) * prod;
    }
    double outer = 1.0;
    for (int i = 0; i < np; ++i) outer *= 1.0 - k[i];
    worst = std::max(worst, std::abs(1.0 - incl - outer));
  });
  return worst;
}

namespace {
std::vector<std::vector<SigmaPair>> nonempty_subsets(const std::vector<SigmaPair>& pairs) {
  std::vector<std::vector<SigmaPair>> out;
  int np = static_cast<int>(pairs.size());
  for (int mask = 1; mask < (1 << np); ++mask) {
    std::vector<SigmaPair> u;
    for (int i = 0; i < np; ++i)
      if (mask & (1 << i)) u.push_back(pairs[i]);
    out.push_back(std::move(u));
  }
  return out;
}
}  // namespace

Field represent_bound_check(const Field& f, const Direction& omega, double C,
                            HalfspaceConvention conv) {
  const Grid& g = f.grid;
  int n = g.dim();
  Dissection diss{canonical_basis(n)};
  CellIndex cell = cell_of(omega, diss);
  auto pairs = sigma_set(n);
  Spectrum sp = forward_transform(f);
  Symbol hs = halfspace_symbol(omega, conv);
  Field hf = inverse_transform(apply_multiplier(sp, hs));
  std::vector<double> rhs(f.values.size());
  for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::abs(f.values[i]);
  // sup over nonempty U of |H K_U f| with all-even cutoffs
  for (const auto& u : nonempty_subsets(pairs)) {
    std::map<SigmaPair, KappaKind> eps;
    for (auto s : u) eps[s] = KappaKind::both;
    Spectrum su = apply_multiplier(apply_multiplier(sp, compose_K(u, cell, eps, n)), hs);
    Field fu = inverse_transform(su);
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::max(rhs[i], std::abs(fu.values[i]));
  }
  // sup over signs eps in {+,-}^Sigma and nonempty U of |K^eps_U f|
  int np = static_cast<int>(pairs.size());
  for (int smask = 0; smask < (1 << np); ++smask) {
    std::map<SigmaPair, KappaKind> eps;
    for (int i = 0; i < np; ++i)
      eps[pairs[i]] = (smask & (1 << i)) ? KappaKind::plus : KappaKind::minus;
    for (const auto& u : nonempty_subsets(pairs)) {
      Field fu = inverse_transform(apply_multiplier(sp, compose_K(u, cell, eps, n)));
      for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::max(rhs[i], std::abs(fu.values[i]));
    }
  }
  Field margin = f;
  for (size_t i = 0; i < rhs.size(); ++i) margin.values[i] = C * rhs[i] - std::abs(hf.values[i]);
  return margin;
}

std::optional<int> choose_lp_axis(const std::vector<SigmaPair>& subset,
                                  const std::map<SigmaPair, KappaKind>& eps, const OctantSpec& oct) {
  if (subset.empty()) throw std::invalid_argument("choose_lp_axis: empty subset");
  auto common = [](SigmaPair a, SigmaPair b) -> std::optional<int> {
    if (a.first == b.first || a.first == b.second) return a.first;
    if (a.second == b.first || a.second == b.second) return a.second;
    return std::nullopt;
  };
  if (subset.size() == 1) return subset[0].first;
  if (subset.size() == 2) {
    auto c = common(subset[0], subset[1]);
    if (!c) throw std::invalid_argument("choose_lp_axis: pairs share no component in dimension 3");
    return *c;
  }
  // full triangle: on the octant, each sigma with matching coordinate signs has
  // kappa^- identically 0 and kappa^+ identically 1; drop one such pair
  for (const auto& sigma : subset) {
    if (oct.signs[sigma.first] * oct.signs[sigma.second] != 1) continue;
    if (eps.at(sigma) != KappaKind::plus) return std::nullopt;  // multiplier dies on the octant
  }
  std::optional<SigmaPair> drop;
  for (const auto& sigma : subset)
    if (oct.signs[sigma.first] * oct.signs[sigma.second] == 1) {
      drop = sigma;
      break;
    }
  if (!drop) throw std::logic_error("choose_lp_axis: no pair aligned with the octant");
  std::vector<SigmaPair> rest;
  for (const auto& sigma : subset)
    if (!(sigma == *drop)) rest.push_back(sigma);
  auto c = common(rest[0], rest[1]);
  if (!c) throw std::logic_error("choose_lp_axis: reduced pairs share no component");
  return *c;
}

namespace {
double worst_ratio(const Field& num, const Field& den, double floor) {
  double worst = 0.0;
  for (size_t i = 0; i < num.values.size(); ++i)
    worst = std::max(worst, std::abs(num.values[i]) / (den.values[i].real() + floor));
  return worst;
}

void require_octant(const Spectrum& sp, const OctantSpec& oct) {
  bool ok = true;
  for_each_frequency(sp.grid, [&](std::span<const int> xi, size_t idx) {
    if (std::abs(sp.coeffs[idx]) < 1e-14) return;
    for (size_t j = 0; j < oct.signs.size(); ++j)
      if (oct.signs[j] * xi[j] < 0) ok = false;
  });
  if (!ok) throw std::invalid_argument("annular_bound_check: spectrum leaves the declared octant");
}
}  // namespace

double annular_bound_check(const Field& f, const std::vector<SigmaPair>& subset,
                           const std::map<SigmaPair, KappaKind>& eps, const CellIndex& cell, int t,
                           const OctantSpec& oct) {
  const Grid& g = f.grid;
  if (g.dim() != 3) throw std::invalid_argument("annular_bound_check: requires dimension 3");
  Spectrum sp = forward_transform(f);
  require_octant(sp, oct);
  auto axis = choose_lp_axis(subset, eps, oct);
  double fmax = 0.0;
  for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
  if (!axis) {
    // K vanishes on the octant; report the exact ratio anyway
    Field kf = inverse_transform(apply_multiplier(sp, compose_K(subset, cell, eps, 3)));
    Field zero = f;
    std::fill(zero.values.begin(), zero.values.end(), cplx{0.0});
    return worst_ratio(kf, zero, 1e-14 * std::max(fmax, 1e-300));
  }
  Field pf = inverse_transform(apply_multiplier(sp, project_symbol(t, *axis, LpKind::P)));
  Field kpf = inverse_transform(apply_multiplier(forward_transform(pf), compose_K(subset, cell, eps, 3)));
  Field ms2 = strong_maximal_sq(pf);
  return worst_ratio(kpf, ms2, 1e-14 * std::max(fmax, 1e-300));
}

double annular_bound_check_general(const Field& f, const std::vector<SigmaPair>& subset,
                                   const std::map<SigmaPair, KappaKind>& eps, const CellIndex& cell,
                                   int t) {
  const Grid& g = f.grid;
  int n = g.dim();
  GraphReport rep = spanning_and_cycles(subset, n);
  Spectrum sp = forward_transform(f);
  for (int axis : rep.spanning) sp = apply_multiplier(sp, project_symbol(t, axis, LpKind::P));
  Field pf = inverse_transform(sp);
  Field kpf = inverse_transform(apply_multiplier(forward_transform(pf), compose_K(subset, cell, eps, n)));
  Field ms = pf;
  for (int i = 0; i < n; ++i) ms = strong_maximal(ms);
  double fmax = 0.0;
  for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
  return worst_ratio(kpf, ms, 1e-14 * std::max(fmax, 1e-300));
}

GraphReport spanning_and_cycles(const std::vector<SigmaPair>& subset, int n) {
  GraphReport rep;
  // bipartiteness by 2-coloring
  std::vector<int> color(n, -1);
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : subset) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int s = 0; s < n; ++s) {
    if (color[s] != -1 || adj[s].empty()) continue;
    std::vector<int> stack{s};
    color[s] = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v]) {
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          stack.push_back(u);
        } else if (color[u] == color[v]) {
          rep.has_odd_cycle = true;
        }
      }
    }
  }
  // minimum vertex cover by exhaustive search; n <= 4 keeps this trivial
  int best_mask = (1 << n) - 1;
  int best_size = n + 1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool covers = true;
    for (auto [a, b] : subset)
      if (!((mask >> a) & 1) && !((mask >> b) & 1)) {
        covers = false;
        break;
      }
    int size = __builtin_popcount(static_cast<unsigned>(mask));
    if (covers && size < best_size) {
      best_size = size;
      best_mask = mask;
    }
  }
  for (int v = 0; v < n; ++v)
    if ((best_mask >> v) & 1) rep.spanning.push_back(v);
  return rep;
}

}  // namespace lacuna
