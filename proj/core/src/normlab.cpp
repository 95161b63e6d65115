#include "lacuna/normlab.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lacuna {

namespace {

Symbol conjugate_symbol(const Symbol& s) {
  Symbol out;
  out.label = "conj(" + s.label + ")";
  auto inner = s.eval;
  out.eval = [inner](std::span<const int> xi) { return std::conj(inner(xi)); };
  return out;
}

}  // namespace

OpFamily multiplier_family(std::vector<Symbol> symbols) {
  OpFamily fam;
  fam.count = static_cast<int>(symbols.size());
  std::vector<Symbol> conj;
  conj.reserve(symbols.size());
  for (const auto& s : symbols) conj.push_back(conjugate_symbol(s));
  fam.apply_all = [symbols](const Field& f) {
    Spectrum sp = forward_transform(f);
    std::vector<Field> out;
    out.reserve(symbols.size());
    for (const auto& s : symbols) out.push_back(inverse_transform(apply_multiplier(sp, s)));
    return out;
  };
  fam.frozen_adjoint = [conj](const Field& g, const std::vector<int>& sel) {
    Field acc = g;
    std::fill(acc.values.begin(), acc.values.end(), cplx{0.0});
    Field masked = g;
    for (size_t k = 0; k < conj.size(); ++k) {
      bool any = false;
      for (size_t i = 0; i < g.values.size(); ++i) {
        bool mine = sel[i] == static_cast<int>(k);
        masked.values[i] = mine ? g.values[i] : cplx{0.0};
        any = any || (mine && masked.values[i] != cplx{0.0});
      }
      if (!any) continue;
      Field part = apply_multiplier(masked, conj[k]);
      for (size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += part.values[i];
    }
    return acc;
  };
  return fam;
}

OpFamily halfspace_family(const DirectionSet& dirs, HalfspaceConvention conv) {
  std::vector<Symbol> syms;
  for (const auto& w : dirs.members) syms.push_back(halfspace_symbol(w, conv));
  return multiplier_family(std::move(syms));
}

namespace {

double weighted_l2(const Field& f, const Weight* w) {
  if (!w) return norm_l2(f);
  double acc = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) acc += std::norm(f.values[i]) * w->values[i];
  double cellvol = 1.0;
  for (int a = 0; a < f.grid.dim(); ++a) cellvol *= f.grid.length / f.grid.sides[a];
  return std::sqrt(acc * cellvol);
}

// selection and achieved max field for the current iterate
std::pair<std::vector<int>, Field> select_argmax(const std::vector<Field>& tf) {
  size_t pts = tf[0].values.size();
  std::vector<int> sel(pts, 0);
  Field mx = tf[0];
  for (size_t i = 0; i < pts; ++i) {
    double best = std::abs(tf[0].values[i]);
    for (size_t k = 1; k < tf.size(); ++k) {
      double v = std::abs(tf[k].values[i]);
      if (v > best) {
        best = v;
        sel[i] = static_cast<int>(k);
      }
    }
    mx.values[i] = tf[sel[i]].values[i];
  }
  return {std::move(sel), std::move(mx)};
}

Field random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Field f{g, std::vector<cplx>(g.points())};
  for (auto& v : f.values) v = cplx{gauss(rng), gauss(rng)};
  return f;
}

void project_field(Field& f, const std::function<void(Spectrum&)>& projector) {
  if (!projector) return;
  Spectrum sp = forward_transform(f);
  projector(sp);
  f = inverse_transform(sp);
}

}  // namespace

double evaluate_witness(const OpFamily& family, const Field& witness, const Weight* weight) {
  double den = weighted_l2(witness, weight);
  if (den == 0.0) return 0.0;
  auto tf = family.apply_all(witness);
  Field mx = tf[0];
  for (size_t i = 0; i < mx.values.size(); ++i) {
    double best = 0.0;
    for (const auto& g : tf) best = std::max(best, std::abs(g.values[i]));
    mx.values[i] = best;
  }
  return weighted_l2(mx, weight) / den;
}

NormReport estimate_maximal_norm(const OpFamily& family, const Grid& grid,
                                 const EstimatorOptions& opt) {
  if (family.count == 0) throw std::invalid_argument("estimate_maximal_norm: empty family");
  NormReport best;
  best.seed = opt.seed;
  best.restarts = opt.restarts;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    std::mt19937_64 rng(opt.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r + 1));
    Field f = (r == 0 && opt.warm_start) ? *opt.warm_start : random_field(grid, rng);
    project_field(f, opt.projector);
    double nf = weighted_l2(f, opt.weight);
    if (nf == 0.0) continue;
    for (auto& v : f.values) v /= nf;
    double prev = -1.0;
    int it = 0;
    for (; it < opt.iters; ++it) {
      auto tf = family.apply_all(f);
      auto [sel, mx] = select_argmax(tf);
      double est = weighted_l2(mx, opt.weight) / weighted_l2(f, opt.weight);
      if (est > best.estimate) {
        best.estimate = est;
        best.witness = f;
        best.iterations = it;
      }
      if (std::abs(est - prev) < 1e-6 * std::max(1.0, est)) break;
      prev = est;
      // one adjoint power step on the frozen operator, in the weighted metric
      Field g = mx;
      if (opt.weight)
        for (size_t i = 0; i < g.values.size(); ++i) g.values[i] *= opt.weight->values[i];
      Field next = family.frozen_adjoint(g, sel);
      if (opt.weight)
        for (size_t i = 0; i < next.values.size(); ++i) next.values[i] /= opt.weight->values[i];
      project_field(next, opt.projector);
      double nn = weighted_l2(next, opt.weight);
      if (nn == 0.0) break;
      for (auto& v : next.values) v /= nn;
      f = std::move(next);
    }
  }
  return best;
}

double brute_force_selection_norm(const OpFamily& family, const Grid& grid) {
  size_t pts = static_cast<size_t>(grid.points());
  double combos = std::pow(static_cast<double>(family.count), static_cast<double>(pts));
  if (combos > 1e6) throw std::invalid_argument("brute_force_selection_norm: selection budget exceeded");
  // dense matrices of each member, column by column
  std::vector<Eigen::MatrixXcd> mats(family.count, Eigen::MatrixXcd(pts, pts));
  for (size_t j = 0; j < pts; ++j) {
    Field e{grid, std::vector<cplx>(pts, cplx{0.0})};
    e.values[j] = 1.0;
    auto tf = family.apply_all(e);
    for (int k = 0; k < family.count; ++k)
      for (size_t i = 0; i < pts; ++i) mats[k](i, j) = tf[k].values[i];
  }
  double best = 0.0;
  std::vector<int> sel(pts, 0);
  Eigen::MatrixXcd frozen(pts, pts);
  while (true) {
    for (size_t i = 0; i < pts; ++i) frozen.row(i) = mats[sel[i]].row(i);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(frozen);
    best = std::max(best, svd.singularValues()(0));
    size_t i = 0;
    while (i < pts && ++sel[i] == family.count) sel[i++] = 0;
    if (i == pts) break;
  }
  return best;
}

namespace {
void fit_model(const std::vector<GrowthRow>& rows, double (*xform)(double), double& c, double& resid) {
  double num = 0.0, den = 0.0;
  for (const auto& r : rows) {
    double m = xform(static_cast<double>(r.n));
    num += m * r.estimate;
    den += m * m;
  }
  c = den > 0.0 ? num / den : 0.0;
  double ss = 0.0;
  for (const auto& r : rows) {
    double m = xform(static_cast<double>(r.n));
    ss += (r.estimate - c * m) * (r.estimate - c * m);
  }
  resid = std::sqrt(ss / rows.size());
}
}  // namespace

GrowthTable growth_experiment(const std::function<DirectionSet(int)>& generator,
                              const std::vector<int>& sizes, const Grid& grid,
                              HalfspaceConvention conv, const EstimatorOptions& opt) {
  GrowthTable table;
  Field warm;
  bool have_warm = false;
  for (int n : sizes) {
    DirectionSet dirs = generator(n);
    OpFamily fam = halfspace_family(dirs, conv);
    EstimatorOptions local = opt;
    if (have_warm) local.warm_start = &warm;
    NormReport rep = estimate_maximal_norm(fam, grid, local);
    table.rows.push_back({n, rep.estimate});
    warm = rep.witness;
    have_warm = !warm.values.empty();
  }
  fit_model(table.rows, [](double x) { return std::sqrt(std::log(x + 1.0)); }, table.c_sqrtlog,
            table.resid_sqrtlog);
  fit_model(table.rows, [](double x) { return std::log(x + 1.0); }, table.c_log, table.resid_log);
  return table;
}

double theta_probe(const DirectionSet& dirs, const Weight& w, int n,
                   const std::function<DirectionSet(std::mt19937_64&)>& sampler, int budget,
                   const Grid& grid, const EstimatorOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  double best = 0.0;
  for (int b = 0; b < budget; ++b) {
    DirectionSet sub = sampler(rng);
    if (static_cast<int>(sub.members.size()) > n || sub.members.empty()) continue;
    OpFamily fam = halfspace_family(sub, HalfspaceConvention::indicator);
    EstimatorOptions local = opt;
    local.weight = &w;
    local.seed = opt.seed + 131ull * static_cast<std::uint64_t>(b + 1);
    best = std::max(best, estimate_maximal_norm(fam, grid, local).estimate);
  }
  (void)dirs;
  return best;
}

Counterexample counterexample_build(int d, int n) {
  if (d < 1 || n < 2) throw std::invalid_argument("counterexample_build: need d >= 1, N >= 2");
  Counterexample cex;
  cex.d = d;
  cex.n = n;
  cex.small_n_warning = n <= 10 * d;
  int dim = 2 * d;
  cex.dirs.dims = dim;
  cex.dirs.basis = canonical_basis(dim);
  auto pairs = sigma_set(dim);
  std::vector<int> m(d, 1);  // index tuple in {1..N}^d
  while (true) {
    // coordinate exponents: x_{2k-1} = 2^{-2kN}, x_{2k} = 2^{-2kN - m_k}
    std::vector<int> expo(dim);
    for (int k = 0; k < d; ++k) {
      expo[2 * k] = -2 * (k + 1) * n;
      expo[2 * k + 1] = -2 * (k + 1) * n - m[k];
    }
    int top = expo[0];
    std::vector<double> coords(dim);
    for (int i = 0; i < dim; ++i) coords[i] = std::ldexp(1.0, expo[i] - top);
    cex.dirs.members.push_back(direction_from(std::move(coords)));
    CellIndex cell;
    // ratio of coordinates i<j is 2^{expo_j - expo_i}; the half-open dyadic
    // band of 2^{-t} is l = t - 1
    for (auto [i, j] : pairs) cell.entries[{i, j}] = (expo[i] - expo[j]) - 1;
    cex.cells.push_back(std::move(cell));
    int k = 0;
    while (k < d && ++m[k] > n) m[k++] = 1;
    if (k == d) break;
  }
  int scale = 2 * n;
  for (int k = 1; k <= d; ++k)
    cex.factors.push_back({{2 * (k - 1), 2 * k - 1}, -3 * k * scale, -(3 * k - 1) * scale});
  return cex;
}

// {xi_1 > 0, xi_2 < 0} is the quadrant where the angular cutoffs vary
std::function<void(Spectrum&)> quadrant_annulus_projector(double r_lo, double r_hi) {
  return [r_lo, r_hi](Spectrum& sp) {
    for_each_frequency(sp.grid, [&](std::span<const int> xi, size_t idx) {
      double r2 = 0.0;
      for (int x : xi) r2 += static_cast<double>(x) * x;
      double r = std::sqrt(r2);
      bool ok = xi[0] > 0 && xi[1] < 0 && r > r_lo && r <= r_hi;
      if (!ok) sp.coeffs[idx] = 0.0;
    });
  };
}

double model_outer_norm(int d, int n, const Grid& grid2d, const EstimatorOptions& opt) {
  if (grid2d.dim() != 2) throw std::invalid_argument("model_outer_norm: expects a 2D grid");
  std::vector<Symbol> syms;
  for (int m = 1; m <= n; ++m) {
    Symbol k = kappa({0, 1}, m - 1, KappaKind::plus, 2);
    Symbol s;
    s.label = "Id-K+" + std::to_string(m);
    auto inner = k.eval;
    s.eval = [inner](std::span<const int> xi) { return cplx{1.0} - inner(xi); };
    syms.push_back(std::move(s));
  }
  OpFamily fam = multiplier_family(std::move(syms));
  EstimatorOptions local = opt;
  if (!local.projector) {
    double side = grid2d.side();
    local.projector = quadrant_annulus_projector(side / 8.0, side / 4.0);
  }
  double n1 = estimate_maximal_norm(fam, grid2d, local).estimate;
  return std::pow(n1, d);
}

TwoSidedReport two_sided_2d_probe(int n, const Grid& grid, KappaKind eps,
                                  const EstimatorOptions& opt) {
  std::vector<Symbol> syms;
  for (int l = 0; l < n; ++l) syms.push_back(kappa({0, 1}, l, eps, 2));
  OpFamily fam = multiplier_family(std::move(syms));
  EstimatorOptions local = opt;
  if (!local.projector) {
    double side = grid.side();
    local.projector = quadrant_annulus_projector(side / 8.0, side / 4.0);
  }
  TwoSidedReport rep;
  rep.estimate = estimate_maximal_norm(fam, grid, local).estimate;
  rep.sqrtlog_ratio = rep.estimate / std::sqrt(std::log(static_cast<double>(n) + 1.0));
  return rep;
}

}  // namespace lacuna
