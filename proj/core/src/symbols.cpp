#include "lacuna/symbols.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lacuna {

namespace {
double bump_h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}  // namespace

double smooth_ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = bump_h(x);
  double b = bump_h(1.0 - x);
  return a / (a + b);
}

double CutoffProfile::operator()(double x) const {
  int n = dim_param;
  if (kind == CutoffKind::plus) {
    // transition on [-(n+1), -n]
    return smooth_ramp(x + (n + 1));
  }
  // transition on [-1/(2n), -1/(2(n+1))]
  double lo = -1.0 / (2.0 * n);
  double hi = -1.0 / (2.0 * (n + 1));
  return 1.0 - smooth_ramp((x - lo) / (hi - lo));
}

namespace {
bool wedge_contains_ratio(double x1, double x2, const WedgeSpec& spec) {
  if (x2 == 0.0) return false;
  double r = -x1 / x2;
  double lo = std::ldexp(1.0, -(spec.ell + 1)) / spec.gamma;
  double hi = spec.gamma * std::ldexp(1.0, -spec.ell);
  return lo <= r && r < hi;
}
}  // namespace

bool wedge_contains(std::span<const double> xi, const WedgeSpec& spec) {
  return wedge_contains_ratio(xi[spec.sigma.first], xi[spec.sigma.second], spec);
}

bool wedge_contains(std::span<const int> xi, const WedgeSpec& spec) {
  return wedge_contains_ratio(xi[spec.sigma.first], xi[spec.sigma.second], spec);
}

double kappa_value(std::span<const double> xi, SigmaPair sigma, int ell, KappaKind eps, int n) {
  double x1 = xi[sigma.first];
  double x2 = xi[sigma.second];
  if (x2 == 0.0) return eps == KappaKind::plus ? 1.0 : 0.0;
  double x = std::ldexp(x1, ell) / x2;
  switch (eps) {
    case KappaKind::plus:
      return CutoffProfile{CutoffKind::plus, n}(x);
    case KappaKind::minus:
      return CutoffProfile{CutoffKind::minus, n}(x);
    case KappaKind::both:
      return CutoffProfile{CutoffKind::plus, n}(x) * CutoffProfile{CutoffKind::minus, n}(x);
  }
  return 0.0;
}

namespace {
std::vector<double> to_real(std::span<const int> xi) {
  return std::vector<double>(xi.begin(), xi.end());
}

const char* eps_tag(KappaKind e) {
  switch (e) {
    case KappaKind::plus: return "+";
    case KappaKind::minus: return "-";
    default: return "o";
  }
}
}  // namespace

Symbol kappa(SigmaPair sigma, int ell, KappaKind eps, int n) {
  Symbol s;
  s.label = "kappa" + std::string(eps_tag(eps)) + "_(" + std::to_string(sigma.first) + "," +
            std::to_string(sigma.second) + ")," + std::to_string(ell);
  s.eval = [=](std::span<const int> xi) -> cplx {
    auto r = to_real(xi);
    return kappa_value(r, sigma, ell, eps, n);
  };
  return s;
}

Symbol compose_K(const std::vector<SigmaPair>& subset, const CellIndex& cell,
                 const std::map<SigmaPair, KappaKind>& eps, int n) {
  if (subset.empty()) throw std::invalid_argument("compose_K: empty pair subset");
  struct Factor {
    SigmaPair sigma;
    int ell;
    KappaKind e;
  };
  std::vector<Factor> factors;
  for (auto sigma : subset) {
    auto it = cell.entries.find(sigma);
    if (it == cell.entries.end()) throw std::invalid_argument("compose_K: cell lacks an entry for a requested pair");
    auto ie = eps.find(sigma);
    if (ie == eps.end()) throw std::invalid_argument("compose_K: eps lacks an entry for a requested pair");
    factors.push_back({sigma, it->second, ie->second});
  }
  Symbol s;
  s.label = "K_U";
  s.eval = [factors, n](std::span<const int> xi) -> cplx {
    auto r = to_real(xi);
    double v = 1.0;
    for (const auto& f : factors) v *= kappa_value(r, f.sigma, f.ell, f.e, n);
    return v;
  };
  return s;
}

Symbol halfspace_symbol(const Direction& omega, HalfspaceConvention conv) {
  Symbol s;
  s.label = conv == HalfspaceConvention::sign ? "sign(xi.w)" : "1(xi.w>0)";
  std::vector<double> w = omega.coords;
  s.eval = [w, conv](std::span<const int> xi) -> cplx {
    double d = 0.0;
    for (size_t i = 0; i < w.size(); ++i) d += w[i] * xi[i];
    if (d == 0.0) return 0.0;
    if (conv == HalfspaceConvention::sign) return d > 0.0 ? 1.0 : -1.0;
    return d > 0.0 ? 1.0 : 0.0;
  };
  return s;
}

namespace {
// A(x): 0 for |x| <= 1/2, 1 for |x| >= 1; dyadic dilates telescope
double lp_A(double x) { return smooth_ramp(2.0 * (std::abs(x) - 0.5)); }
}  // namespace

double lp_p(double x) { return lp_A(x) - lp_A(x / 2.0); }

double lp_q(double x) {
  double ax = std::abs(x);
  return smooth_ramp(4.0 * (ax - 0.25)) - smooth_ramp((ax - 2.0) / 2.0);
}

Symbol project_symbol(int t, int axis, LpKind kind) {
  Symbol s;
  s.label = (kind == LpKind::P ? "P_" : "Q_") + std::to_string(t) + "^" + std::to_string(axis);
  s.eval = [t, axis, kind](std::span<const int> xi) -> cplx {
    double x = std::ldexp(static_cast<double>(xi[axis]), -t);
    return kind == LpKind::P ? lp_p(x) : lp_q(x);
  };
  return s;
}

namespace {
// central finite difference of order (a1,a2) in the two wedge coordinates
double fd_kappa(double x1, double x2, int a1, int a2, double h1, double h2, SigmaPair, int ell,
                KappaKind eps, int n) {
  auto eval2 = [&](double u, double v) {
    double xi[2] = {u, v};
    return kappa_value(std::span<const double>(xi, 2), {0, 1}, ell, eps, n);
  };
  // build the difference stencil coefficients iteratively
  double sum = 0.0;
  for (int i = 0; i <= a1; ++i) {
    double c1 = std::pow(-1.0, i) * std::tgamma(a1 + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(a1 - i + 1.0));
    double u = x1 + (a1 / 2.0 - i) * h1;
    for (int j = 0; j <= a2; ++j) {
      double c2 = std::pow(-1.0, j) * std::tgamma(a2 + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(a2 - j + 1.0));
      double v = x2 + (a2 / 2.0 - j) * h2;
      sum += c1 * c2 * eval2(u, v);
    }
  }
  return sum / (std::pow(h1, a1) * std::pow(h2, a2));
}
}  // namespace

double derivative_bound_probe(SigmaPair sigma, int ell, KappaKind eps, int n, int samples,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // sample around the transition bands: ratios in [-(n+2), 0] scaled by 2^-l,
  // magnitudes spread over a few octaves
  std::uniform_real_distribution<double> ratio(-(n + 2.0), 0.5);
  std::uniform_real_distribution<double> mag(0.5, 8.0);
  std::uniform_int_distribution<int> sgn(0, 1);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double x2 = mag(rng) * (sgn(rng) ? 1.0 : -1.0);
    double x1 = ratio(rng) * x2 * std::ldexp(1.0, -ell);
    for (int a1 = 0; a1 <= 4; ++a1)
      for (int a2 = 0; a1 + a2 <= 4; ++a2) {
        if (a1 + a2 == 0) continue;
        double h1 = 1e-2 * std::max(std::abs(x1), std::ldexp(std::abs(x2), -ell));
        double h2 = 1e-2 * std::abs(x2);
        double d = fd_kappa(x1, x2, a1, a2, h1, h2, sigma, ell, eps, n);
        double scaled = std::pow(std::abs(x1), a1) * std::pow(std::abs(x2), a2) * std::abs(d);
        worst = std::max(worst, scaled);
      }
  }
  return worst;
}

}  // namespace lacuna
