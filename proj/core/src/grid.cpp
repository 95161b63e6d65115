#include "lacuna/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace lacuna {

namespace {

bool power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

// FFTW planner is not thread-safe; plans are cached per (sides, sign) and
// executed with the new-array interface.
struct PlanCache {
  std::mutex mu;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;

  fftw_plan get(const std::vector<int>& sides, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(sides, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t n = 1;
    for (int s : sides) n *= static_cast<std::size_t>(s);
    std::vector<cplx> buf(n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(sides.size()),
                                   sides.data(), p, p, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, plan);
    return plan;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void run_fft(const Grid& g, std::vector<cplx>& data, int sign) {
  fftw_plan plan = plan_cache().get(g.sides, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& v : data) v *= scale;
}

}  // namespace

int Grid::side() const {
  for (int s : sides)
    if (s != sides[0]) throw std::logic_error("grid is not square");
  return sides[0];
}

std::size_t Grid::points() const {
  std::size_t n = 1;
  for (int s : sides) n *= static_cast<std::size_t>(s);
  return n;
}

Grid make_grid(int dim, int side, double length) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("grid dim must be in 1..4");
  if (side < 4 || !power_of_two(side))
    throw std::invalid_argument("grid side must be a power of two >= 4");
  if (!(length > 0.0)) throw std::invalid_argument("grid length must be positive");
  return Grid{std::vector<int>(static_cast<std::size_t>(dim), side), length};
}

Grid make_grid_sides(std::vector<int> sides, double length) {
  if (sides.empty() || sides.size() > 4)
    throw std::invalid_argument("grid dim must be in 1..4");
  for (int s : sides)
    if (s < 2 || !power_of_two(s))
      throw std::invalid_argument("grid sides must be powers of two >= 2");
  if (!(length > 0.0)) throw std::invalid_argument("grid length must be positive");
  return Grid{std::move(sides), length};
}

Field make_field(const Grid& g, cplx fill) {
  return Field{g, std::vector<cplx>(g.points(), fill)};
}

Symbol constant_symbol(cplx value, std::string label) {
  return Symbol{[value](std::span<const int>) { return value; }, std::move(label)};
}

Symbol product_symbol(Symbol a, Symbol b) {
  auto ea = a.eval;
  auto eb = b.eval;
  return Symbol{[ea, eb](std::span<const int> xi) { return ea(xi) * eb(xi); },
                a.label + "*" + b.label};
}

Spectrum forward_transform(const Field& f) {
  Spectrum s{f.grid, f.values};
  run_fft(f.grid, s.coeffs, FFTW_FORWARD);
  return s;
}

Field inverse_transform(const Spectrum& s) {
  Field f{s.grid, s.coeffs};
  run_fft(s.grid, f.values, FFTW_BACKWARD);
  return f;
}

void for_each_frequency(const Grid& g,
                        const std::function<void(std::span<const int>, std::size_t)>& fn) {
  const int d = g.dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<int> xi(static_cast<std::size_t>(d), 0);
  for (int a = 0; a < d; ++a) xi[a] = g.freq_of_index(0, a);
  const std::size_t n = g.points();
  for (std::size_t flat = 0; flat < n; ++flat) {
    fn(xi, flat);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g.sides[a]) {
        xi[a] = g.freq_of_index(idx[a], a);
        break;
      }
      idx[a] = 0;
      xi[a] = g.freq_of_index(0, a);
    }
  }
}

Spectrum apply_multiplier(const Spectrum& s, const Symbol& m) {
  Spectrum out{s.grid, s.coeffs};
  for_each_frequency(s.grid, [&](std::span<const int> xi, std::size_t flat) {
    const cplx v = m.eval(xi);
    if (std::isnan(v.real()) || std::isnan(v.imag()))
      throw std::runtime_error("symbol '" + m.label + "' produced NaN");
    out.coeffs[flat] *= v;
  });
  return out;
}

Field apply_multiplier(const Field& f, const Symbol& m) {
  return inverse_transform(apply_multiplier(forward_transform(f), m));
}

double norm_l2(const Field& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s);
}

double norm_l2(const Spectrum& sp) {
  double s = 0.0;
  for (const auto& v : sp.coeffs) s += std::norm(v);
  return std::sqrt(s);
}

double inner_real(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += (std::conj(a.values[i]) * b.values[i]).real();
  return s;
}

}  // namespace lacuna
