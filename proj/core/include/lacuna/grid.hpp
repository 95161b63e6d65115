#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacuna {

using cplx = std::complex<double>;

/// Periodic sampling lattice on the n-torus, n in {1..4}.
///
/// Every axis has a power-of-two number of samples.  The canonical grid is
/// square (same side per axis); rectangular grids with sides >= 2 are allowed
/// for oracle-scale work via make_grid_sides.  Frequencies live in the
/// half-open integer box prod_a [-side_a/2, side_a/2), Nyquist on the
/// negative end.
struct Grid {
  std::vector<int> sides;
  double length = 1.0;

  int dim() const { return static_cast<int>(sides.size()); }
  int side() const;  // uniform side; throws if axes differ
  std::size_t points() const;

  bool operator==(const Grid&) const = default;

  /// Frequency along axis a for the per-axis storage index k in [0, side_a).
  int freq_of_index(int k, int axis) const {
    const int s = sides[axis];
    return k < s / 2 ? k : k - s;
  }
  int index_of_freq(int xi, int axis) const {
    const int s = sides[axis];
    return xi >= 0 ? xi : xi + s;
  }
  double cell() const { return length / static_cast<double>(sides[0]); }
};

Grid make_grid(int dim, int side, double length = 1.0);
Grid make_grid_sides(std::vector<int> sides, double length = 1.0);

/// Spatial samples on a grid, row-major in axis order.
struct Field {
  Grid grid;
  std::vector<cplx> values;
};

/// Plancherel-normalized Fourier coefficients, same storage layout as Field
/// with per-axis index k <-> frequency via Grid::freq_of_index.
struct Spectrum {
  Grid grid;
  std::vector<cplx> coeffs;
};

/// A frequency-domain multiplier: a pure function of the integer frequency
/// vector.  Composable by pointwise product.
struct Symbol {
  std::function<cplx(std::span<const int>)> eval;
  std::string label;
};

Symbol constant_symbol(cplx value, std::string label = "const");
Symbol product_symbol(Symbol a, Symbol b);

Field make_field(const Grid& g, cplx fill = 0.0);

/// Unitary DFT pair: ||f||_2 == ||fhat||_2 exactly up to roundoff.
Spectrum forward_transform(const Field& f);
Field inverse_transform(const Spectrum& s);

Field apply_multiplier(const Field& f, const Symbol& m);
Spectrum apply_multiplier(const Spectrum& s, const Symbol& m);

/// Visit every stored frequency: fn(xi, flat_index) with xi of length dim.
void for_each_frequency(const Grid& g,
                        const std::function<void(std::span<const int>, std::size_t)>& fn);

double norm_l2(const Field& f);
double norm_l2(const Spectrum& s);
double inner_real(const Field& a, const Field& b);  // Re<a,b>

}  // namespace lacuna
