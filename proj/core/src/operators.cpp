#include "lacuna/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace lacuna {

Field hilbert_dir(const Field& f, const Direction& omega, HalfspaceConvention conv) {
  return apply_multiplier(f, halfspace_symbol(omega, conv));
}

Field maximal_hilbert(const Field& f, const DirectionSet& dirs, HalfspaceConvention conv) {
  if (dirs.members.empty()) throw std::invalid_argument("maximal_hilbert: empty direction set");
  Field out = f;
  std::fill(out.values.begin(), out.values.end(), cplx{0.0});
  Spectrum sp = forward_transform(f);
  for (const auto& w : dirs.members) {
    Spectrum sw = apply_multiplier(sp, halfspace_symbol(w, conv));
    Field hw = inverse_transform(sw);
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = std::max(out.values[i].real(), std::abs(hw.values[i]));
  }
  return out;
}

cplx interpolate(const Field& f, std::span<const double> x) {
  const Grid& g = f.grid;
  int d = g.dim();
  // per-axis cell coordinates with periodic wrap
  std::vector<int> base(d);
  std::vector<double> frac(d);
  for (int a = 0; a < d; ++a) {
    int m = g.sides[a];
    double u = x[a] / g.length * m;
    double fl = std::floor(u);
    base[a] = static_cast<int>(fl) % m;
    if (base[a] < 0) base[a] += m;
    frac[a] = u - fl;
  }
  cplx acc = 0.0;
  for (int corner = 0; corner < (1 << d); ++corner) {
    double wgt = 1.0;
    size_t idx = 0;
    for (int a = 0; a < d; ++a) {
      int bit = (corner >> a) & 1;
      wgt *= bit ? frac[a] : 1.0 - frac[a];
      int c = base[a] + bit;
      if (c >= g.sides[a]) c -= g.sides[a];
      idx = idx * g.sides[a] + c;
    }
    if (wgt != 0.0) acc += wgt * f.values[idx];
  }
  return acc;
}

cplx avg_segment(const Field& f, const SegmentSpec& seg) {
  const Grid& g = f.grid;
  int d = g.dim();
  double cell = g.length / *std::max_element(g.sides.begin(), g.sides.end());
  double step = cell / 4.0;
  int half = std::max(1, static_cast<int>(std::ceil(seg.radius / step)));
  double h = seg.radius / half;
  std::vector<double> p(d);
  cplx acc = 0.0;
  for (int k = -half; k <= half; ++k) {
    double t = k * h;
    for (int a = 0; a < d; ++a) p[a] = seg.center[a] + t * seg.omega.coords[a];
    double wgt = (k == -half || k == half) ? 0.5 : 1.0;
    acc += wgt * interpolate(f, p);
  }
  return acc / static_cast<double>(2 * half);
}

std::vector<double> dyadic_radii(const Grid& g) {
  double cell = g.length / *std::max_element(g.sides.begin(), g.sides.end());
  std::vector<double> out;
  for (double r = cell; r <= g.length / 2.0 + 1e-15; r *= 2.0) out.push_back(r);
  return out;
}

namespace {
Field abs_field(const Field& f) {
  Field out = f;
  for (auto& v : out.values) v = std::abs(v);
  return out;
}
}  // namespace

Field maximal_dir(const Field& f, const Direction& omega, const std::vector<double>& radii) {
  if (radii.empty()) throw std::invalid_argument("maximal_dir: empty radius ladder");
  const Grid& g = f.grid;
  Field af = abs_field(f);
  Field out = f;
  int d = g.dim();
  std::vector<double> x(d);
  std::vector<int> c(d, 0);
  for (size_t i = 0; i < out.values.size(); ++i) {
    for (int a = 0; a < d; ++a) x[a] = (c[a] + 0.0) * g.length / g.sides[a];
    double best = 0.0;
    for (double r : radii) {
      SegmentSpec seg{x, r, omega};
      best = std::max(best, avg_segment(af, seg).real());
    }
    out.values[i] = best;
    int a = d - 1;
    while (a >= 0 && ++c[a] == g.sides[a]) c[a--] = 0;
  }
  return out;
}

Field maximal_set(const Field& f, const DirectionSet& dirs, const std::vector<double>& radii) {
  if (dirs.members.empty()) throw std::invalid_argument("maximal_set: empty direction set");
  Field out = maximal_dir(f, dirs.members.front(), radii);
  for (size_t k = 1; k < dirs.members.size(); ++k) {
    Field m = maximal_dir(f, dirs.members[k], radii);
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = std::max(out.values[i].real(), m.values[i].real());
  }
  return out;
}

namespace {

// circular sliding-window mean along one axis, window w cells anchored at the
// output index (covers cells [s, s+w))
void axis_window_mean(std::vector<double>& vals, const Grid& g, int axis, int w) {
  int m = g.sides[axis];
  int d = g.dim();
  size_t stride = 1;
  for (int a = axis + 1; a < d; ++a) stride *= g.sides[a];
  size_t block = stride * m;
  std::vector<double> line(m), pre(m + 1);
  for (size_t outer = 0; outer < vals.size() / block; ++outer)
    for (size_t inner = 0; inner < stride; ++inner) {
      size_t off = outer * block + inner;
      for (int i = 0; i < m; ++i) line[i] = vals[off + i * stride];
      pre[0] = 0.0;
      for (int i = 0; i < m; ++i) pre[i + 1] = pre[i] + line[i];
      for (int s = 0; s < m; ++s) {
        int e = s + w;
        double sum = e <= m ? pre[e] - pre[s] : pre[m] - pre[s] + pre[e - m];
        vals[off + s * stride] = sum / w;
      }
    }
}

// circular sliding max over anchors s in [i-w+1, i] for each output index i
void axis_window_max(std::vector<double>& vals, const Grid& g, int axis, int w) {
  int m = g.sides[axis];
  int d = g.dim();
  size_t stride = 1;
  for (int a = axis + 1; a < d; ++a) stride *= g.sides[a];
  size_t block = stride * m;
  std::vector<double> line(2 * m), out(m);
  for (size_t outer = 0; outer < vals.size() / block; ++outer)
    for (size_t inner = 0; inner < stride; ++inner) {
      size_t off = outer * block + inner;
      for (int i = 0; i < m; ++i) line[i] = line[i + m] = vals[off + i * stride];
      std::deque<int> dq;
      // sliding max of width w over the doubled line; output i uses window
      // ending at position i+m in the doubled array
      for (int j = 0; j < 2 * m; ++j) {
        while (!dq.empty() && line[dq.back()] <= line[j]) dq.pop_back();
        dq.push_back(j);
        while (dq.front() <= j - w) dq.pop_front();
        int i = j - m;
        if (i >= 0 && i < m) out[i] = line[dq.front()];
      }
      for (int i = 0; i < m; ++i) vals[off + i * stride] = out[i];
    }
}

int log2_int(int m) {
  int l = 0;
  while ((1 << l) < m) ++l;
  return l;
}

}  // namespace

Field strong_maximal(const Field& f) {
  const Grid& g = f.grid;
  int d = g.dim();
  std::vector<double> af(f.values.size());
  for (size_t i = 0; i < af.size(); ++i) af[i] = std::abs(f.values[i]);
  std::vector<double> best(af.size(), 0.0);
  std::vector<int> wexp(d, 0);
  while (true) {
    std::vector<double> work = af;
    for (int a = 0; a < d; ++a) {
      int w = 1 << wexp[a];
      if (w > 1) axis_window_mean(work, g, a, w);
    }
    for (int a = 0; a < d; ++a) {
      int w = 1 << wexp[a];
      if (w > 1) axis_window_max(work, g, a, w);
    }
    for (size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], work[i]);
    int a = d - 1;
    while (a >= 0 && ++wexp[a] > log2_int(g.sides[a])) wexp[a--] = 0;
    if (a < 0) break;
  }
  Field out = f;
  for (size_t i = 0; i < best.size(); ++i) out.values[i] = best[i];
  return out;
}

Field strong_maximal_sq(const Field& f) { return strong_maximal(strong_maximal(f)); }

Field dyadic_expect(const Field& f, int level, int axis) {
  const Grid& g = f.grid;
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("dyadic_expect: axis out of range");
  int m = g.sides[axis];
  int depth = log2_int(m);
  if (level < 0 || level > depth) throw std::invalid_argument("dyadic_expect: level out of range");
  int block = m >> level;  // cells per dyadic block
  if (block == 1) return f;
  Field out = f;
  int d = g.dim();
  size_t stride = 1;
  for (int a = axis + 1; a < d; ++a) stride *= g.sides[a];
  size_t span = stride * m;
  for (size_t outer = 0; outer < out.values.size() / span; ++outer)
    for (size_t inner = 0; inner < stride; ++inner) {
      size_t off = outer * span + inner;
      for (int b = 0; b < m / block; ++b) {
        cplx sum = 0.0;
        for (int i = 0; i < block; ++i) sum += out.values[off + (b * block + i) * stride];
        sum /= static_cast<double>(block);
        for (int i = 0; i < block; ++i) out.values[off + (b * block + i) * stride] = sum;
      }
    }
  return out;
}

Field martingale_sq(const Field& f, int axis) {
  const Grid& g = f.grid;
  int depth = log2_int(g.sides[axis]);
  Field prev = dyadic_expect(f, 0, axis);
  Field out = f;
  std::vector<double> acc(f.values.size(), 0.0);
  for (int j = 1; j <= depth; ++j) {
    Field cur = dyadic_expect(f, j, axis);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(cur.values[i] - prev.values[i]);
    prev = std::move(cur);
  }
  for (size_t i = 0; i < acc.size(); ++i) out.values[i] = std::sqrt(acc[i]);
  return out;
}

CwwResult cww_probe(const Field& g, double lambda, double gamma_param, int axis, double A, double b) {
  if (!(lambda > 0.0) || !(gamma_param > 0.0))
    throw std::invalid_argument("cww_probe: lambda and gamma must be positive");
  const Grid& gr = g.grid;
  double cellvol = 1.0;
  for (int a = 0; a < gr.dim(); ++a) cellvol *= gr.length / gr.sides[a];
  Field e0 = dyadic_expect(g, 0, axis);
  Field sq = martingale_sq(g, axis);
  Direction e = direction_from([&] {
    std::vector<double> v(gr.dim(), 0.0);
    v[axis] = 1.0;
    return v;
  }());
  Field mg = maximal_dir(g, e, dyadic_radii(gr));
  CwwResult res;
  double bad = 0.0, level = 0.0;
  for (size_t i = 0; i < g.values.size(); ++i) {
    double dev = std::abs(g.values[i] - e0.values[i]);
    if (dev > 2.0 * lambda && sq.values[i].real() <= gamma_param * lambda) bad += 1.0;
    if (mg.values[i].real() > lambda) level += 1.0;
  }
  res.lhs = bad * cellvol;
  res.rhs = A * std::exp(-b / (gamma_param * gamma_param)) * level * cellvol;
  res.violation = res.lhs > res.rhs;
  return res;
}

}  // namespace lacuna
