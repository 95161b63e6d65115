#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "lacuna/decomposition.hpp"
#include "lacuna/io.hpp"
#include "lacuna/normlab.hpp"
#include "lacuna/weights.hpp"

using namespace lacuna;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  int grid = 32;
  int threads = 1;
  std::string out_dir = ".";
  bool dry_run = false;
};

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("LACUNA_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return flag_value;
}

std::string out_path(const Common& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  return (std::filesystem::path(c.out_dir) / name).string();
}

DirectionSet make_set(const std::string& kind, int dims, int k_lo, int k_hi, int depth, int count,
                      double lambda) {
  if (kind == "carbery") return carbery_set(dims, k_lo, k_hi);
  if (kind == "nsw") {
    std::vector<double> alphas(dims);
    for (int i = 0; i < dims; ++i) alphas[i] = i + 1.0;
    return nsw_set(lambda, alphas, count);
  }
  if (kind == "lacunary2d") return lacunary2d(1, depth);
  if (kind == "uniform") return uniform_set(count);
  if (kind == "slopes") {
    DirectionSet d;
    d.dims = 2;
    for (int k = 1; k <= count; ++k) d.members.push_back(direction_from({1.0, std::ldexp(1.0, -k)}));
    return d;
  }
  throw std::invalid_argument("unknown direction set kind: " + kind);
}

int run_verify(const Common& c) {
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, double value) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name << " (" << value << ")\n";
    all_ok = all_ok && ok;
  };
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss;
  for (int n : {2, 3}) {
    Grid g = make_grid(n, n == 2 ? c.grid : std::min(c.grid, 16));
    std::vector<double> coords(n);
    for (auto& x : coords) x = std::abs(gauss(rng)) + 1e-3;
    Direction w = direction_from(coords);
    CellIndex cell = cell_of(w, Dissection{canonical_basis(n)});
    double resid = inclusion_exclusion_residual(cell, g);
    report(n == 2 ? "inclusion-exclusion n=2" : "inclusion-exclusion n=3", resid < 1e-12, resid);
    auto bad = check_inclusion(w, cell, g);
    report(n == 2 ? "wedge covering n=2" : "wedge covering n=3", bad.empty(),
           static_cast<double>(bad.size()));
  }
  // Littlewood-Paley partition at random sample points
  double worst = 0.0;
  std::uniform_real_distribution<double> ux(-40.0, 40.0);
  for (int i = 0; i < 1000; ++i) {
    double x = ux(rng);
    if (std::abs(x) < 1e-6) continue;
    double sum = 0.0;
    for (int t = -60; t <= 60; ++t) sum += lp_p(std::ldexp(x, -t));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  report("littlewood-paley partition", worst < 1e-12, worst);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacuna: directional multiplier laboratory"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--grid", c.grid, "grid side (power of two)");
  app.add_option("--threads", c.threads, "worker threads (LACUNA_THREADS overrides)");
  app.add_option("--out-dir", c.out_dir, "output directory");
  app.add_flag("--dry-run", c.dry_run, "print the resolved plan, compute nothing");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a direction set as JSON");
  std::string kind = "carbery";
  int dims = 3, k_lo = 0, k_hi = 3, depth = 3, count = 8;
  double lambda = 0.5;
  gen->add_option("--kind", kind, "carbery|nsw|lacunary2d|uniform|slopes");
  gen->add_option("--dims", dims);
  gen->add_option("--k-lo", k_lo);
  gen->add_option("--k-hi", k_hi);
  gen->add_option("--depth", depth);
  gen->add_option("--count", count);
  gen->add_option("--lambda", lambda);

  // dissect
  auto* dissect = app.add_subcommand("dissect", "sector/cell table for a direction set");
  std::string dirs_path;
  dissect->add_option("--dirs", dirs_path, "direction set JSON")->required();

  // apply
  auto* apply = app.add_subcommand("apply", "apply an operator to a field file");
  std::string field_in, field_out, op = "hilbert";
  std::vector<double> omega;
  apply->add_option("--in", field_in)->required();
  apply->add_option("--out", field_out)->required();
  apply->add_option("--op", op, "hilbert|maximal|strong");
  apply->add_option("--omega", omega, "direction components");

  // verify
  app.add_subcommand("verify", "run the identity suites");

  // norm
  auto* norm = app.add_subcommand("norm", "estimate the maximal operator norm");
  std::string norm_dirs;
  int iters = 30, restarts = 8;
  norm->add_option("--dirs", norm_dirs, "direction set JSON")->required();
  norm->add_option("--iters", iters);
  norm->add_option("--restarts", restarts);

  // growth
  auto* growth = app.add_subcommand("growth", "norm growth over direction count");
  std::vector<int> sizes{2, 4, 8};
  growth->add_option("--sizes", sizes);
  growth->add_option("--iters", iters);
  growth->add_option("--restarts", restarts);

  // cex
  auto* cex = app.add_subcommand("cex", "counterexample family bookkeeping");
  int cex_d = 2, cex_n = 4;
  cex->add_option("--d", cex_d);
  cex->add_option("--n", cex_n);

  // weights
  auto* weights = app.add_subcommand("weights", "A_p / majorant probes");
  double p = 2.0;
  weights->add_option("--p", p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.threads = resolve_threads(c.threads);

  try {
    if (gen->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: gen kind=" << kind << " dims=" << dims << " -> "
                  << out_path(c, "directions.json") << "\n";
        return 0;
      }
      DirectionSet d = make_set(kind, dims, k_lo, k_hi, depth, count, lambda);
      write_direction_set(d, out_path(c, "directions.json"));
      std::cout << "wrote " << d.members.size() << " directions\n";
      return 0;
    }
    if (dissect->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: dissect " << dirs_path << " -> " << out_path(c, "cells.csv") << "\n";
        return 0;
      }
      DirectionSet d = read_direction_set(dirs_path);
      write_cell_table_csv(d, Dissection{canonical_basis(d.dims)}, out_path(c, "cells.csv"));
      return 0;
    }
    if (apply->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: apply " << op << " " << field_in << " -> " << field_out << "\n";
        return 0;
      }
      Field f = read_field(field_in);
      Field out = f;
      if (op == "hilbert") {
        if (omega.empty()) throw std::invalid_argument("hilbert needs --omega");
        out = hilbert_dir(f, direction_from(omega), HalfspaceConvention::sign);
      } else if (op == "maximal") {
        if (omega.empty()) throw std::invalid_argument("maximal needs --omega");
        out = maximal_dir(f, direction_from(omega), dyadic_radii(f.grid));
      } else if (op == "strong") {
        out = strong_maximal(f);
      } else {
        throw std::invalid_argument("unknown op: " + op);
      }
      write_field(out, field_out);
      return 0;
    }
    if (app.get_subcommand("verify")->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: verify identity suites on grid " << c.grid << "\n";
        return 0;
      }
      return run_verify(c);
    }
    if (norm->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: norm " << norm_dirs << " grid=" << c.grid << " iters=" << iters
                  << " restarts=" << restarts << "\n";
        return 0;
      }
      DirectionSet d = read_direction_set(norm_dirs);
      Grid g = make_grid(d.dims, c.grid);
      OpFamily fam = halfspace_family(d, HalfspaceConvention::sign);
      EstimatorOptions opt;
      opt.iters = iters;
      opt.restarts = restarts;
      opt.seed = c.seed;
      auto rep = estimate_maximal_norm(fam, g, opt);
      json j{{"estimate", rep.estimate},
             {"iterations", rep.iterations},
             {"restarts", rep.restarts},
             {"seed", rep.seed}};
      std::ofstream(out_path(c, "norm.json")) << j.dump(2) << "\n";
      std::cout << "estimate " << rep.estimate << "\n";
      return 0;
    }
    if (growth->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: growth sizes=" << sizes.size() << " grid=" << c.grid << "\n";
        return 0;
      }
      Grid g = make_grid(2, c.grid);
      auto generator = [](int n) {
        DirectionSet d;
        d.dims = 2;
        for (int k = 1; k <= n; ++k) d.members.push_back(direction_from({1.0, std::ldexp(1.0, -k)}));
        return d;
      };
      EstimatorOptions opt;
      opt.iters = iters;
      opt.restarts = restarts;
      opt.seed = c.seed;
      auto table = growth_experiment(generator, sizes, g, HalfspaceConvention::sign, opt);
      write_growth_csv(table, out_path(c, "growth.csv"));
      write_growth_svg(table, out_path(c, "growth.svg"));
      return 0;
    }
    if (cex->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: cex d=" << cex_d << " n=" << cex_n << "\n";
        return 0;
      }
      auto built = counterexample_build(cex_d, cex_n);
      write_direction_set(built.dirs, out_path(c, "cex_directions.json"));
      write_cell_table_csv(built.dirs, Dissection{canonical_basis(2 * cex_d)},
                           out_path(c, "cex_cells.csv"));
      std::cout << built.dirs.members.size() << " directions, " << built.factors.size()
                << " factors" << (built.small_n_warning ? " (small-N regime)" : "") << "\n";
      return 0;
    }
    if (weights->parsed()) {
      if (c.dry_run) {
        std::cout << "plan: weights p=" << p << " grid=" << c.grid << "\n";
        return 0;
      }
      Grid g = make_grid(2, c.grid);
      std::mt19937_64 rng(c.seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      std::vector<double> v(g.points());
      for (auto& x : v) x = std::exp(u(rng));
      Weight w = make_weight(g, std::move(v));
      DirectionSet axes;
      axes.dims = 2;
      axes.members = {direction_from({1.0, 0.0}), direction_from({0.0, 1.0})};
      auto fam = make_segment_family(g, axes, 4);
      double ap = p > 1.0 ? ap_constant(w, p, fam) : a1_constant(w, axes, dyadic_radii(g));
      auto probe = weighted_norm_probe(axes, std::max(p, 1.0 + 1e-9), w, dyadic_radii(g), 6, c.seed);
      json j{{"p", p}, {"characteristic", ap}, {"norm_estimate", probe.norm_estimate}};
      std::ofstream(out_path(c, "weights.json")) << j.dump(2) << "\n";
      std::cout << "characteristic " << ap << ", norm estimate " << probe.norm_estimate << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
