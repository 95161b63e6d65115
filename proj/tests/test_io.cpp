#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "lacuna/io.hpp"

using namespace lacuna;

namespace {
struct TempPath {
  std::string path;
  explicit TempPath(const char* name) : path(std::string("/tmp/lacuna_test_") + name) {}
  ~TempPath() { std::remove(path.c_str()); }
};

size_t count_lines(const std::string& path) {
  std::ifstream in(path);
  size_t n = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}
}  // namespace

TEST_CASE("binary field roundtrip is bit exact") {
  Grid g = make_grid_sides({8, 4});
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss;
  Field f{g, std::vector<cplx>(g.points())};
  for (auto& v : f.values) v = cplx{gauss(rng), gauss(rng)};
  TempPath tp("field.bin");
  write_field(f, tp.path);
  Field back = read_field(tp.path);
  REQUIRE(back.grid.sides == f.grid.sides);
  CHECK(back.grid.length == f.grid.length);
  for (size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
  CHECK_THROWS(read_field("/tmp/lacuna_test_does_not_exist.bin"));
}

TEST_CASE("csv field dump has one row per point") {
  Grid g = make_grid(2, 8);
  Field f{g, std::vector<cplx>(g.points(), cplx{1.0, -2.0})};
  TempPath tp("field.csv");
  write_field_csv(f, tp.path);
  CHECK(count_lines(tp.path) == g.points() + 1);  // header included
}

TEST_CASE("direction sets roundtrip through json") {
  DirectionSet d;
  d.dims = 2;
  d.claimed_order = 1;
  d.members = {direction_from({1.0, 0.5}), direction_from({1.0, 0.25})};
  d.basis = canonical_basis(2);
  std::string text = direction_set_json(d);
  DirectionSet back = direction_set_from_json(text);
  CHECK(back.dims == d.dims);
  CHECK(back.claimed_order == d.claimed_order);
  REQUIRE(back.members.size() == d.members.size());
  for (size_t i = 0; i < d.members.size(); ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(back.members[i].coords[j] == doctest::Approx(d.members[i].coords[j]).epsilon(1e-15));
  TempPath tp("dirs.json");
  write_direction_set(d, tp.path);
  DirectionSet fromfile = read_direction_set(tp.path);
  CHECK(fromfile.members.size() == d.members.size());
  CHECK_THROWS(direction_set_from_json("{not json"));
}

TEST_CASE("cell table has one row per member") {
  DirectionSet d = carbery_set(3, 0, 3);
  TempPath tp("cells.csv");
  write_cell_table_csv(d, Dissection{canonical_basis(3)}, tp.path);
  CHECK(count_lines(tp.path) == d.members.size() + 1);
}

TEST_CASE("symbol heatmap covers the integer box") {
  Symbol s = halfspace_symbol(direction_from({1.0, 0.4}), HalfspaceConvention::sign);
  TempPath tp("heat.csv");
  write_symbol_heatmap_csv(s, 4, tp.path);
  CHECK(count_lines(tp.path) == 9 * 9 + 1);
}

TEST_CASE("growth outputs are written") {
  GrowthTable t;
  t.rows = {{2, 1.0}, {4, 1.3}, {8, 1.5}};
  t.c_sqrtlog = 1.1;
  t.c_log = 0.7;
  TempPath csv("growth.csv");
  TempPath svg("growth.svg");
  write_growth_csv(t, csv.path);
  write_growth_svg(t, svg.path);
  CHECK(count_lines(csv.path) == 4);
  std::ifstream in(svg.path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string body = ss.str();
  CHECK(body.find("<svg") != std::string::npos);
  CHECK(body.find("</svg>") != std::string::npos);
}
