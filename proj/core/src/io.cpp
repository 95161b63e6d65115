#include "lacuna/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace lacuna {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field container assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("field container: truncated stream");
  return v;
}

}  // namespace

void write_field(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.dim()));
  for (int s : f.grid.sides) put<std::uint32_t>(os, static_cast<std::uint32_t>(s));
  put<double>(os, f.grid.length);
  for (const auto& v : f.values) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  auto dim = get<std::uint32_t>(is);
  if (dim < 1 || dim > 4) throw std::runtime_error("field container: bad dimension");
  std::vector<int> sides;
  for (std::uint32_t a = 0; a < dim; ++a) sides.push_back(static_cast<int>(get<std::uint32_t>(is)));
  double length = get<double>(is);
  Grid g = make_grid_sides(sides, length);
  Field f{g, {}};
  f.values.resize(g.points());
  for (auto& v : f.values) {
    double re = get<double>(is);
    double im = get<double>(is);
    v = cplx{re, im};
  }
  return f;
}

void write_field_csv(const Field& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  int d = f.grid.dim();
  for (int a = 0; a < d; ++a) os << "i" << a << ",";
  os << "re,im\n";
  std::vector<int> c(d, 0);
  os.precision(17);
  for (size_t i = 0; i < f.values.size(); ++i) {
    for (int a = 0; a < d; ++a) os << c[a] << ",";
    os << f.values[i].real() << "," << f.values[i].imag() << "\n";
    int a = d - 1;
    while (a >= 0 && ++c[a] == f.grid.sides[a]) c[a--] = 0;
  }
}

std::string direction_set_json(const DirectionSet& set) {
  nlohmann::json j;
  j["dims"] = set.dims;
  if (set.claimed_order) j["order"] = *set.claimed_order;
  if (set.basis) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : set.basis->rows) rows.push_back(r);
    j["basis"] = rows;
  }
  nlohmann::json members = nlohmann::json::array();
  for (const auto& w : set.members) members.push_back(w.coords);
  j["members"] = members;
  return j.dump(2);
}

DirectionSet direction_set_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  DirectionSet set;
  set.dims = j.at("dims").get<int>();
  if (j.contains("order")) set.claimed_order = j["order"].get<int>();
  if (j.contains("basis")) {
    Basis b;
    for (const auto& r : j["basis"]) b.rows.push_back(r.get<std::vector<double>>());
    set.basis = b;
  }
  for (const auto& m : j.at("members"))
    set.members.push_back(Direction{m.get<std::vector<double>>()});
  return set;
}

void write_direction_set(const DirectionSet& set, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << direction_set_json(set) << "\n";
}

DirectionSet read_direction_set(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return direction_set_from_json(ss.str());
}

void write_cell_table_csv(const DirectionSet& set, const Dissection& diss, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.precision(17);
  auto pairs = sigma_set(diss.dim());
  for (int a = 0; a < set.dims; ++a) os << "w" << a << ",";
  for (size_t i = 0; i < pairs.size(); ++i)
    os << "l_" << pairs[i].first << "_" << pairs[i].second << (i + 1 < pairs.size() ? "," : "\n");
  for (const auto& w : set.members) {
    for (double c : w.coords) os << c << ",";
    CellIndex cell = cell_of(w, diss);
    for (size_t i = 0; i < pairs.size(); ++i)
      os << cell.entries.at(pairs[i]) << (i + 1 < pairs.size() ? "," : "\n");
  }
}

void write_symbol_heatmap_csv(const Symbol& symbol, int radius, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.precision(17);
  os << "xi1,xi2,value\n";
  for (int x = -radius; x <= radius; ++x)
    for (int y = -radius; y <= radius; ++y) {
      int xi[2] = {x, y};
      os << x << "," << y << "," << symbol.eval(std::span<const int>(xi, 2)).real() << "\n";
    }
}

void write_growth_csv(const GrowthTable& table, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.precision(17);
  os << "N,estimate,fit_sqrtlog,fit_log\n";
  for (const auto& r : table.rows) {
    double x = static_cast<double>(r.n);
    os << r.n << "," << r.estimate << "," << table.c_sqrtlog * std::sqrt(std::log(x + 1.0)) << ","
       << table.c_log * std::log(x + 1.0) << "\n";
  }
}

void write_growth_svg(const GrowthTable& table, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  const int w = 640, h = 480, pad = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : table.rows) {
    double x = std::log(static_cast<double>(r.n));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, r.estimate);
    ymax = std::max(ymax, r.estimate);
  }
  if (table.rows.empty() || xmax == xmin) {
    xmin = 0; xmax = 1;
  }
  if (ymax == ymin) {
    ymin -= 0.5; ymax += 0.5;
  }
  auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (w - 2 * pad); };
  auto py = [&](double y) { return h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\""
     << h - pad << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
     << "\" stroke=\"black\"/>\n";
  auto curve = [&](double c, double (*m)(double), const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (int i = 0; i <= 100; ++i) {
      double x = xmin + (xmax - xmin) * i / 100.0;
      double n = std::exp(x);
      os << px(x) << "," << py(c * m(n)) << " ";
    }
    os << "\"/>\n";
  };
  curve(table.c_sqrtlog, [](double n) { return std::sqrt(std::log(n + 1.0)); }, "#1f77b4");
  curve(table.c_log, [](double n) { return std::log(n + 1.0); }, "#d62728");
  for (const auto& r : table.rows) {
    os << "<circle cx=\"" << px(std::log(static_cast<double>(r.n))) << "\" cy=\"" << py(r.estimate)
       << "\" r=\"4\" fill=\"black\"/>\n";
  }
  os << "<text x=\"" << w / 2 << "\" y=\"" << h - pad / 3 << "\" text-anchor=\"middle\">log N</text>\n";
  os << "<text x=\"" << pad << "\" y=\"" << pad / 2 << "\">norm estimate</text>\n";
  os << "</svg>\n";
}

}  // namespace lacuna
