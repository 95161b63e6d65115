#pragma once

#include <string>
#include <vector>

#include "lacuna/directions.hpp"
#include "lacuna/grid.hpp"
#include "lacuna/normlab.hpp"

namespace lacuna {

/// Flat binary field container: little-endian u32 dim, u32 side per axis,
/// f64 length, then re/im f64 pairs in row-major order.
void write_field(const Field& f, const std::string& path);
Field read_field(const std::string& path);

void write_field_csv(const Field& f, const std::string& path);

/// {dims, order, basis, members} as JSON.
std::string direction_set_json(const DirectionSet& set);
DirectionSet direction_set_from_json(const std::string& text);
void write_direction_set(const DirectionSet& set, const std::string& path);
DirectionSet read_direction_set(const std::string& path);

/// (member coords..., sector per pair) rows.
void write_cell_table_csv(const DirectionSet& set, const Dissection& diss, const std::string& path);

/// (xi1, xi2, value) rows of a symbol slice on an integer box.
void write_symbol_heatmap_csv(const Symbol& symbol, int radius, const std::string& path);

void write_growth_csv(const GrowthTable& table, const std::string& path);

/// Log-scale scatter of (N, estimate) with the two fitted model curves.
void write_growth_svg(const GrowthTable& table, const std::string& path);

}  // namespace lacuna
