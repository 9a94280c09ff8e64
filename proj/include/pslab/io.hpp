#pragma once

#include <string>

#include "json.hpp"
#include "pslab/extremal.hpp"
#include "pslab/grid_field.hpp"
#include "pslab/measure.hpp"
#include "pslab/verify.hpp"
#include "pslab/young.hpp"

namespace pslab {

// Grid container format: one JSON header line (n, origin, spacing,
// dims), a newline, then dims[0]*dims[1]*dims[2] little-endian 64-bit
// floats in x-fastest order.
void save_grid_field(const GridField& u, const std::string& path);
GridField load_grid_field(const std::string& path);

// Comma-separated values, one grid row per line; a single line (or a
// single column) is read as a 1D field. The file carries no geometry,
// so the caller supplies the lower corner and spacing.
GridField grid_from_csv(const std::string& path, const Point& origin,
                        double spacing);

nlohmann::json spec_to_json(const ExtremalSpec& spec);
// Rebuilds through the validating constructor.
ExtremalSpec spec_from_json(const nlohmann::json& doc);

nlohmann::json decomposition_to_json(const MeasureDecomposition& dec);

nlohmann::json report_to_json(const BoundReport& report);

// {"power": q} or {"breakpoints": [[t, y], ...]}.
YoungFunction young_from_json(const nlohmann::json& doc);
nlohmann::json young_to_json(const YoungFunction& phi);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace pslab
