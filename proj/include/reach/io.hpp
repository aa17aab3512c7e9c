#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "reach/grid.hpp"
#include "reach/hamiltonian.hpp"

namespace reach::io {

using nlohmann::json;

// Parses text as JSON; syntax errors become ParseError with 1-based
// line/column and the source name in the message.
json parse_json(std::string_view text, const std::string& source = "<input>");
json read_json(const std::filesystem::path& path);

// {"dim":1|2, "axes":[{"min","max","n"}...]}
json to_json(const Grid& g);
Grid grid_from_json(const json& j);

// Grid fields plus "values" (numbers or "inf") and optional "lip".
json to_json(const GridFn& f);
GridFn gridfn_from_json(const json& j);

// {"kind": "power_scaled"|"power"|"abs"|"quadratic"|"affine"|"sampled", ...}
json to_json(const Hamiltonian& H);
Hamiltonian hamiltonian_from_json(const json& j);

// 1D two-column CSV "x,value" with a header line. Values may be "inf".
std::string to_csv(const GridFn& f);
GridFn gridfn_from_csv(std::string_view text, const std::string& source = "<input>");

// Dispatches on the extension: .csv reads/writes CSV, anything else JSON.
GridFn read_gridfn(const std::filesystem::path& path);
void write_gridfn(const std::filesystem::path& path, const GridFn& f);

// Plot data: header "x,value" (1D) or "x,y,value" (2D), one row per sample
// in flat order, LF line endings.
std::string plot_csv(const Grid& g, std::span<const double> values, const std::string& column = "value");

// Binary PGM (P5) of a 2D mask: rows along axis 1 from top (max) to bottom,
// columns along axis 0; set bits are white.
std::string pgm(const Grid& g, std::span<const std::uint8_t> bits);

// Shortest round-trip formatting; +inf prints as "inf".
std::string format_number(double v);

// Writes content to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace reach::io
