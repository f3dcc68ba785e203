#pragma once

#include <string>
#include <vector>

#include "grs/reach.hpp"

namespace grs::io {

/// Shortest decimal form that round-trips the double exactly; keeps repeated
/// runs byte-identical.
std::string format_double(double value);

void ensure_directory(const std::string& path);

/// Generic CSV writer: a header row followed by numeric rows.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

/// Columns t, x1..xn.
void write_cloud_csv(const std::string& path, const ReachCloud& cloud);

/// {"meta": {...}, "points": [[t, x1..xn], ...]}.
void write_cloud_json(const std::string& path, const ReachCloud& cloud);

/// Columns x, y; one row per hull vertex, counterclockwise.
void write_hull_csv(const std::string& path, const std::vector<Eigen::Vector2d>& hull);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace grs::io
