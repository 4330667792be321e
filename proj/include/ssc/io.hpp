#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ssc/datagen.hpp"
#include "ssc/numerics.hpp"

namespace ssc::io {

/// Shortest text form with 17 significant digits; parses back exactly.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Dense CSV, one matrix row per line, optional header line.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header = {});
Matrix read_matrix_csv(const std::filesystem::path& path, bool has_header);

/// Points file: header x0,...,x{n-1}, one point per line.
void write_points_csv(const std::filesystem::path& path, const Matrix& points);
Matrix read_points_csv(const std::filesystem::path& path);

/// Labels file: one 1-based id per line, no header.
void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels);
std::vector<int> read_labels_csv(const std::filesystem::path& path);

/// Bases file: header subspace,x0,...; one basis vector per line.
void write_bases_csv(const std::filesystem::path& path, const SubspaceModel& model);
SubspaceModel read_bases_csv(const std::filesystem::path& path);

using Manifest = std::vector<std::pair<std::string, std::string>>;

/// key=value per line, in the given order.
void write_manifest(const std::filesystem::path& path, const Manifest& entries);
Manifest read_manifest(const std::filesystem::path& path);

/// Writes `content` verbatim.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace ssc::io
