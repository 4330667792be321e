#include "ssc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ssc/errors.hpp"

namespace ssc::io {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string() + " for reading");
  return in;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return value;
}

void write_matrix_csv(const fs::path& path, const Matrix& m, const std::vector<std::string>& header) {
  auto out = open_out(path);
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << '\n';
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path.string());
}

Matrix read_matrix_csv(const fs::path& path, bool has_header) {
  auto in = open_in(path);
  std::string line;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  bool header_pending = has_header;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (header_pending) {
      header_pending = false;
      width = fields.size();
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_double(f));
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                        " fields, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) {
      if (!std::isfinite(rows[i][j])) throw ConfigError(path.string() + ": non-finite entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  return m;
}

void write_points_csv(const fs::path& path, const Matrix& points) {
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < points.cols(); ++j) header.push_back("x" + std::to_string(j));
  write_matrix_csv(path, points, header);
}

Matrix read_points_csv(const fs::path& path) { return read_matrix_csv(path, true); }

void write_labels_csv(const fs::path& path, const std::vector<int>& labels) {
  auto out = open_out(path);
  for (int l : labels) out << l << '\n';
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::vector<int> read_labels_csv(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    int v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw ConfigError(path.string() + ": bad label '" + std::string(t) + "'");
    labels.push_back(v);
  }
  return labels;
}

void write_bases_csv(const fs::path& path, const SubspaceModel& model) {
  const Eigen::Index n = model.ambient_dim;
  Eigen::Index rows = 0;
  for (const auto& b : model.bases) rows += b.cols();
  Matrix table(rows, n + 1);
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < model.bases.size(); ++k) {
    for (Eigen::Index j = 0; j < model.bases[k].cols(); ++j, ++r) {
      table(r, 0) = static_cast<double>(k + 1);
      table.row(r).tail(n) = model.bases[k].col(j).transpose();
    }
  }
  std::vector<std::string> header{"subspace"};
  for (Eigen::Index j = 0; j < n; ++j) header.push_back("x" + std::to_string(j));
  write_matrix_csv(path, table, header);
}

SubspaceModel read_bases_csv(const fs::path& path) {
  const Matrix table = read_matrix_csv(path, true);
  if (table.cols() < 2) throw ConfigError(path.string() + ": bases file needs a subspace column and coordinates");
  SubspaceModel model;
  model.ambient_dim = table.cols() - 1;
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    const auto k = static_cast<std::size_t>(table(r, 0));
    if (k < 1) throw ConfigError(path.string() + ": subspace ids must be >= 1");
    if (k > model.bases.size()) model.bases.resize(k, Matrix(model.ambient_dim, 0));
    Matrix& b = model.bases[k - 1];
    b.conservativeResize(Eigen::NoChange, b.cols() + 1);
    b.col(b.cols() - 1) = table.row(r).tail(model.ambient_dim).transpose();
  }
  return model;
}

void write_manifest(const fs::path& path, const Manifest& entries) {
  auto out = open_out(path);
  for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  if (!out) throw ConfigError("write failed: " + path.string());
}

Manifest read_manifest(const fs::path& path) {
  auto in = open_in(path);
  Manifest entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ConfigError(path.string() + ": manifest line without '='");
    entries.emplace_back(std::string(t.substr(0, eq)), std::string(t.substr(eq + 1)));
  }
  return entries;
}

void write_text(const fs::path& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace ssc::io
