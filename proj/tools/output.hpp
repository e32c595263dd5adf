#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "graphmetro/types.hpp"

namespace graphmetro::cli {

/// 17 significant digits: lossless for doubles.
std::string fmt17(double v);

using Cell = std::variant<std::monostate, double, long, std::string>;

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  /// "# key: value" metadata line.
  void meta(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
};

nlohmann::json to_json(const RealMatrix& m);
nlohmann::json to_json(const RealVector& v);
/// Columns of m as a list of vectors.
nlohmann::json columns_json(const RealMatrix& m);
inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// Opens `path` for writing, creating parent directories. Throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace graphmetro::cli
