#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gqtoda::cli {

inline constexpr const char* kToolVersion = "gqtoda 1.0.0";

using Metadata = std::vector<std::pair<std::string, std::string>>;

using Cell = std::variant<double, std::string>;

/// Table with a metadata header.
struct Table {
  Metadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

Format format_from_string(const std::string& s);
std::string extension(Format f);

/// CSV: `# key = value` lines, a header row, then rows (numbers with %.17g), LF endings.
std::string to_csv(const Table& t);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}
std::string to_json(const Table& t);

/// Writes `contents` to `path`; ConfigError when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& contents);
/// Creates the directory (and parents); ConfigError on failure.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace gqtoda::cli
