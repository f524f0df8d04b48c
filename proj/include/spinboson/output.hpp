#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace spinboson::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::string, double, long long>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// %.17g, locale independent; nan/inf spelled as such.
std::string format_double(double v);

/// RFC 4180: fields holding a comma, quote or line break are quoted.
std::string csv_escape(const std::string& field);

std::string to_csv(const Table& table);
/// Array of row objects keyed by column name.
std::string to_json(const Table& table);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace spinboson::cli
