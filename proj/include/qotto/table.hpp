#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qotto {

/// One table cell; monostate renders as an empty CSV field / JSON null
/// (used e.g. for Q* where the trap is inverted).
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

/// Column-ordered result rows with deterministic rendering: CSV per RFC 4180
/// ('.' decimal separator, 17 significant digits) and JSON as an array of
/// flat objects with the same field names.  Identical tables produce byte
/// identical output.
class ResultTable {
public:
    explicit ResultTable(std::vector<std::string> columns);

    void add_row(std::vector<Cell> row);
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }

    std::string to_csv() const;
    std::string to_json() const;
    std::string render(const std::string& format) const;  // "csv" or "json"

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// %.17g with the C locale; round-trips doubles exactly.
std::string format_double(double v);

/// Writes via a temporary file in the same directory plus an atomic rename,
/// so a failed write never leaves a partial file behind.  Throws
/// std::runtime_error with the path on any failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qotto
