#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace uplink::io {

/// Numeric table with a header row. Column names carry their unit as a
/// suffix, e.g. threshold_db or rate_nats_per_hz.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    /// Throws std::invalid_argument on a width mismatch.
    void add_row(std::vector<double> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    /// Values printed with 10 significant digits; NaN as "nan".
    std::string to_string() const;

    /// Throws std::runtime_error if the file cannot be written.
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

std::string format_number(double value);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace uplink::io
