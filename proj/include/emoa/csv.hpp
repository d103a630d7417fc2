#pragma once

/// @file csv.hpp
/// @brief Minimal CSV reading and writing for campaign outputs. Numbers are
/// written in shortest round-trip form, independent of the locale. A file may
/// start with comment lines beginning with '#'; the first one carries the
/// campaign manifest hash ("# manifest <hex>").

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emoa {

std::string format_double(double v);
std::string format_uint(std::uint64_t v);

/// Strict parse of the whole field; ConfigError on garbage.
double parse_double(std::string_view field);
std::uint64_t parse_uint(std::string_view field);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data) noexcept;
std::string hex64(std::uint64_t v);

class CsvWriter {
public:
    CsvWriter(std::vector<std::string> header, std::string manifest_hash = {});

    CsvWriter& row(std::vector<std::string> fields);
    std::size_t rows() const noexcept { return rows_; }
    const std::string& text() const noexcept { return text_; }

private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

struct CsvTable {
    std::optional<std::string> manifest_hash;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; ConfigError if absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const noexcept;
};

/// Fields may not contain commas or quotes; this is enforced on write.
CsvTable parse_csv(std::string_view text);

/// Hash from the first "# manifest <hex>" line of any text file.
std::optional<std::string> manifest_of(std::string_view text);

/// File-system failure while reading or writing outputs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace emoa
