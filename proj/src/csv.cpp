#include "emoa/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "emoa/core.hpp"

namespace emoa {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_uint(std::uint64_t v) {
    std::array<char, 24> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view field) {
    if (field == "inf") {
        return HUGE_VAL;
    }
    if (field == "-inf") {
        return -HUGE_VAL;
    }
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ConfigError("not a number: '" + std::string(field) + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view field) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ConfigError("not a non-negative integer: '" + std::string(field) + "'");
    }
    return v;
}

std::uint64_t fnv1a64(std::string_view data) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].find_first_of(",\"\n\r") != std::string::npos) {
            throw ContractViolation("csv: field contains a separator: '" + fields[i] + "'");
        }
        if (i) {
            out += ',';
        }
        out += fields[i];
    }
    out += '\n';
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            return fields;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

CsvWriter::CsvWriter(std::vector<std::string> header, std::string manifest_hash) : columns_(header.size()) {
    if (!manifest_hash.empty()) {
        text_ += "# manifest " + manifest_hash + "\n";
    }
    append_line(text_, header);
}

CsvWriter& CsvWriter::row(std::vector<std::string> fields) {
    if (fields.size() != columns_) {
        throw ContractViolation("csv: row width does not match the header");
    }
    append_line(text_, fields);
    ++rows_;
    return *this;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw ConfigError("csv: missing column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const noexcept {
    for (const auto& h : header) {
        if (h == name) {
            return true;
        }
    }
    return false;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            constexpr std::string_view tag = "# manifest ";
            if (!table.manifest_hash && line.substr(0, tag.size()) == tag) {
                table.manifest_hash = std::string(line.substr(tag.size()));
            }
            continue;
        }
        auto fields = split_fields(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ConfigError("csv: row width does not match the header");
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

std::optional<std::string> manifest_of(std::string_view text) {
    constexpr std::string_view tag = "# manifest ";
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto line = text.substr(pos, end - pos);
        if (line.substr(0, tag.size()) == tag) {
            return std::string(line.substr(tag.size()));
        }
        pos = end + 1;
    }
    return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace emoa
