// SPDX-License-Identifier: Apache-2.0
#pragma once

// Column-ordered result tables and their CSV / plot-data renderings.

#include <adsim/error.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

namespace adsim {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::optional<std::size_t> column_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        return std::nullopt;
    }

    /// Numeric view of one column; string cells are rejected.
    std::vector<double> numeric_column(const std::string& name) const
    {
        const auto idx = column_index(name);
        detail::require(idx.has_value(), "no column named '" + name + "'");
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) {
            if (const auto* d = std::get_if<double>(&r[*idx]))
                out.push_back(*d);
            else if (const auto* i = std::get_if<std::int64_t>(&r[*idx]))
                out.push_back(static_cast<double>(*i));
            else
                throw InvalidInput("column '" + name + "' is not numeric");
        }
        return out;
    }

    friend bool operator==(const Table&, const Table&) = default;
};

/// 17 significant digits, %g style; round-trips every double.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc{})
        throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

/// Shortest text that parses back to the same double.
inline std::string format_shortest(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_text(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c))
        return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return std::to_string(*i);
    return csv_field(std::get<std::string>(c));
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

} // namespace detail

/// RFC-4180 CSV, LF line endings.
inline std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i)
            out += ',';
        out += detail::csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        detail::require(row.size() == table.columns.size(), "row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += detail::cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline void emit_csv(const Table& table, const std::filesystem::path& path) { detail::write_file(path, to_csv(table)); }

/// Writes one "<stem>_<column>.dat" file per numeric column other than
/// `x_column`, each holding whitespace-separated "x y" lines. Returns the
/// files in column order.
inline std::vector<std::filesystem::path> emit_plot_data(const Table& table, const std::string& x_column,
                                                         const std::filesystem::path& dir, const std::string& stem)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

    const auto xs = table.numeric_column(x_column);
    std::vector<std::filesystem::path> written;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const auto& name = table.columns[c];
        if (name == x_column)
            continue;
        if (!table.rows.empty() && std::holds_alternative<std::string>(table.rows.front()[c]))
            continue;
        const auto ys = table.numeric_column(name);
        std::string body = "# " + x_column + " " + name + "\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
            body += format_number(xs[i]) + " " + format_number(ys[i]) + "\n";
        auto path = dir / (stem + "_" + name + ".dat");
        detail::write_file(path, body);
        written.push_back(std::move(path));
    }
    return written;
}

} // namespace adsim
