#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace choicewalk {

using Cell = std::variant<std::string, std::int64_t, double>;

/// Homogeneous records: every row has one cell per column.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    explicit Table(std::vector<std::string> cols = {}) : columns(std::move(cols)) {}
    // UsageError when the row length does not match the columns.
    void add(std::vector<Cell> row);
};

// Carried into every output file ahead of the records.
struct Metadata {
    nlohmann::ordered_json config;
    std::uint64_t seed = 0;
    std::string created;  // ISO-8601 UTC; the only field allowed to vary between reruns
};

std::string utc_timestamp();

// "%.10g"; nan and inf spelled out.
std::string format_number(double x);
std::string format_cell(const Cell& c);

// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

// `# config: <json>`, `# seed: N`, `# created: ...`, header row, records.
// Lines end in CRLF.
void write_csv(std::ostream& out, const Table& table, const Metadata& meta);
std::string to_csv(const Table& table, const Metadata& meta);

// {"config", "seed", "created", "columns", "rows": [ {column: value} ]}.
std::string to_json(const Table& table, const Metadata& meta);

// The records of a CSV document without its `#` metadata lines.
std::string csv_body(const std::string& csv);
// The JSON object stored in the `# config:` line (null when absent).
nlohmann::ordered_json csv_config(const std::string& csv);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

// Self-contained SVG line chart with axes, ticks and a legend. Same chart,
// same bytes. UsageError unless 1 to 8 series.
std::string render_svg(const Chart& chart);

// Writes `content` to `path` ("-" is standard output). IoError on failure.
void write_file(const std::string& path, const std::string& content);

} // namespace choicewalk
