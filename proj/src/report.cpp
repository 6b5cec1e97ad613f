#include "choicewalk/report.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "choicewalk/errors.hpp"

namespace choicewalk {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw UsageError("table row has " + std::to_string(row.size()) + " cells, expected " +
                         std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string format_cell(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return format_number(std::get<double>(c));
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

namespace {

constexpr const char* kEol = "\r\n";

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << kEol;
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    const double x = std::get<double>(c);
    if (!std::isfinite(x)) return nullptr;
    return x;
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

} // namespace

void write_csv(std::ostream& out, const Table& table, const Metadata& meta) {
    out << "# config: " << meta.config.dump() << kEol;
    out << "# seed: " << meta.seed << kEol;
    out << "# created: " << meta.created << kEol;
    write_row(out, table.columns);
    std::vector<std::string> fields;
    for (const auto& row : table.rows) {
        fields.clear();
        for (const auto& c : row) fields.push_back(format_cell(c));
        write_row(out, fields);
    }
}

std::string to_csv(const Table& table, const Metadata& meta) {
    std::ostringstream os;
    write_csv(os, table, meta);
    return os.str();
}

std::string to_json(const Table& table, const Metadata& meta) {
    nlohmann::ordered_json doc;
    doc["config"] = meta.config;
    doc["seed"] = meta.seed;
    doc["created"] = meta.created;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string csv_body(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        if (!starts_with(line, "#")) out += line + "\n";
    return out;
}

nlohmann::ordered_json csv_config(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (starts_with(line, "# config: ")) return nlohmann::ordered_json::parse(line.substr(10));
    }
    return nullptr;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

// Tick positions at a 1/2/5 step covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= 6.0) break;
    }
    std::vector<double> out;
    for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + step * 1e-9; v += step)
        out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return out;
}

} // namespace

std::string render_svg(const Chart& chart) {
    if (chart.series.empty() || chart.series.size() > 8)
        throw UsageError("an SVG chart takes 1 to 8 series, got " + std::to_string(chart.series.size()));

    const double width = 720, height = 480;
    const double left = 80, right = 200, top = 50, bottom = 70;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : chart.series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, y), y1 = std::max(y1, y);
        }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 <= 0) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 <= 0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad, y1 += pad;

    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * plot_h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (!chart.title.empty())
        os << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
           << xml_escape(chart.title) << "</text>\n";

    for (double t : ticks(x0, x1)) {
        const std::string x = fixed(px(t));
        os << "<line x1=\"" << x << "\" y1=\"" << fixed(top) << "\" x2=\"" << x << "\" y2=\"" << fixed(top + plot_h)
           << "\" stroke=\"#e6e6e6\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << fixed(top + plot_h + 18) << "\" text-anchor=\"middle\">"
           << format_number(t) << "</text>\n";
    }
    for (double t : ticks(y0, y1)) {
        const std::string y = fixed(py(t));
        os << "<line x1=\"" << fixed(left) << "\" y1=\"" << y << "\" x2=\"" << fixed(left + plot_w) << "\" y2=\"" << y
           << "\" stroke=\"#e6e6e6\"/>\n";
        os << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py(t) + 4) << "\" text-anchor=\"end\">"
           << format_number(t) << "</text>\n";
    }
    os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(plot_w) << "\" height=\""
       << fixed(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(height - 20) << "\" text-anchor=\"middle\">"
       << xml_escape(chart.x_label) << "</text>\n";
    os << "<text x=\"20\" y=\"" << fixed(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << fixed(top + plot_h / 2) << ")\">" << xml_escape(chart.y_label) << "</text>\n";

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[k] << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            os << (first ? "" : " ") << fixed(px(x)) << ',' << fixed(py(y));
            first = false;
        }
        os << "\"/>\n";
        if (s.points.size() <= 40)
            for (auto [x, y] : s.points)
                if (std::isfinite(x) && std::isfinite(y))
                    os << "<circle cx=\"" << fixed(px(x)) << "\" cy=\"" << fixed(py(y)) << "\" r=\"3\" fill=\""
                       << kPalette[k] << "\"/>\n";
        const double ly = top + 10 + 22.0 * static_cast<double>(k);
        const double lx = left + plot_w + 16;
        os << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 24) << "\" y2=\""
           << fixed(ly) << "\" stroke=\"" << kPalette[k] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fixed(lx + 30) << "\" y=\"" << fixed(ly + 4) << "\">" << xml_escape(s.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + path + ": " + std::strerror(errno));
}

} // namespace choicewalk
