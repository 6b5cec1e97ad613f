#include <doctest.h>

#include <cmath>
#include <regex>

#include "choicewalk/errors.hpp"
#include "choicewalk/oracle.hpp"
#include "choicewalk/report.hpp"
#include "support.hpp"

using namespace choicewalk;

namespace {

Metadata meta() {
    Metadata m;
    m.config = {{"command", "curve"}, {"trials", 10}};
    m.seed = 42;
    m.created = "2026-01-01T00:00:00Z";
    return m;
}

std::vector<std::vector<std::pair<double, double>>> polylines(const std::string& svg) {
    std::vector<std::vector<std::pair<double, double>>> out;
    const std::regex line("<polyline[^>]*points=\"([^\"]*)\"");
    const std::regex pt("([-0-9.]+),([-0-9.]+)");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line); it != std::sregex_iterator(); ++it) {
        const std::string pts = (*it)[1];
        std::vector<std::pair<double, double>> poly;
        for (auto p = std::sregex_iterator(pts.begin(), pts.end(), pt); p != std::sregex_iterator(); ++p)
            poly.emplace_back(std::stod((*p)[1]), std::stod((*p)[2]));
        out.push_back(poly);
    }
    return out;
}

Chart curve_chart(const MonotoneFunction& f) {
    const auto c = exact_solo_curve(f);
    Series s{"solo", {}};
    for (std::size_t t = 0; t < c.values.size(); ++t) s.points.emplace_back(static_cast<double>(t), c.values[t]);
    return Chart{f.name(), "t", "activation probability", {s}};
}

} // namespace

TEST_CASE("number formatting uses 10 significant digits") {
    CHECK(format_number(0.1234567890123) == "0.123456789");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(1234567.891234) == "1234567.891");
    CHECK(format_number(1e-12) == "1e-12");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_cell(Cell{std::int64_t{-3}}) == "-3");
    CHECK(format_cell(Cell{std::string("x")}) == "x");
}

TEST_CASE("CSV quoting follows RFC 4180") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("CSV layout: metadata, header, records") {
    Table t({"family", "t", "p"});
    t.add({std::string("tribes:n=8,s=2"), std::int64_t{3}, 24.0 / 56.0});
    const auto csv = to_csv(t, meta());
    CHECK(csv ==
          "# config: {\"command\":\"curve\",\"trials\":10}\r\n"
          "# seed: 42\r\n"
          "# created: 2026-01-01T00:00:00Z\r\n"
          "family,t,p\r\n"
          "\"tribes:n=8,s=2\",3,0.4285714286\r\n");
    CHECK(csv_body(csv) == "family,t,p\r\n\"tribes:n=8,s=2\",3,0.4285714286\r\n");
    CHECK(csv_config(csv) == meta().config);
    CHECK_THROWS_AS(t.add({std::int64_t{1}}), UsageError);
}

TEST_CASE("an empty table is a header-only file") {
    const Table t({"t", "p", "ci_lo", "ci_hi"});
    CHECK(csv_body(to_csv(t, meta())) == "t,p,ci_lo,ci_hi\r\n");
    const auto doc = nlohmann::json::parse(to_json(t, meta()));
    CHECK(doc["rows"].empty());
    CHECK(doc["columns"].size() == 4);
}

TEST_CASE("JSON output carries metadata and keyed rows") {
    Table t({"n", "rho"});
    t.add({std::int64_t{200}, 1.25});
    t.add({std::int64_t{400}, NAN});
    const auto doc = nlohmann::json::parse(to_json(t, meta()));
    CHECK(doc["seed"] == 42);
    CHECK(doc["config"]["command"] == "curve");
    CHECK(doc["rows"][0]["n"] == 200);
    CHECK(doc["rows"][0]["rho"] == 1.25);
    CHECK(doc["rows"][1]["rho"].is_null());
}

TEST_CASE("SVG: deterministic, labelled, bounded series count") {
    const auto chart = curve_chart(*make_dictator(10, 0));
    const auto a = render_svg(chart), b = render_svg(chart);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find(">t</text>") != std::string::npos);
    CHECK(a.find(">activation probability</text>") != std::string::npos);
    CHECK(a.find(">solo</text>") != std::string::npos);

    Chart none{"", "x", "y", {}};
    CHECK_THROWS_AS(render_svg(none), UsageError);
    Chart many{"", "x", "y", std::vector<Series>(9, Series{"s", {{0, 0}, {1, 1}}})};
    CHECK_THROWS_AS(render_svg(many), UsageError);
    many.series.resize(8);
    CHECK(polylines(render_svg(many)).size() == 8);
}

TEST_CASE("SVG: dictator curve is a straight line, AND curve a step") {
    const auto line = polylines(render_svg(curve_chart(*make_dictator(10, 0))));
    REQUIRE(line.size() == 1);
    REQUIRE(line[0].size() == 11);
    const auto [x0, y0] = line[0].front();
    const auto [x1, y1] = line[0].back();
    for (auto [x, y] : line[0]) {
        const double expect = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        CHECK(std::abs(y - expect) < 0.02);  // 2-decimal pixel rounding
    }
    // Its midpoint (n/2, 1/2) sits halfway between the endpoints.
    CHECK(std::abs(line[0][5].second - (y0 + y1) / 2) < 0.02);

    const auto step = polylines(render_svg(curve_chart(*make_and(5))));
    REQUIRE(step[0].size() == 6);
    for (std::size_t t = 1; t < 5; ++t) CHECK(step[0][t].second == step[0][0].second);
    CHECK(step[0][5].second < step[0][0].second);  // higher on screen
}

TEST_CASE("write_file reports I/O failures") {
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.csv", "a"), IoError);
}
