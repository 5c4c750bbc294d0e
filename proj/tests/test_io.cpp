#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "bihar/io.hpp"

using namespace bihar;

TEST_CASE("fmt_full is an exact decimal round trip") {
    for (double v : {1.0 / 3.0, -0.0931299970504242, 2.718281828459045, 1e-300, -4.0}) {
        CHECK(std::stod(fmt_full(v)) == v);
    }
    CHECK(fmt_full(0.25) == "0.25");
}

TEST_CASE("CSV render and parse round trip bitwise") {
    Table t;
    t.columns = {"r", "U", "U1"};
    t.rows = {{1.0, 1.0 / 3.0, -2e-15}, {2.5, 0.12345678901234567, 3.0}};
    std::string path = "io_roundtrip_test.csv";
    write_csv(t, path);
    auto back = read_csv(path);
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
        for (size_t j = 0; j < t.rows[i].size(); ++j) {
            CHECK(back.rows[i][j] == t.rows[i][j]); // bitwise
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("CSV rendering is deterministic and validates widths") {
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.5, 2.5}};
    CHECK(render_csv(t) == render_csv(t));
    CHECK(render_csv(t) == "a,b\n1.5,2.5\n");
    t.rows.push_back({1.0});
    CHECK_THROWS_AS(render_csv(t), domain_error);
    Table empty;
    CHECK_THROWS_AS(render_csv(empty), domain_error);
}

TEST_CASE("CSV reader strips carriage returns and rejects ragged rows") {
    std::string path = "io_crlf_test.csv";
    write_text("x,y\r\n1,2\r\n3,4\r\n", path);
    auto t = read_csv(path);
    CHECK(t.columns == std::vector<std::string>{"x", "y"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][1] == 4.0);
    write_text("x,y\n1\n", path);
    CHECK_THROWS_AS(read_csv(path), domain_error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_csv("definitely_missing_file.csv"), domain_error);
}

TEST_CASE("SVG output is deterministic and well formed") {
    PlotSeries s1{"U", {0.0, 0.5, 1.0}, {1.0, 0.8, 0.6}};
    PlotSeries s2{"U1", {0.0, 0.5, 1.0}, {0.0, -0.1, -0.2}};
    auto svg1 = render_svg({s1, s2}, PlotKind::Trajectory, "profile", "r", "value");
    auto svg2 = render_svg({s1, s2}, PlotKind::Trajectory, "profile", "r", "value");
    CHECK(svg1 == svg2); // byte identical
    CHECK(svg1.find("<svg") != std::string::npos);
    CHECK(svg1.find("</svg>") != std::string::npos);
    CHECK(svg1.find("polyline") != std::string::npos);
    CHECK(svg1.find("profile") != std::string::npos);
    CHECK(svg1.find("U1") != std::string::npos); // legend for multi-series
}

TEST_CASE("SVG rejects empty input") {
    CHECK_THROWS_AS(render_svg({}, PlotKind::Trajectory, "t", "x", "y"), domain_error);
    PlotSeries empty{"e", {}, {}};
    CHECK_THROWS_AS(render_svg({empty}, PlotKind::Trajectory, "t", "x", "y"), domain_error);
}

TEST_CASE("bifurcation plots use a log axis and demand positive data") {
    PlotSeries ok{"branch", {1.0, 2.0, 3.0}, {10.0, 1.0, 100.0}};
    auto svg = render_svg({ok}, PlotKind::Bifurcation, "branch", "u0", "lambda");
    CHECK(svg.find("polyline") != std::string::npos);
    PlotSeries bad{"branch", {1.0, 2.0}, {1.0, -1.0}};
    CHECK_THROWS_AS(render_svg({bad}, PlotKind::Bifurcation, "b", "x", "y"), domain_error);
    PlotSeries zero{"branch", {1.0, 2.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(render_svg({zero}, PlotKind::Bifurcation, "b", "x", "y"), domain_error);
}

TEST_CASE("emit_svg writes the rendered bytes") {
    std::string path = "io_emit_test.svg";
    PlotSeries s{"w1", {0.0, 1.0}, {1.0, 2.0}};
    emit_svg({s}, PlotKind::Phase, "phase", "s", "w1", path);
    auto content = render_svg({s}, PlotKind::Phase, "phase", "s", "w1");
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::string got((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(got == content);
    f.close();
    std::remove(path.c_str());
}
