#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fockbench/figures.hpp"
#include "fockbench/sweep_table.hpp"

using namespace fockbench;

TEST_CASE("sweep table validation") {
    SweepTable t;
    t.column_names = {"x", "y"};
    t.rows = {{1.0, 2.0}, {3.0, 4.0}};
    CHECK_NOTHROW(t.validate());

    t.rows.push_back({1.0});
    CHECK_THROWS_AS(t.validate(), std::runtime_error);
    t.rows.back() = {1.0, std::nan("")};
    CHECK_THROWS_AS(t.validate(), std::runtime_error);
}

TEST_CASE("csv emission is deterministic and carries provenance") {
    const auto t1 = figure_table("fig5");
    const auto t2 = figure_table("fig5");
    std::ostringstream a, b;
    t1.write_csv(a);
    t2.write_csv(b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("# figure=fig5") == 0);
    CHECK(a.str().find("N,mandel_q") != std::string::npos);

    std::ostringstream j;
    t1.write_json(j);
    CHECK(j.str().find("\"columns\"") != std::string::npos);
}

TEST_CASE("fig5 tabulates strictly negative mandel q") {
    const auto t = figure_table("fig5");
    REQUIRE(t.rows.size() == 41);
    for (const auto& r : t.rows) CHECK(r[1] < 0.0);
}

TEST_CASE("fig2 ltcs uncertainty columns coincide") {
    const auto t = figure_table("fig2");
    REQUIRE(t.rows.size() == 31);
    for (const auto& r : t.rows) CHECK(std::abs(r[3] - r[4]) < 1e-10);
}

TEST_CASE("fig1 sweeps the deformation range") {
    FigureParams p;
    p.grid = 21; // coarse override to keep the unit suite fast
    const auto t = figure_table("fig1", p);
    REQUIRE(t.rows.size() == 21);
    CHECK(t.rows.front()[0] == 0.0);
    CHECK(t.rows.back()[0] == 1.0);
    // deformation end is never squeezed, photon-added end is
    CHECK(t.rows.front()[1] < std::sqrt(0.5));
    CHECK(t.rows.back()[1] >= std::sqrt(0.5));
}

TEST_CASE("fig3 and fig4 densities are normalized tables") {
    FigureParams p;
    p.grid = 512;
    for (const char* id : {"fig3", "fig4"}) {
        const auto t = figure_table(id, p);
        REQUIRE(t.rows.size() == 512);
        for (std::size_t col = 1; col <= 3; ++col) {
            double integral = 0.0;
            for (const auto& r : t.rows) integral += r[col];
            integral *= 2.0 * std::numbers::pi / 512.0;
            CHECK_THAT(integral, Catch::Matchers::WithinAbs(1.0, 1e-6));
        }
    }
}

TEST_CASE("unknown figure id is rejected") {
    CHECK_THROWS_AS(figure_table("fig9"), std::invalid_argument);
}
