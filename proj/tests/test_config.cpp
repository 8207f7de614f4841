#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "uqdd/config.hpp"

using namespace uqdd;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

bool mentions(const ConfigError& e, const std::string& needle) {
    return std::any_of(e.messages().begin(), e.messages().end(), [&](const std::string& m) {
        return m.find(needle) != std::string::npos;
    });
}

} // namespace

TEST_CASE("empty input keeps the benchmark defaults") {
    const RunConfig cfg = parse("");
    CHECK(cfg.n1 == 97);
    CHECK(cfg.n2 == 25);
    CHECK(cfg.x1_max == 240.0);
    CHECK(cfg.x2_max == 60.0);
    CHECK(cfg.a0 == 5.0);
    CHECK(cfg.sigma_a == 2.5);
    CHECK(cfg.l1 == 24.0);
    CHECK(cfg.l2 == 20.0);
    CHECK(cfg.convention == VarianceConvention::SigmaRatio);
    CHECK(cfg.dim == 10);
    CHECK(cfg.order == 3);
    CHECK(cfg.level_full == 5);
    CHECK(cfg.level_coarse == 3);
    CHECK(cfg.level_adapted == 5);
    CHECK(cfg.reduced_dim == 3);
    CHECK(cfg.nx == 4);
    CHECK(cfg.ny == 2);
    CHECK(cfg.bc_variant == BcVariant::Mixed);
    CHECK(cfg.bc_left == 100.0);
    CHECK(cfg.bc_right == 10.0);
    CHECK(cfg.source == 0.0);
    REQUIRE(cfg.pdf_points.size() == 8);
    CHECK(cfg.pdf_points[0] == std::pair<double, double>{24.0, 15.0});
    CHECK(cfg.pdf_points[4] == std::pair<double, double>{210.0, 45.0});
    CHECK(cfg.pdf_samples == 100000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.workers == 0);
    CHECK(cfg.mc_samples == 10000);
    CHECK(cfg.out == "out");
    CHECK(cfg.box().width() == 240.0);
    CHECK(cfg.bc().variant == BcVariant::Mixed);
}

TEST_CASE("full file overrides every section") {
    const RunConfig cfg = parse(R"(# comment line
[geometry]
x1_min = 0
x1_max = 120   # trailing comment
x2_min = 0
x2_max = 40
n1 = 25
n2 = 9

[field]
a0 = 4.0
sigma_a = 2.0
l1 = 12
l2 = 10
variance_convention = variance-ratio

[stochastic]
dim = 4
order = 2
level_full = 4
level_coarse = 2
level_adapted = 4
reduced_dim = auto
reduced_dim_tolerance = 0.1
coarse_spatial_factor = 2

[partition]
nx = 2
ny = 2

[bc]
case = all-dirichlet
left = 50
right = 5
top = 20
bottom = 30
source = 1.5

[pdf]
points = 30 10; 60 20
samples = 5000

[run]
seed = 7
workers = 2
mc_samples = 500
out = results
)");
    CHECK(cfg.x1_max == 120.0);
    CHECK(cfg.x2_max == 40.0);
    CHECK(cfg.n1 == 25);
    CHECK(cfg.n2 == 9);
    CHECK(cfg.a0 == 4.0);
    CHECK(cfg.convention == VarianceConvention::VarianceRatio);
    CHECK(cfg.dim == 4);
    CHECK(cfg.order == 2);
    CHECK(cfg.level_full == 4);
    CHECK(cfg.reduced_dim == 0); // auto
    CHECK(cfg.reduced_dim_tolerance == 0.1);
    CHECK(cfg.coarse_spatial_factor == 2);
    CHECK(cfg.nx == 2);
    CHECK(cfg.ny == 2);
    CHECK(cfg.bc_variant == BcVariant::AllDirichlet);
    CHECK(cfg.bc_left == 50.0);
    CHECK(cfg.bc_top == 20.0);
    CHECK(cfg.bc_bottom == 30.0);
    CHECK(cfg.source == 1.5);
    REQUIRE(cfg.pdf_points.size() == 2);
    CHECK(cfg.pdf_points[1] == std::pair<double, double>{60.0, 20.0});
    CHECK(cfg.pdf_samples == 5000);
    CHECK(cfg.seed == 7);
    CHECK(cfg.workers == 2);
    CHECK(cfg.mc_samples == 500);
    CHECK(cfg.out == "results");
}

TEST_CASE("unknown keys and sections are rejected") {
    CHECK_THROWS_AS(parse("[geometry]\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[nosuch]\nn1 = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse("n1 = 9\n"), ConfigError); // key before any section
    try {
        parse("[geometry]\nbogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "bogus"));
    }
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(parse("[geometry]\nn1 = 25\nn1 = 49\n"), ConfigError);
}

TEST_CASE("all problems are reported together") {
    try {
        parse("[geometry]\nn1 = 1\n[stochastic]\ndim = 0\norder = -1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.messages().size() >= 3);
        CHECK(mentions(e, "n1"));
        CHECK(mentions(e, "dim"));
        CHECK(mentions(e, "order"));
        const std::string what = e.what();
        CHECK(what.find("invalid configuration") != std::string::npos);
    }
}

TEST_CASE("consistency checks catch bad combinations") {
    // grid level must resolve the chaos order
    CHECK_THROWS_AS(parse("[stochastic]\norder = 3\nlevel_full = 3\n"), ConfigError);
    // partition must divide the cell counts
    CHECK_THROWS_AS(parse("[partition]\nnx = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse("[geometry]\nn1 = 26\n"), ConfigError);
    // reduced dimension cannot exceed the input dimension
    CHECK_THROWS_AS(parse("[stochastic]\ndim = 3\nreduced_dim = 5\n"), ConfigError);
    // spatial coarsening must divide the cells
    CHECK_THROWS_AS(parse("[stochastic]\ncoarse_spatial_factor = 5\n"), ConfigError);
    // pdf points must land inside the box
    CHECK_THROWS_AS(parse("[pdf]\npoints = 300 15\n"), ConfigError);
    // malformed numbers
    CHECK_THROWS_AS(parse("[field]\na0 = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("[field]\nvariance_convention = nope\n"), ConfigError);
    CHECK_THROWS_AS(parse("[bc]\ncase = nope\n"), ConfigError);
    // degenerate box
    CHECK_THROWS_AS(parse("[geometry]\nx1_max = 0\n"), ConfigError);
}

TEST_CASE("valid adjustments pass the consistency checks") {
    CHECK_NOTHROW(parse("[stochastic]\norder = 3\nlevel_full = 4\n"));
    CHECK_NOTHROW(parse("[partition]\nnx = 8\nny = 4\n"));
    CHECK_NOTHROW(parse("[geometry]\nn1 = 49\nn2 = 13\n"));
    CHECK_NOTHROW(parse("[stochastic]\ncoarse_spatial_factor = 4\n"));
    const RunConfig cfg = parse("[stochastic]\nreduced_dim = auto\n");
    CHECK(cfg.reduced_dim == 0);
}

TEST_CASE("missing file reports its path") {
    try {
        load_config("/nonexistent/uqdd.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(mentions(e, "/nonexistent/uqdd.cfg"));
    }
}

TEST_CASE("bc helper reflects the variant") {
    const RunConfig mixed = parse("");
    CHECK(mixed.bc().variant == BcVariant::Mixed);
    CHECK(mixed.bc().left == 100.0);
    const RunConfig alld = parse("[bc]\ncase = all-dirichlet\ntop = 55\nbottom = 66\n");
    const BcCase bc = alld.bc();
    CHECK(bc.variant == BcVariant::AllDirichlet);
    CHECK(bc.top == 55.0);
    CHECK(bc.bottom == 66.0);
    CHECK(bc.dirichlet_min() == 10.0);
    CHECK(bc.dirichlet_max() == 100.0);
}
