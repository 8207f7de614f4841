#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "uqdd/commands.hpp"
#include "uqdd/csv.hpp"
#include "uqdd/sparse_grid.hpp"

using namespace uqdd;
namespace fs = std::filesystem;

namespace {

// desk-scale study: d=3, order 2, 13x5 mesh, 2x1 subdomains
RunConfig desk_config() {
    std::istringstream in(R"(
[geometry]
n1 = 13
n2 = 5
[stochastic]
dim = 3
order = 2
level_full = 3
level_coarse = 2
level_adapted = 3
reduced_dim = 2
[partition]
nx = 2
ny = 1
[pdf]
points = 60 30; 180 30
samples = 2000
[run]
mc_samples = 80
workers = 1
)");
    return parse_config(in);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("uqdd_cmd_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

long manifest_total(const std::string& dir) {
    const CsvTable t = read_csv(dir + "/manifest.csv");
    for (std::size_t r = 0; r < t.size(); ++r)
        if (t.cell(r, "stage") == "total")
            return std::lround(t.column("solves")[r]);
    FAIL("manifest has no total row: " << dir);
    return -1;
}

} // namespace

TEST_CASE("problem setup wires the config together") {
    const RunConfig cfg = desk_config();
    const ProblemSetup ps = setup_problem(cfg);
    CHECK(ps.grid.n1 == 13);
    CHECK(ps.grid.n2 == 5);
    CHECK(ps.part.boxes.size() == 2);
    CHECK(ps.model.dim() == 3);
    CHECK(ps.model.captured_variance_fraction > 0.0);
    CHECK(ps.bc.variant == BcVariant::Mixed);
    CHECK(ps.source.size() == 0);
    CHECK(ps.weights.sum() == doctest::Approx(240.0 * 60.0));
}

TEST_CASE("bench pipeline produces a consistent artifact tree") {
    const RunConfig cfg = desk_config();
    const TempDir tmp("bench");
    cmd_bench(cfg, tmp.sub("study"));

    const std::string root = tmp.sub("study");
    for (const std::string d : {"kl", "full", "adapt", "mc", "compare_adapt_full",
                                "compare_full_mc", "compare_adapt_mc"})
        CHECK(fs::is_directory(root + "/" + d));

    // spectral artifacts
    const CsvTable ev = read_csv(root + "/kl/kl_eigenvalues.csv");
    CHECK(ev.size() == 3);
    const Eigen::VectorXd lambda = ev.column("eigenvalue");
    CHECK(lambda[0] >= lambda[1]);
    CHECK(lambda[1] >= lambda[2]);
    CHECK(fs::exists(root + "/kl/kl_modes.csv"));
    CHECK(fs::exists(root + "/kl/grid_partition.csv"));
    CHECK(fs::exists(root + "/kl/adapted_summary.csv"));

    // cost accounting: full = Q(d, level), adapt = sketch + per-subdomain runs
    const long q_full = node_count(3, internal_level(3));
    const long q_sketch = node_count(3, internal_level(2));
    const long q_red = node_count(2, internal_level(3));
    CHECK(manifest_total(root + "/full") == q_full);
    CHECK(manifest_total(root + "/adapt") == q_sketch + 2 * q_red);
    CHECK(manifest_total(root + "/mc") == 80);

    // moment tables cover the grid
    const CsvTable mom_full = read_csv(root + "/full/moments.csv");
    const CsvTable mom_adapt = read_csv(root + "/adapt/moments.csv");
    const CsvTable mom_mc = read_csv(root + "/mc/moments.csv");
    CHECK(mom_full.size() == 65);
    CHECK(mom_adapt.size() == 65);
    CHECK(mom_mc.size() == 65);
    CHECK_NOTHROW(mom_adapt.column("subdomain"));
    CHECK_NOTHROW(mom_mc.column("stderr"));

    // mean fields stay inside the boundary data
    const Eigen::VectorXd mean_full = mom_full.column("mean");
    CHECK(mean_full.minCoeff() >= 10.0 - 1e-9);
    CHECK(mean_full.maxCoeff() <= 100.0 + 1e-9);

    // both pdf points, sampled and estimated, on the full and adapted sides
    for (const std::string side : {"full", "adapt"})
        for (int k = 1; k <= 2; ++k) {
            const std::string dir = root + "/" + side + "/";
            CHECK(fs::exists(dir + "pdf_" + std::to_string(k) + ".csv"));
            const CsvTable samples =
                read_csv(dir + "pdf_samples_" + std::to_string(k) + ".csv");
            CHECK(samples.size() == 2000);
        }

    // comparisons: error fields, metric table, ks table
    const CsvTable metrics = read_csv(root + "/compare_adapt_full/metrics.csv");
    CHECK(metrics.size() >= 2); // mean + std over the domain at minimum
    bool saw_mean_metric = false;
    for (std::size_t r = 0; r < metrics.size(); ++r)
        if (metrics.cell(r, "metric") == "mean_rel_l2" && metrics.cell(r, "region") == "D")
            saw_mean_metric = true;
    CHECK(saw_mean_metric);
    CHECK(fs::exists(root + "/compare_adapt_full/error_fields.csv"));
    CHECK(fs::exists(root + "/compare_adapt_full/ks.csv"));
    const CsvTable ks = read_csv(root + "/compare_adapt_full/ks.csv");
    CHECK(ks.size() == 2);
    for (std::size_t r = 0; r < ks.size(); ++r)
        CHECK(ks.column("ks")[r] <= 1.0);

    // adapted and full desk-scale moments agree loosely (same problem)
    const Eigen::VectorXd mean_adapt = mom_adapt.column("mean");
    CHECK((mean_adapt - mean_full).cwiseAbs().maxCoeff() < 2.0);

    // interface diagnostics exist and headline summary is written
    CHECK(fs::exists(root + "/adapt/interface_mismatch.csv"));
    CHECK(fs::exists(root + "/bench_summary.csv"));
    const CsvTable bench = read_csv(root + "/bench_summary.csv");
    CHECK(bench.size() >= 3);
}

TEST_CASE("comparing a run with itself reports zero error") {
    const RunConfig cfg = desk_config();
    const TempDir tmp("selfcmp");
    cmd_full(cfg, tmp.sub("run"));
    cmd_compare(cfg, tmp.sub("run"), tmp.sub("run"), tmp.sub("cmp"));

    const CsvTable metrics = read_csv(tmp.sub("cmp") + "/metrics.csv");
    bool saw_domain = false;
    REQUIRE(metrics.size() >= 2);
    for (std::size_t r = 0; r < metrics.size(); ++r) {
        CHECK(metrics.column("value")[r] == 0.0);
        if (metrics.cell(r, "region") == "D")
            saw_domain = true;
    }
    CHECK(saw_domain);

    const CsvTable ks = read_csv(tmp.sub("cmp") + "/ks.csv");
    REQUIRE(ks.size() == 2);
    for (std::size_t r = 0; r < ks.size(); ++r)
        CHECK(ks.column("ks")[r] == 0.0);
}

TEST_CASE("mc artifacts record the sample budget") {
    const RunConfig cfg = desk_config();
    const TempDir tmp("mc");
    cmd_mc(cfg, tmp.sub("mc"));
    const CsvTable summary = read_csv(tmp.sub("mc") + "/summary.csv");
    double solves = -1.0, field_min = -1.0;
    for (std::size_t r = 0; r < summary.size(); ++r) {
        if (summary.cell(r, "key") == "solves")
            solves = summary.column("value")[r];
        if (summary.cell(r, "key") == "field_min")
            field_min = summary.column("value")[r];
    }
    CHECK(solves == 80.0);
    CHECK(field_min > 0.0);
}
