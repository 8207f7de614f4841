#include "uqdd/commands.hpp"

#include "uqdd/csv.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>

namespace uqdd {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kPdfSeedFull = 101;
constexpr std::uint64_t kPdfSeedAdapt = 202;

std::string in_dir(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string make_out(const std::string& out) {
    fs::create_directories(out);
    return out;
}

void write_moments_csv(const std::string& path, const StructuredGrid& grid,
                       const Eigen::VectorXd& mean, const Eigen::VectorXd& stddev,
                       const std::vector<int>* labels = nullptr,
                       const Eigen::VectorXd* standard_error = nullptr) {
    CsvWriter out(path);
    std::vector<std::string> names{"x1", "x2", "mean", "std"};
    if (standard_error)
        names.push_back("stderr");
    if (labels)
        names.push_back("subdomain");
    out.header(names);
    for (int k = 0; k < grid.num_nodes(); ++k) {
        std::vector<std::string> row{CsvWriter::format(grid.x1(k)), CsvWriter::format(grid.x2(k)),
                                     CsvWriter::format(mean[k]), CsvWriter::format(stddev[k])};
        if (standard_error)
            row.push_back(CsvWriter::format((*standard_error)[k]));
        if (labels)
            row.push_back(std::to_string((*labels)[k]));
        out.raw_row(row);
    }
}

void write_pdf_csvs(const std::string& out, int point_index, const PdfEstimate& est) {
    {
        CsvWriter samples(in_dir(out, "pdf_samples_" + std::to_string(point_index) + ".csv"));
        samples.header({"value"});
        for (int s = 0; s < est.samples.size(); ++s)
            samples.raw_row({CsvWriter::format(est.samples[s])});
    }
    CsvWriter density(in_dir(out, "pdf_" + std::to_string(point_index) + ".csv"));
    density.header({"value", "density"});
    for (int g = 0; g < est.support.size(); ++g)
        density.raw_row({CsvWriter::format(est.support[g]), CsvWriter::format(est.density[g])});
}

void write_summary_csv(const std::string& path,
                       const std::vector<std::pair<std::string, double>>& entries) {
    CsvWriter out(path);
    out.header({"key", "value"});
    for (const auto& [key, value] : entries)
        out.raw_row({key, CsvWriter::format(value)});
}

int resolve_reduced_dim(const RunConfig& cfg, const Eigen::VectorXd& mu) {
    if (cfg.reduced_dim > 0)
        return cfg.reduced_dim;
    return choose_reduced_dim(mu, cfg.reduced_dim_tolerance);
}

} // namespace

ProblemSetup setup_problem(const RunConfig& cfg) {
    ProblemSetup s;
    s.grid = build_grid(cfg.box(), cfg.n1, cfg.n2);
    s.weights = quad_weights(s.grid);
    s.part = partition_snake(s.grid, cfg.nx, cfg.ny);
    const LognormalSpec lognormal = lognormal_params(cfg.a0, cfg.sigma_a, cfg.convention);
    s.kernel = CovarianceKernel{lognormal.sigma_g, cfg.l1, cfg.l2};
    s.model = kl_solve(s.kernel, lognormal, s.grid, s.weights, cfg.dim);
    s.bc = cfg.bc();
    if (cfg.source != 0.0)
        s.source = Eigen::VectorXd::Constant(s.grid.num_nodes(), cfg.source);
    return s;
}

void cmd_kl(const RunConfig& cfg, const std::string& out_dir) {
    const std::string out = make_out(out_dir);
    const ProblemSetup s = setup_problem(cfg);
    std::cout << "[kl] grid " << cfg.n1 << "x" << cfg.n2 << " (" << s.grid.num_nodes()
              << " nodes), field dim " << cfg.dim << ", captured variance fraction "
              << s.model.captured_variance_fraction << "\n";

    write_eigenvalue_csv(in_dir(out, "kl_eigenvalues.csv"), s.model.lambda);
    write_mode_csv(in_dir(out, "kl_modes.csv"), s.grid, s.model);
    write_partition_csv(in_dir(out, "grid_partition.csv"), s.grid, s.part);

    const CollocationRun sketch =
        run_coarse_gaussian(s.model, s.grid, s.bc, internal_level(cfg.level_coarse), s.source,
                            cfg.workers, cfg.coarse_spatial_factor);
    std::cout << "[kl] gaussian sketch: " << sketch.solves << " solves at level "
              << cfg.level_coarse << "\n";

    CsvWriter summary(in_dir(out, "adapted_summary.csv"));
    summary.header({"subdomain", "reduced_dim", "discarded_variance_fraction"});
    for (int sd = 1; sd <= s.part.count(); ++sd) {
        const SubdomainCovariance cov = subdomain_covariance(sketch.solution, s.part, sd);
        Eigen::VectorXd w_s(cov.node_ids.size());
        for (std::size_t a = 0; a < cov.node_ids.size(); ++a)
            w_s[static_cast<int>(a)] = s.weights[cov.node_ids[a]];
        const int k = std::min<int>(cfg.dim, static_cast<int>(cov.node_ids.size()));
        const SubdomainSpectrum sp = hilbert_kl(cov, w_s, k);
        const int r = resolve_reduced_dim(cfg, sp.mu);
        const double discarded = truncation_error_indicator(sp.mu, r);
        write_eigenvalue_csv(in_dir(out, "adapted_eigenvalues_D" + std::to_string(sd) + ".csv"),
                             sp.mu);
        summary.raw_row({std::to_string(sd), std::to_string(r), CsvWriter::format(discarded)});
        std::cout << "[kl] D" << sd << ": r = " << r << " discards " << discarded
                  << " of the subdomain variance\n";
    }

    CostAccounting cost;
    cost.add("gaussian_sketch", sketch.solves);
    cost.write_csv(in_dir(out, "manifest.csv"));
}

void cmd_full(const RunConfig& cfg, const std::string& out_dir) {
    const std::string out = make_out(out_dir);
    const ProblemSetup s = setup_problem(cfg);
    const CollocationRun run = run_full(s.model, s.grid, s.bc, cfg.order,
                                        internal_level(cfg.level_full), s.source, cfg.workers);
    std::cout << "[full] " << run.solves << " solves at level " << cfg.level_full << ", order "
              << cfg.order << ", basis size " << run.solution.basis.size() << "\n";

    const MomentFields mom = moments(run.solution);
    write_moments_csv(in_dir(out, "moments.csv"), s.grid, mom.mean, mom.stddev);

    for (std::size_t k = 0; k < cfg.pdf_points.size(); ++k) {
        const auto& [x1, x2] = cfg.pdf_points[k];
        const PdfEstimate est = pdf_estimate(run.solution, s.grid, x1, x2, cfg.pdf_samples,
                                             cfg.seed + kPdfSeedFull + k);
        write_pdf_csvs(out, static_cast<int>(k + 1), est);
        if (est.degenerate)
            std::cout << "[full] pdf point " << k + 1 << " is degenerate (zero spread)\n";
    }

    CostAccounting cost;
    cost.add("full", run.solves);
    cost.write_csv(in_dir(out, "manifest.csv"));
    write_summary_csv(in_dir(out, "summary.csv"),
                      {{"solves", static_cast<double>(run.solves)},
                       {"field_min", run.field_min},
                       {"field_max", run.field_max},
                       {"mean_min", mom.mean.minCoeff()},
                       {"mean_max", mom.mean.maxCoeff()}});
}

void cmd_adapt(const RunConfig& cfg, const std::string& out_dir) {
    const std::string out = make_out(out_dir);
    const ProblemSetup s = setup_problem(cfg);

    const CollocationRun sketch =
        run_coarse_gaussian(s.model, s.grid, s.bc, internal_level(cfg.level_coarse), s.source,
                            cfg.workers, cfg.coarse_spatial_factor);
    std::cout << "[adapt] gaussian sketch: " << sketch.solves << " solves at level "
              << cfg.level_coarse << "\n";

    CostAccounting cost;
    cost.add("gaussian_sketch", sketch.solves);

    std::vector<PCSolution> parts;
    double field_min = std::numeric_limits<double>::infinity();
    double field_max = -std::numeric_limits<double>::infinity();
    CsvWriter summary(in_dir(out, "adapt_summary.csv"));
    summary.header({"subdomain", "reduced_dim", "discarded_variance_fraction", "solves"});
    for (int sd = 1; sd <= s.part.count(); ++sd) {
        const SubdomainCovariance cov = subdomain_covariance(sketch.solution, s.part, sd);
        Eigen::VectorXd w_s(cov.node_ids.size());
        for (std::size_t a = 0; a < cov.node_ids.size(); ++a)
            w_s[static_cast<int>(a)] = s.weights[cov.node_ids[a]];
        const int k = std::min<int>(cfg.dim, static_cast<int>(cov.node_ids.size()));
        const SubdomainSpectrum sp = hilbert_kl(cov, w_s, k);
        const int r = resolve_reduced_dim(cfg, sp.mu);
        const AdaptationMap map = build_isometry(cov, sp, w_s, r);

        const CollocationRun reduced =
            run_adapted(s.model, s.grid, s.bc, map, cfg.order, internal_level(cfg.level_adapted),
                        s.source, cfg.workers);
        field_min = std::min(field_min, reduced.field_min);
        field_max = std::max(field_max, reduced.field_max);

        write_eigenvalue_csv(in_dir(out, "adapted_eigenvalues_D" + std::to_string(sd) + ".csv"),
                             map.mu);
        write_isometry_csv(in_dir(out, "isometry_D" + std::to_string(sd) + ".csv"), map);
        const double discarded = truncation_error_indicator(map.mu, r);
        summary.raw_row({std::to_string(sd), std::to_string(r), CsvWriter::format(discarded),
                         std::to_string(reduced.solves)});
        cost.add("reduced_D" + std::to_string(sd), reduced.solves);
        std::cout << "[adapt] D" << sd << ": r = " << r << ", " << reduced.solves
                  << " solves at level " << cfg.level_adapted << "\n";
        parts.push_back(std::move(reduced.solution));
    }

    const StitchedSolution stitched = stitch(parts, s.part, s.grid);
    write_moments_csv(in_dir(out, "moments.csv"), s.grid, stitched.mean, stitched.stddev,
                      &s.part.labels);
    {
        CsvWriter gaps(in_dir(out, "interface_mismatch.csv"));
        gaps.header({"x1", "x2", "owner", "neighbor", "mean_gap", "std_gap"});
        for (const auto& g : stitched.gaps)
            gaps.raw_row({CsvWriter::format(s.grid.x1(g.node)), CsvWriter::format(s.grid.x2(g.node)),
                          std::to_string(g.owner), std::to_string(g.neighbor),
                          CsvWriter::format(g.mean_gap), CsvWriter::format(g.std_gap)});
    }
    const double mean_range = stitched.mean.maxCoeff() - stitched.mean.minCoeff();
    std::cout << "[adapt] max interface gap: mean " << stitched.max_mean_gap << " ("
              << (mean_range > 0 ? 100.0 * stitched.max_mean_gap / mean_range : 0.0)
              << "% of the mean range), std " << stitched.max_std_gap << "\n";

    for (std::size_t k = 0; k < cfg.pdf_points.size(); ++k) {
        const auto& [x1, x2] = cfg.pdf_points[k];
        const int node = s.grid.nearest_node(x1, x2);
        const PCSolution& owner = parts[s.part.labels[node] - 1];
        const PdfEstimate est =
            pdf_estimate(owner, s.grid, x1, x2, cfg.pdf_samples, cfg.seed + kPdfSeedAdapt + k);
        write_pdf_csvs(out, static_cast<int>(k + 1), est);
        if (est.degenerate)
            std::cout << "[adapt] pdf point " << k + 1 << " is degenerate (zero spread)\n";
    }

    cost.write_csv(in_dir(out, "manifest.csv"));
    std::cout << "[adapt] total solves: " << cost.total() << "\n";
    write_summary_csv(in_dir(out, "summary.csv"),
                      {{"solves", static_cast<double>(cost.total())},
                       {"field_min", field_min},
                       {"field_max", field_max},
                       {"max_interface_mean_gap", stitched.max_mean_gap},
                       {"max_interface_std_gap", stitched.max_std_gap}});
}

void cmd_mc(const RunConfig& cfg, const std::string& out_dir) {
    const std::string out = make_out(out_dir);
    const ProblemSetup s = setup_problem(cfg);
    const McReference ref =
        mc_reference(s.model, s.grid, s.bc, cfg.mc_samples, cfg.seed, s.source, cfg.workers);
    std::cout << "[mc] " << ref.samples << " samples, field range [" << ref.field_min << ", "
              << ref.field_max << "]\n";

    write_moments_csv(in_dir(out, "moments.csv"), s.grid, ref.mean, ref.stddev, nullptr,
                      &ref.standard_error);
    CostAccounting cost;
    cost.add("mc", ref.samples);
    cost.write_csv(in_dir(out, "manifest.csv"));
    write_summary_csv(in_dir(out, "summary.csv"), {{"solves", static_cast<double>(ref.samples)},
                                                   {"field_min", ref.field_min},
                                                   {"field_max", ref.field_max}});
}

void cmd_compare(const RunConfig& cfg, const std::string& dir_a, const std::string& dir_b,
                 const std::string& out_dir) {
    const std::string out = make_out(out_dir);
    const ProblemSetup s = setup_problem(cfg);

    const CsvTable ta = read_csv(in_dir(dir_a, "moments.csv"));
    const CsvTable tb = read_csv(in_dir(dir_b, "moments.csv"));
    if (ta.size() != s.grid.num_nodes() || tb.size() != s.grid.num_nodes())
        throw std::runtime_error("compare: moment tables do not match the configured grid");
    const Eigen::VectorXd xa1 = ta.column("x1"), xa2 = ta.column("x2");
    const Eigen::VectorXd xb1 = tb.column("x1"), xb2 = tb.column("x2");
    for (int k = 0; k < s.grid.num_nodes(); ++k) {
        const double d = std::max(std::abs(xa1[k] - s.grid.x1(k)), std::abs(xa2[k] - s.grid.x2(k)));
        const double e = std::max(std::abs(xb1[k] - s.grid.x1(k)), std::abs(xb2[k] - s.grid.x2(k)));
        if (std::max(d, e) > 1e-9)
            throw std::runtime_error("compare: node coordinates disagree with the configured grid");
    }
    const Eigen::VectorXd mean_a = ta.column("mean"), std_a = ta.column("std");
    const Eigen::VectorXd mean_b = tb.column("mean"), std_b = tb.column("std");

    {
        CsvWriter err(in_dir(out, "error_fields.csv"));
        err.header({"x1", "x2", "mean_err", "std_err"});
        for (int k = 0; k < s.grid.num_nodes(); ++k)
            err.row({s.grid.x1(k), s.grid.x2(k), mean_a[k] - mean_b[k], std_a[k] - std_b[k]});
    }

    CsvWriter metrics(in_dir(out, "metrics.csv"));
    metrics.header({"metric", "region", "value"});
    auto emit = [&](const std::string& metric, const std::string& region, const Eigen::VectorXd& f,
                    const Eigen::VectorXd& g, const std::vector<int>& nodes) {
        try {
            const double v = rel_l2_error(f, g, s.weights, nodes);
            metrics.raw_row({metric, region, CsvWriter::format(v)});
            std::cout << "[compare] " << metric << " over " << region << ": " << v << "\n";
        } catch (const std::invalid_argument&) {
            std::cout << "[compare] " << metric << " over " << region
                      << ": skipped (zero reference)\n";
        }
    };
    emit("mean_rel_l2", "D", mean_a, mean_b, {});
    emit("std_rel_l2", "D", std_a, std_b, {});
    for (int sd = 1; sd <= s.part.count(); ++sd) {
        emit("mean_rel_l2", "D" + std::to_string(sd), mean_a, mean_b, s.part.nodes[sd - 1]);
        emit("std_rel_l2", "D" + std::to_string(sd), std_a, std_b, s.part.nodes[sd - 1]);
    }

    bool any_pdf = true;
    for (std::size_t k = 0; k < cfg.pdf_points.size() && any_pdf; ++k) {
        const std::string name = "pdf_samples_" + std::to_string(k + 1) + ".csv";
        any_pdf = fs::exists(in_dir(dir_a, name)) && fs::exists(in_dir(dir_b, name));
    }
    if (any_pdf) {
        CsvWriter ks(in_dir(out, "ks.csv"));
        ks.header({"point", "x1", "x2", "ks"});
        for (std::size_t k = 0; k < cfg.pdf_points.size(); ++k) {
            const std::string name = "pdf_samples_" + std::to_string(k + 1) + ".csv";
            const Eigen::VectorXd sa = read_csv(in_dir(dir_a, name)).column("value");
            const Eigen::VectorXd sb = read_csv(in_dir(dir_b, name)).column("value");
            const double d = ks_distance(sa, sb);
            ks.raw_row({std::to_string(k + 1), CsvWriter::format(cfg.pdf_points[k].first),
                        CsvWriter::format(cfg.pdf_points[k].second), CsvWriter::format(d)});
            std::cout << "[compare] ks at point " << k + 1 << ": " << d << "\n";
        }
    } else {
        std::cout << "[compare] pdf samples missing on one side, skipping ks table\n";
    }
}

void cmd_bench(const RunConfig& cfg, const std::string& out_dir) {
    const std::string out = make_out(out_dir);
    cmd_kl(cfg, in_dir(out, "kl"));
    cmd_full(cfg, in_dir(out, "full"));
    cmd_adapt(cfg, in_dir(out, "adapt"));
    cmd_mc(cfg, in_dir(out, "mc"));
    cmd_compare(cfg, in_dir(out, "adapt"), in_dir(out, "full"), in_dir(out, "compare_adapt_full"));
    cmd_compare(cfg, in_dir(out, "full"), in_dir(out, "mc"), in_dir(out, "compare_full_mc"));
    cmd_compare(cfg, in_dir(out, "adapt"), in_dir(out, "mc"), in_dir(out, "compare_adapt_mc"));

    auto manifest_total = [&](const std::string& dir) -> long {
        const CsvTable t = read_csv(in_dir(dir, "manifest.csv"));
        for (int r = 0; r < t.size(); ++r)
            if (t.cell(r, "stage") == "total")
                return std::stol(t.cell(r, "solves"));
        throw std::runtime_error("manifest missing total row: " + dir);
    };
    CsvWriter summary(in_dir(out, "bench_summary.csv"));
    summary.header({"pipeline", "solves"});
    const long full = manifest_total(in_dir(out, "full"));
    const long adapt = manifest_total(in_dir(out, "adapt"));
    const long mc = manifest_total(in_dir(out, "mc"));
    summary.raw_row({"full", std::to_string(full)});
    summary.raw_row({"adapted", std::to_string(adapt)});
    summary.raw_row({"mc", std::to_string(mc)});
    std::cout << "[bench] solves: full " << full << ", adapted " << adapt << " (sketch included), mc "
              << mc << "\n";
}

} // namespace uqdd
