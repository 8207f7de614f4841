#include "uqdd/basis_adapt.hpp"

#include "uqdd/csv.hpp"
#include "uqdd/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uqdd {

SubdomainCovariance subdomain_covariance(const PCSolution& gauss, const SubdomainPartition& part,
                                         int s) {
    if (gauss.germ != Germ::Input)
        throw std::invalid_argument("subdomain_covariance: expansion must be in the input germ");
    if (gauss.basis.order < 1)
        throw std::invalid_argument("subdomain_covariance: need an order >= 1 expansion");
    if (s < 1 || s > part.count())
        throw std::invalid_argument("subdomain_covariance: subdomain id out of range");

    SubdomainCovariance cov;
    cov.subdomain = s;
    cov.node_ids = part.nodes[s - 1];
    const int d = gauss.basis.dim;
    cov.factor.resize(static_cast<int>(cov.node_ids.size()), d);
    for (std::size_t a = 0; a < cov.node_ids.size(); ++a)
        cov.factor.row(static_cast<int>(a)) = gauss.coeffs.row(cov.node_ids[a]).segment(1, d);
    return cov;
}

SubdomainSpectrum hilbert_kl(const SubdomainCovariance& cov, const Eigen::VectorXd& w_s, int k) {
    if (w_s.size() != cov.factor.rows())
        throw std::invalid_argument("hilbert_kl: weight size mismatch");
    WeightedEig eig = weighted_kernel_eig(cov.dense(), w_s, k);
    SubdomainSpectrum sp;
    sp.mu = eig.values.cwiseMax(0.0);
    sp.phi = eig.modes;
    return sp;
}

AdaptationMap build_isometry(const SubdomainCovariance& cov, const SubdomainSpectrum& spectrum,
                             const Eigen::VectorXd& w_s, int r) {
    const int d = static_cast<int>(cov.factor.cols());
    if (r < 1 || r > d)
        throw std::invalid_argument("build_isometry: need 1 <= r <= d");
    if (spectrum.mu.size() < r)
        throw std::invalid_argument("build_isometry: spectrum holds fewer than r eigenpairs");
    if (!(spectrum.mu[r - 1] > 1e-14 * std::max(spectrum.mu[0], 0.0)))
        throw std::invalid_argument("build_isometry: reduced dimension exceeds covariance rank");

    AdaptationMap map;
    map.subdomain = cov.subdomain;
    map.r = r;
    map.mu = spectrum.mu;
    map.phi = spectrum.phi.leftCols(r);
    map.node_ids = cov.node_ids;
    map.A = Eigen::MatrixXd::Zero(d, d);

    for (int i = 0; i < r; ++i) {
        const Eigen::VectorXd weighted_phi = w_s.cwiseProduct(map.phi.col(i));
        Eigen::VectorXd row = cov.factor.transpose() * weighted_phi / std::sqrt(spectrum.mu[i]);
        row /= row.norm();
        map.A.row(i) = row.transpose();
    }

    // complete with coordinate seeds, two Gram-Schmidt sweeps per row
    int next = r;
    for (int j = 0; j < d && next < d; ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(d, j);
        for (int sweep = 0; sweep < 2; ++sweep)
            for (int i = 0; i < next; ++i)
                v -= map.A.row(i).dot(v) * map.A.row(i).transpose();
        const double norm = v.norm();
        if (norm < 1e-8)
            continue; // seed already spanned
        map.A.row(next++) = (v / norm).transpose();
    }
    if (next < d)
        throw std::runtime_error("build_isometry: failed to complete the isometry");

    // largest-magnitude entry of each row positive; adapted rows flip
    // together with their eigenfunctions so the pair stays consistent
    for (int i = 0; i < d; ++i) {
        int arg = 0;
        for (int j = 1; j < d; ++j)
            if (std::abs(map.A(i, j)) > std::abs(map.A(i, arg)))
                arg = j;
        if (map.A(i, arg) < 0.0) {
            map.A.row(i) *= -1.0;
            if (i < r)
                map.phi.col(i) *= -1.0;
        }
    }
    return map;
}

AdaptationMap adapt_subdomain(const PCSolution& gauss, const SubdomainPartition& part,
                              const Eigen::VectorXd& w, int s, int r) {
    const SubdomainCovariance cov = subdomain_covariance(gauss, part, s);
    Eigen::VectorXd w_s(cov.node_ids.size());
    for (std::size_t a = 0; a < cov.node_ids.size(); ++a)
        w_s[static_cast<int>(a)] = w[cov.node_ids[a]];
    const int k = std::min<int>(gauss.basis.dim, static_cast<int>(cov.node_ids.size()));
    const SubdomainSpectrum sp = hilbert_kl(cov, w_s, k);
    return build_isometry(cov, sp, w_s, r);
}

double truncation_error_indicator(const Eigen::VectorXd& mu, int r) {
    if (r < 0)
        throw std::invalid_argument("truncation_error_indicator: need r >= 0");
    const double total = mu.sum();
    if (!(total > 0.0))
        return 0.0;
    if (r >= mu.size())
        return 0.0;
    return mu.tail(mu.size() - r).sum() / total;
}

int choose_reduced_dim(const Eigen::VectorXd& mu, double tolerance) {
    for (int r = 1; r < mu.size(); ++r)
        if (truncation_error_indicator(mu, r) <= tolerance)
            return r;
    return static_cast<int>(mu.size());
}

Eigen::MatrixXd map_nodes(const AdaptationMap& map, const Eigen::MatrixXd& eta_points) {
    if (eta_points.cols() != map.r)
        throw std::invalid_argument("map_nodes: points must have r columns");
    return eta_points * map.A.topRows(map.r);
}

CollocationRun run_adapted(const RandomFieldModel& model, const StructuredGrid& grid,
                           const BcCase& bc, const AdaptationMap& map, int order, int level,
                           const Eigen::VectorXd& source, int workers) {
    if (map.A.cols() != model.dim())
        throw std::invalid_argument("run_adapted: map dimension mismatch");
    const SparseGrid sg = smolyak(map.r, level);
    const MultiIndexSet basis = MultiIndexSet::total_degree(map.r, order);
    auto sampler = [&](const Eigen::VectorXd& eta) -> Eigen::VectorXd {
        const Eigen::VectorXd xi = map.A.topRows(map.r).transpose() * eta;
        return solve_diffusion(grid, realize_coeff(model, xi), bc, source);
    };
    CollocationRun run = project_collocation(sg, basis, sampler, grid.num_nodes(), workers);
    run.solution.germ = Germ::Adapted;
    run.solution.subdomain = map.subdomain;
    return run;
}

StitchedSolution stitch(const std::vector<PCSolution>& parts, const SubdomainPartition& part,
                        const StructuredGrid& grid) {
    if (static_cast<int>(parts.size()) != part.count())
        throw std::invalid_argument("stitch: one expansion per subdomain required");
    const int n = grid.num_nodes();
    std::vector<MomentFields> fields;
    fields.reserve(parts.size());
    for (const auto& pc : parts) {
        if (pc.num_nodes() != n)
            throw std::invalid_argument("stitch: node count mismatch");
        fields.push_back(moments(pc));
    }

    StitchedSolution out;
    out.mean.resize(n);
    out.stddev.resize(n);
    for (int k = 0; k < n; ++k) {
        const int s = part.labels[k];
        out.mean[k] = fields[s - 1].mean[k];
        out.stddev[k] = fields[s - 1].stddev[k];
    }

    // disagreement between owners across each interface edge
    for (int k = 0; k < n; ++k) {
        const int i = grid.i_of(k);
        const int j = grid.j_of(k);
        const int di[2] = {1, 0};
        const int dj[2] = {0, 1};
        for (int dir = 0; dir < 2; ++dir) {
            const int ni = i + di[dir];
            const int nj = j + dj[dir];
            if (ni >= grid.n1 || nj >= grid.n2)
                continue;
            const int nk = grid.index(ni, nj);
            const int sa = part.labels[k];
            const int sb = part.labels[nk];
            if (sa == sb)
                continue;
            InterfaceGap gap;
            gap.node = k;
            gap.owner = sa;
            gap.neighbor = sb;
            gap.mean_gap = std::abs(fields[sa - 1].mean[k] - fields[sb - 1].mean[k]);
            gap.std_gap = std::abs(fields[sa - 1].stddev[k] - fields[sb - 1].stddev[k]);
            out.gaps.push_back(gap);
            out.max_mean_gap = std::max(out.max_mean_gap, gap.mean_gap);
            out.max_std_gap = std::max(out.max_std_gap, gap.std_gap);
        }
    }
    return out;
}

long CostAccounting::total() const {
    long t = 0;
    for (const auto& [stage, solves] : stages)
        t += solves;
    return t;
}

void CostAccounting::write_csv(const std::string& path) const {
    CsvWriter out(path);
    out.header({"stage", "solves"});
    for (const auto& [stage, solves] : stages)
        out.raw_row({stage, std::to_string(solves)});
    out.raw_row({"total", std::to_string(total())});
}

void write_isometry_csv(const std::string& path, const AdaptationMap& map) {
    CsvWriter out(path);
    out.header({"row", "col", "value"});
    for (int i = 0; i < map.A.rows(); ++i)
        for (int j = 0; j < map.A.cols(); ++j)
            out.raw_row({std::to_string(i + 1), std::to_string(j + 1),
                         CsvWriter::format(map.A(i, j))});
}

} // namespace uqdd
