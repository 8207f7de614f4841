#include "uqdd/chaos.hpp"

#include "uqdd/mesh.hpp"
#include "uqdd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uqdd {

double hermite_eval(int n, double x) {
    if (n < 0)
        throw std::invalid_argument("hermite_eval: need n >= 0");
    double hm = 0.0, h = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = (x * h - std::sqrt(static_cast<double>(k)) * hm) /
                            std::sqrt(static_cast<double>(k + 1));
        hm = h;
        h = next;
    }
    return h;
}

Eigen::VectorXd hermite_all(int p, double x) {
    Eigen::VectorXd h(p + 1);
    h[0] = 1.0;
    if (p >= 1)
        h[1] = x;
    for (int k = 1; k < p; ++k)
        h[k + 1] = (x * h[k] - std::sqrt(static_cast<double>(k)) * h[k - 1]) /
                   std::sqrt(static_cast<double>(k + 1));
    return h;
}

long basis_size(int d, int p) {
    if (d < 1 || p < 0)
        throw std::invalid_argument("basis_size: need d >= 1, p >= 0");
    long r = 1;
    for (int i = 1; i <= p; ++i)
        r = r * (d + i) / i;
    return r;
}

MultiIndexSet MultiIndexSet::total_degree(int dim, int order) {
    if (dim < 1 || order < 0)
        throw std::invalid_argument("total_degree: need dim >= 1, order >= 0");
    MultiIndexSet set;
    set.dim = dim;
    set.order = order;
    std::vector<int> idx(dim, 0);
    // graded: degree 0, 1, ...; within a degree, lexicographic with the
    // leading coordinate largest first, so degree 1 lists e_1 .. e_d in order
    auto emit_degree = [&](auto&& self, int pos, int rest) -> void {
        if (pos == dim - 1) {
            idx[pos] = rest;
            set.indices.push_back(idx);
            return;
        }
        for (int a = rest; a >= 0; --a) {
            idx[pos] = a;
            self(self, pos + 1, rest - a);
        }
    };
    for (int q = 0; q <= order; ++q)
        emit_degree(emit_degree, 0, q);
    return set;
}

double psi_eval(const MultiIndexSet& set, int i, const Eigen::VectorXd& z) {
    if (z.size() != set.dim)
        throw std::invalid_argument("psi_eval: point dimension mismatch");
    const auto& alpha = set.indices.at(i);
    double v = 1.0;
    for (int k = 0; k < set.dim; ++k)
        if (alpha[k] > 0)
            v *= hermite_eval(alpha[k], z[k]);
    return v;
}

Eigen::VectorXd psi_row(const MultiIndexSet& set, const Eigen::VectorXd& z) {
    if (z.size() != set.dim)
        throw std::invalid_argument("psi_row: point dimension mismatch");
    Eigen::MatrixXd h(set.dim, set.order + 1);
    for (int k = 0; k < set.dim; ++k)
        h.row(k) = hermite_all(set.order, z[k]).transpose();
    Eigen::VectorXd row(set.size());
    for (int i = 0; i < set.size(); ++i) {
        const auto& alpha = set.indices[i];
        double v = 1.0;
        for (int k = 0; k < set.dim; ++k)
            if (alpha[k] > 0)
                v *= h(k, alpha[k]);
        row[i] = v;
    }
    return row;
}

double surrogate_eval(const PCSolution& pc, int k, const Eigen::VectorXd& z) {
    return pc.coeffs.row(k).dot(psi_row(pc.basis, z));
}

MomentFields moments(const PCSolution& pc) {
    MomentFields m;
    m.mean = pc.coeffs.col(0);
    const int nb = pc.basis.size();
    if (nb > 1)
        m.stddev = pc.coeffs.rightCols(nb - 1).rowwise().norm();
    else
        m.stddev = Eigen::VectorXd::Zero(pc.num_nodes());
    return m;
}

Eigen::VectorXd sample_surrogate(const PCSolution& pc, int k, int n, std::uint64_t seed) {
    Eigen::VectorXd out(n);
    const Eigen::VectorXd c = pc.coeffs.row(k).transpose();
    for (int s = 0; s < n; ++s) {
        const Eigen::VectorXd z = standard_normal_vector(seed, static_cast<std::uint64_t>(s),
                                                         pc.basis.dim);
        out[s] = c.dot(psi_row(pc.basis, z));
    }
    return out;
}

PdfEstimate kde(const Eigen::VectorXd& samples) {
    PdfEstimate est;
    est.samples = samples;
    const int n = static_cast<int>(samples.size());
    if (n < 2)
        throw std::invalid_argument("kde: need at least 2 samples");

    Eigen::VectorXd sorted = samples;
    std::sort(sorted.data(), sorted.data() + n);
    const double lo = sorted[0];
    const double hi = sorted[n - 1];
    const double mean = samples.mean();
    const double sd = std::sqrt((samples.array() - mean).square().sum() / (n - 1));
    auto quantile = [&](double q) {
        const double pos = q * (n - 1);
        const int i = static_cast<int>(pos);
        const double f = pos - i;
        return i + 1 < n ? (1.0 - f) * sorted[i] + f * sorted[i + 1] : sorted[n - 1];
    };
    const double iqr = quantile(0.75) - quantile(0.25);

    if (!(hi > lo)) {
        est.degenerate = true;
        return est;
    }
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0))
        spread = sd;
    const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);

    constexpr int grid_points = 256;
    est.support.resize(grid_points);
    est.density.resize(grid_points);
    const double inv = 1.0 / (n * h * std::sqrt(2.0 * std::numbers::pi));
    for (int g = 0; g < grid_points; ++g) {
        const double x = lo + (hi - lo) * g / (grid_points - 1);
        est.support[g] = x;
        double acc = 0.0;
        for (int s = 0; s < n; ++s) {
            const double t = (x - sorted[s]) / h;
            acc += std::exp(-0.5 * t * t);
        }
        est.density[g] = acc * inv;
    }
    return est;
}

PdfEstimate pdf_estimate(const PCSolution& pc, const StructuredGrid& grid, double x1, double x2,
                         int n_samples, std::uint64_t seed) {
    if (n_samples < 100)
        throw std::invalid_argument("pdf_estimate: need at least 100 samples");
    const int k = grid.nearest_node(x1, x2);
    PdfEstimate est = kde(sample_surrogate(pc, k, n_samples, seed));
    est.x1 = x1;
    est.x2 = x2;
    est.node = k;
    return est;
}

} // namespace uqdd
