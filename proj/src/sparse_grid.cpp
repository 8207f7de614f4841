#include "uqdd/sparse_grid.hpp"

#include "uqdd/csv.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace uqdd {

Quadrature1D gauss_hermite_1d(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_hermite_1d: need n >= 1");
    Quadrature1D q;
    if (n == 1) {
        q.nodes = Eigen::VectorXd::Zero(1);
        q.weights = Eigen::VectorXd::Ones(1);
        return q;
    }
    // Golub-Welsch: Jacobi matrix of the monic probabilists' Hermite family
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    q.nodes = es.eigenvalues();
    q.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        q.weights[k] = v0 * v0;
    }
    // enforce exact symmetry about 0
    for (int k = 0; k < n / 2; ++k) {
        const int m = n - 1 - k;
        const double x = 0.5 * (q.nodes[m] - q.nodes[k]);
        const double w = 0.5 * (q.weights[m] + q.weights[k]);
        q.nodes[k] = -x;
        q.nodes[m] = x;
        q.weights[k] = w;
        q.weights[m] = w;
    }
    if (n % 2 == 1)
        q.nodes[n / 2] = 0.0;
    q.weights /= q.weights.sum();
    return q;
}

namespace {

unsigned long long binom(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// distinct 1D node values over all rules up to `level`, plus per-rule id maps
struct NodeIds {
    std::vector<double> values;             // ascending representatives
    std::vector<std::vector<int>> rule_ids; // rule_ids[l][p] -> id
};

NodeIds canonical_ids(const std::vector<Quadrature1D>& rules) {
    std::vector<double> all;
    for (const auto& r : rules)
        for (int p = 0; p < r.nodes.size(); ++p)
            all.push_back(r.nodes[p]);
    std::sort(all.begin(), all.end());

    constexpr double tol = 1e-12;
    NodeIds ids;
    std::vector<double> sums;
    std::vector<int> counts;
    for (double v : all) {
        if (ids.values.empty() || v - ids.values.back() > tol) {
            ids.values.push_back(v);
            sums.push_back(v);
            counts.push_back(1);
        } else {
            sums.back() += v;
            counts.back()++;
        }
    }
    for (std::size_t c = 0; c < ids.values.size(); ++c)
        ids.values[c] = sums[c] / counts[c];

    ids.rule_ids.resize(rules.size());
    for (std::size_t l = 0; l < rules.size(); ++l) {
        ids.rule_ids[l].resize(rules[l].nodes.size());
        for (int p = 0; p < rules[l].nodes.size(); ++p) {
            const double v = rules[l].nodes[p];
            auto it = std::lower_bound(ids.values.begin(), ids.values.end(), v - tol);
            ids.rule_ids[l][p] = static_cast<int>(it - ids.values.begin());
        }
    }
    return ids;
}

template <typename Fn> void for_each_level_index(int dim, int lo, int hi, Fn&& fn) {
    std::vector<int> idx(dim, 0);
    for (int total = lo; total <= hi; ++total) {
        // enumerate compositions of `total` into dim parts
        std::fill(idx.begin(), idx.end(), 0);
        idx[0] = total;
        while (true) {
            fn(idx, total);
            int k = dim - 2;
            while (k >= 0 && idx[k] == 0)
                --k;
            if (k < 0)
                break;
            --idx[k];
            int rest = total;
            for (int m = 0; m <= k; ++m)
                rest -= idx[m];
            idx[k + 1] = rest;
            for (int m = k + 2; m < dim; ++m)
                idx[m] = 0;
        }
    }
}

} // namespace

SparseGrid smolyak(int dim, int level) {
    if (dim < 1)
        throw std::invalid_argument("smolyak: need dim >= 1");
    if (level < 0)
        throw std::invalid_argument("smolyak: need level >= 0");

    std::vector<Quadrature1D> rules;
    for (int l = 0; l <= level; ++l)
        rules.push_back(gauss_hermite_1d(l + 1));
    const NodeIds ids = canonical_ids(rules);

    std::map<std::vector<int>, double> acc;
    const int lo = std::max(0, level - dim + 1);
    for_each_level_index(dim, lo, level, [&](const std::vector<int>& lvl, int total) {
        const int def = level - total;
        double c = static_cast<double>(binom(dim - 1, def));
        if (def % 2 == 1)
            c = -c;

        std::vector<int> pt(dim, 0);
        std::vector<int> key(dim);
        while (true) {
            double w = c;
            for (int k = 0; k < dim; ++k) {
                w *= rules[lvl[k]].weights[pt[k]];
                key[k] = ids.rule_ids[lvl[k]][pt[k]];
            }
            acc[key] += w;
            int k = dim - 1;
            while (k >= 0) {
                if (++pt[k] < rules[lvl[k]].nodes.size())
                    break;
                pt[k] = 0;
                --k;
            }
            if (k < 0)
                break;
        }
    });

    SparseGrid grid;
    grid.dim = dim;
    grid.level = level;
    grid.nodes.resize(static_cast<int>(acc.size()), dim);
    grid.weights.resize(static_cast<int>(acc.size()));
    int q = 0;
    for (const auto& [key, w] : acc) {
        for (int k = 0; k < dim; ++k)
            grid.nodes(q, k) = ids.values[key[k]];
        grid.weights[q] = w;
        ++q;
    }
    return grid;
}

long node_count(int dim, int level) { return smolyak(dim, level).size(); }

int internal_level(int published_level) {
    if (published_level < 1)
        throw std::invalid_argument("grid levels are 1-based");
    return published_level - 1;
}

void write_sparse_grid_csv(const std::string& path, const SparseGrid& grid) {
    CsvWriter out(path);
    std::vector<std::string> names;
    for (int k = 0; k < grid.dim; ++k)
        names.push_back("z" + std::to_string(k + 1));
    names.push_back("weight");
    out.header(names);
    std::vector<double> row(grid.dim + 1);
    for (int q = 0; q < grid.size(); ++q) {
        for (int k = 0; k < grid.dim; ++k)
            row[k] = grid.nodes(q, k);
        row[grid.dim] = grid.weights[q];
        out.row(row);
    }
}

} // namespace uqdd
