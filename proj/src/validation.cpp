#include "uqdd/validation.hpp"

#include "uqdd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace uqdd {

StreamingMoments::StreamingMoments(int size)
    : mean_(Eigen::VectorXd::Zero(size)), m2_(Eigen::VectorXd::Zero(size)) {}

void StreamingMoments::update(const Eigen::VectorXd& sample) {
    if (sample.size() != mean_.size())
        throw std::invalid_argument("StreamingMoments: sample size mismatch");
    ++n_;
    const Eigen::VectorXd delta = sample - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta.cwiseProduct(sample - mean_);
}

Eigen::VectorXd StreamingMoments::variance() const {
    if (n_ < 2)
        return Eigen::VectorXd::Zero(mean_.size());
    return m2_ / static_cast<double>(n_ - 1);
}

Eigen::VectorXd StreamingMoments::stddev() const { return variance().cwiseSqrt(); }

Eigen::VectorXd StreamingMoments::standard_error() const {
    return stddev() / std::sqrt(static_cast<double>(std::max<long>(n_, 1)));
}

McReference mc_reference(const RandomFieldModel& model, const StructuredGrid& grid,
                         const BcCase& bc, long n, std::uint64_t seed,
                         const Eigen::VectorXd& source, int workers) {
    if (n < 2)
        throw std::invalid_argument("mc_reference: need at least 2 samples");
    int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1)
        w = 1;
    w = static_cast<int>(std::min<long>(w, n));

    StreamingMoments acc(grid.num_nodes());
    double field_min = std::numeric_limits<double>::infinity();
    double field_max = -std::numeric_limits<double>::infinity();

    const long batch = std::max<long>(w, 64);
    std::vector<Eigen::VectorXd> results(batch);
    std::exception_ptr error;
    std::mutex error_mutex;

    for (long s0 = 0; s0 < n; s0 += batch) {
        const long s1 = std::min(s0 + batch, n);
        auto work = [&](int t) {
            for (long s = s0 + t; s < s1; s += w) {
                try {
                    const Eigen::VectorXd xi =
                        standard_normal_vector(seed, static_cast<std::uint64_t>(s), model.dim());
                    results[s - s0] = solve_diffusion(grid, realize_coeff(model, xi), bc, source);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::make_exception_ptr(std::runtime_error(
                            "sample " + std::to_string(s) + ": " + e.what()));
                    return;
                }
            }
        };
        if (w == 1)
            work(0);
        else {
            std::vector<std::thread> pool;
            for (int t = 0; t < w; ++t)
                pool.emplace_back(work, t);
            for (auto& th : pool)
                th.join();
        }
        if (error)
            std::rethrow_exception(error);

        for (long s = s0; s < s1; ++s) { // sample order fixes the reduction
            acc.update(results[s - s0]);
            field_min = std::min(field_min, results[s - s0].minCoeff());
            field_max = std::max(field_max, results[s - s0].maxCoeff());
        }
    }

    McReference ref;
    ref.mean = acc.mean();
    ref.stddev = acc.stddev();
    ref.standard_error = acc.standard_error();
    ref.samples = n;
    ref.field_min = field_min;
    ref.field_max = field_max;
    return ref;
}

double rel_l2_error(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Eigen::VectorXd& w,
                    const std::vector<int>& nodes) {
    if (f.size() != g.size() || f.size() != w.size())
        throw std::invalid_argument("rel_l2_error: size mismatch");
    double num = 0.0, den = 0.0;
    auto add = [&](int k) {
        const double d = f[k] - g[k];
        num += w[k] * d * d;
        den += w[k] * g[k] * g[k];
    };
    if (nodes.empty())
        for (int k = 0; k < f.size(); ++k)
            add(k);
    else
        for (int k : nodes)
            add(k);
    if (!(den > 0.0))
        throw std::invalid_argument("rel_l2_error: reference norm is zero");
    return std::sqrt(num / den);
}

double ks_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() == 0 || b.size() == 0)
        throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> sa(a.data(), a.data() + a.size());
    std::vector<double> sb(b.data(), b.data() + b.size());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < sa.size() && ib < sb.size()) {
        const double x = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] <= x)
            ++ia;
        while (ib < sb.size() && sb[ib] <= x)
            ++ib;
        d = std::max(d, std::abs(ia / na - ib / nb));
    }
    return d;
}

} // namespace uqdd
