#include "uqdd/random_field.hpp"

#include "uqdd/csv.hpp"
#include "uqdd/eigensolve.hpp"

#include <cmath>
#include <stdexcept>

namespace uqdd {

LognormalSpec lognormal_params(double a0, double sigma_a, VarianceConvention convention) {
    if (!(a0 > 0.0))
        throw std::invalid_argument("lognormal_params: need a0 > 0");
    if (sigma_a < 0.0)
        throw std::invalid_argument("lognormal_params: need sigma_a >= 0");
    LognormalSpec spec;
    spec.a0 = a0;
    spec.sigma_a = sigma_a;
    spec.convention = convention;
    const double ratio = convention == VarianceConvention::SigmaRatio
                             ? sigma_a / (a0 * a0)
                             : sigma_a * sigma_a / (a0 * a0);
    spec.sigma_g = std::sqrt(std::log1p(ratio));
    spec.g0 = std::log(a0) - 0.5 * spec.sigma_g * spec.sigma_g;
    return spec;
}

double CovarianceKernel::operator()(double x1, double y1, double x2, double y2) const {
    const double d1 = (x1 - y1) / l1;
    const double d2 = (x2 - y2) / l2;
    return sigma_g * sigma_g * std::exp(-d1 * d1 - d2 * d2);
}

RandomFieldModel kl_solve(const CovarianceKernel& kernel, const LognormalSpec& lognormal,
                          const StructuredGrid& grid, const Eigen::VectorXd& w, int d) {
    const int n = grid.num_nodes();
    if (w.size() != n)
        throw std::invalid_argument("kl_solve: weight size mismatch");
    if (d < 1 || d > n)
        throw std::invalid_argument("kl_solve: need 1 <= d <= n");

    Eigen::MatrixXd K(n, n);
    for (int a = 0; a < n; ++a) {
        K(a, a) = kernel.sigma_g * kernel.sigma_g;
        for (int b = 0; b < a; ++b) {
            const double v = kernel(grid.x1(a), grid.x1(b), grid.x2(a), grid.x2(b));
            K(a, b) = v;
            K(b, a) = v;
        }
    }

    WeightedEig eig = weighted_kernel_eig(K, w, d);
    const double total = kernel.sigma_g * kernel.sigma_g * grid.box.area();
    for (int i = 0; i < d; ++i) {
        if (eig.values[i] < -1e-10 * total)
            throw std::runtime_error("kl_solve: covariance operator produced a negative eigenvalue");
        eig.values[i] = std::max(eig.values[i], 0.0);
    }

    RandomFieldModel model;
    model.lognormal = lognormal;
    model.lambda = eig.values;
    model.modes = eig.modes;
    model.captured_variance_fraction = eig.values.sum() / total;
    return model;
}

Eigen::VectorXd realize_log(const RandomFieldModel& model, const Eigen::VectorXd& xi) {
    if (xi.size() != model.dim())
        throw std::invalid_argument("realize_log: germ dimension mismatch");
    return Eigen::VectorXd::Constant(model.modes.rows(), model.lognormal.g0) +
           model.modes * model.lambda.array().sqrt().matrix().asDiagonal() * xi;
}

Eigen::VectorXd realize_coeff(const RandomFieldModel& model, const Eigen::VectorXd& xi) {
    return realize_log(model, xi).array().exp();
}

void write_eigenvalue_csv(const std::string& path, const Eigen::VectorXd& values) {
    CsvWriter out(path);
    out.header({"index", "eigenvalue"});
    for (int i = 0; i < values.size(); ++i)
        out.raw_row({std::to_string(i + 1), CsvWriter::format(values[i])});
}

void write_mode_csv(const std::string& path, const StructuredGrid& grid,
                    const RandomFieldModel& model) {
    CsvWriter out(path);
    std::vector<std::string> names{"x1", "x2"};
    for (int i = 0; i < model.dim(); ++i)
        names.push_back("mode" + std::to_string(i + 1));
    out.header(names);
    std::vector<double> row(2 + model.dim());
    for (int k = 0; k < grid.num_nodes(); ++k) {
        row[0] = grid.x1(k);
        row[1] = grid.x2(k);
        for (int i = 0; i < model.dim(); ++i)
            row[2 + i] = model.modes(k, i);
        out.row(row);
    }
}

} // namespace uqdd
