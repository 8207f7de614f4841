#include "uqdd/eigensolve.hpp"

#include "uqdd/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

namespace uqdd {

namespace {

EigResult dense_topk(const Eigen::MatrixXd& B, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
    const int n = static_cast<int>(B.rows());
    EigResult r;
    r.values.resize(k);
    r.vectors.resize(n, k);
    for (int i = 0; i < k; ++i) {
        r.values[i] = es.eigenvalues()[n - 1 - i]; // ascending -> descending
        r.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return r;
}

EigResult subspace_topk(const Eigen::MatrixXd& B, int k) {
    const int n = static_cast<int>(B.rows());
    const int b = std::min(n, k + std::max(16, k));

    Eigen::MatrixXd X(n, b);
    CounterRng rng(0x51B5F0C3A9E2D817ull, 0);
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < n; ++i)
            X(i, j) = rng.next_normal();

    Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(B * X)
                            .householderQ() *
                        Eigen::MatrixXd::Identity(n, b);

    Eigen::VectorXd theta;
    Eigen::MatrixXd V;
    constexpr int max_iter = 300;
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::MatrixXd Z = B * Q;
        Eigen::MatrixXd T = Q.transpose() * Z;
        T = 0.5 * (T + T.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta.resize(k);
        Eigen::MatrixXd S(b, k);
        for (int i = 0; i < k; ++i) {
            theta[i] = es.eigenvalues()[b - 1 - i];
            S.col(i) = es.eigenvectors().col(b - 1 - i);
        }
        V = Q * S;
        const Eigen::MatrixXd R = Z * S - V * theta.asDiagonal();
        const double scale = std::max(std::abs(theta[0]), 1e-300);
        if (R.colwise().norm().maxCoeff() <= 1e-11 * scale) {
            EigResult r;
            r.values = theta;
            r.vectors = V;
            return r;
        }
        Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Z).householderQ() *
            Eigen::MatrixXd::Identity(n, b);
    }
    throw std::runtime_error("subspace iteration did not converge");
}

} // namespace

EigResult symmetric_topk(const Eigen::MatrixXd& B, int k, int dense_limit) {
    const int n = static_cast<int>(B.rows());
    if (B.cols() != n)
        throw std::invalid_argument("symmetric_topk: matrix must be square");
    if (k < 1 || k > n)
        throw std::invalid_argument("symmetric_topk: need 1 <= k <= n");
    if (n <= dense_limit || n <= k + std::max(16, k))
        return dense_topk(B, k);
    return subspace_topk(B, k);
}

Eigen::VectorXd fix_mode_signs(Eigen::MatrixXd& modes) {
    Eigen::VectorXd signs(modes.cols());
    for (int j = 0; j < modes.cols(); ++j) {
        int arg = 0;
        double best = std::abs(modes(0, j));
        for (int i = 1; i < modes.rows(); ++i) {
            const double a = std::abs(modes(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        signs[j] = modes(arg, j) < 0.0 ? -1.0 : 1.0;
        modes.col(j) *= signs[j];
    }
    return signs;
}

WeightedEig weighted_kernel_eig(const Eigen::MatrixXd& K, const Eigen::VectorXd& w, int k) {
    const int n = static_cast<int>(K.rows());
    if (w.size() != n)
        throw std::invalid_argument("weighted_kernel_eig: weight size mismatch");
    if ((w.array() <= 0.0).any())
        throw std::invalid_argument("weighted_kernel_eig: weights must be positive");

    const Eigen::VectorXd sqrt_w = w.array().sqrt();
    Eigen::MatrixXd B = sqrt_w.asDiagonal() * K * sqrt_w.asDiagonal();
    B = 0.5 * (B + B.transpose()).eval();

    EigResult er = symmetric_topk(B, k);
    WeightedEig we;
    we.values = er.values;
    we.modes = sqrt_w.cwiseInverse().asDiagonal() * er.vectors;
    fix_mode_signs(we.modes);
    return we;
}

} // namespace uqdd
