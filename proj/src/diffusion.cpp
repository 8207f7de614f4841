#include "uqdd/diffusion.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <stdexcept>

namespace uqdd {

BcCase BcCase::mixed(double left, double right) {
    BcCase bc;
    bc.variant = BcVariant::Mixed;
    bc.left = left;
    bc.right = right;
    return bc;
}

BcCase BcCase::all_dirichlet(double left, double right, double top, double bottom) {
    BcCase bc;
    bc.variant = BcVariant::AllDirichlet;
    bc.left = left;
    bc.right = right;
    bc.top = top;
    bc.bottom = bottom;
    return bc;
}

BcCase BcCase::constant(double value) { return all_dirichlet(value, value, value, value); }

double BcCase::dirichlet_min() const {
    double m = std::min(left, right);
    if (variant == BcVariant::AllDirichlet)
        m = std::min({m, top, bottom});
    return m;
}

double BcCase::dirichlet_max() const {
    double m = std::max(left, right);
    if (variant == BcVariant::AllDirichlet)
        m = std::max({m, top, bottom});
    return m;
}

namespace {

bool is_dirichlet(const StructuredGrid& grid, const BcCase& bc, int i, int j) {
    if (i == 0 || i == grid.n1 - 1)
        return true;
    return bc.variant == BcVariant::AllDirichlet && (j == 0 || j == grid.n2 - 1);
}

double dirichlet_value(const StructuredGrid& grid, const BcCase& bc, int i, int j) {
    // left/right edges win at corners
    if (i == 0)
        return bc.left;
    if (i == grid.n1 - 1)
        return bc.right;
    return j == 0 ? bc.bottom : bc.top;
}

double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

} // namespace

LinearSystem assemble(const StructuredGrid& grid, const Eigen::VectorXd& coeff, const BcCase& bc,
                      const Eigen::VectorXd& source) {
    const int n = grid.num_nodes();
    if (coeff.size() != n)
        throw std::invalid_argument("assemble: coefficient size mismatch");
    if (source.size() != 0 && source.size() != n)
        throw std::invalid_argument("assemble: source size mismatch");
    if ((coeff.array() <= 0.0).any())
        throw std::invalid_argument("assemble: coefficient must be positive");

    LinearSystem sys;
    sys.unknown_of_node.assign(n, -1);
    sys.boundary_values = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
        const int i = grid.i_of(k);
        const int j = grid.j_of(k);
        if (is_dirichlet(grid, bc, i, j))
            sys.boundary_values[k] = dirichlet_value(grid, bc, i, j);
        else {
            sys.unknown_of_node[k] = static_cast<int>(sys.node_of_unknown.size());
            sys.node_of_unknown.push_back(k);
        }
    }
    const int m = static_cast<int>(sys.node_of_unknown.size());
    if (m == n)
        throw std::runtime_error("assemble: no Dirichlet node, system is singular");

    sys.b = Eigen::VectorXd::Zero(m);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * m);

    // control-volume extents: half cells against the boundary
    auto len1 = [&](int i) { return (i == 0 || i == grid.n1 - 1) ? 0.5 * grid.h1 : grid.h1; };
    auto len2 = [&](int j) { return (j == 0 || j == grid.n2 - 1) ? 0.5 * grid.h2 : grid.h2; };

    for (int row = 0; row < m; ++row) {
        const int k = sys.node_of_unknown[row];
        const int i = grid.i_of(k);
        const int j = grid.j_of(k);
        double diag = 0.0;

        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int dir = 0; dir < 4; ++dir) {
            const int ni = i + di[dir];
            const int nj = j + dj[dir];
            if (ni < 0 || ni >= grid.n1 || nj < 0 || nj >= grid.n2)
                continue; // domain edge without a Dirichlet node: zero flux
            const int nk = grid.index(ni, nj);
            const double a_face = harmonic(coeff[k], coeff[nk]);
            const double t = dj[dir] == 0 ? a_face * len2(j) / grid.h1
                                          : a_face * len1(i) / grid.h2;
            diag += t;
            const int col = sys.unknown_of_node[nk];
            if (col >= 0)
                trip.emplace_back(row, col, -t);
            else
                sys.b[row] += t * sys.boundary_values[nk];
        }
        trip.emplace_back(row, row, diag);
        if (source.size() == n)
            sys.b[row] += source[k] * len1(i) * len2(j);
    }

    sys.A.resize(m, m);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.A.makeCompressed();
    return sys;
}

DeterministicSolution solve(const LinearSystem& sys) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.A);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("solve: factorization failed");

    Eigen::VectorXd u = ldlt.solve(sys.b);
    const double bnorm = std::max(sys.b.norm(), 1e-300);
    double res = (sys.A * u - sys.b).norm() / bnorm;
    if (res > 1e-10) {
        u += ldlt.solve(sys.b - sys.A * u); // one refinement pass
        res = (sys.A * u - sys.b).norm() / bnorm;
        if (res > 1e-10)
            throw std::runtime_error("solve: residual above tolerance after refinement");
    }

    DeterministicSolution sol;
    sol.residual = res;
    sol.values = sys.boundary_values;
    for (std::size_t row = 0; row < sys.node_of_unknown.size(); ++row)
        sol.values[sys.node_of_unknown[row]] = u[static_cast<int>(row)];
    return sol;
}

Eigen::VectorXd solve_diffusion(const StructuredGrid& grid, const Eigen::VectorXd& coeff,
                                const BcCase& bc, const Eigen::VectorXd& source) {
    return solve(assemble(grid, coeff, bc, source)).values;
}

} // namespace uqdd
