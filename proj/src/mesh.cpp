#include "uqdd/mesh.hpp"

#include "uqdd/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uqdd {

bool Rect::contains(double x1, double x2, double tol) const {
    return x1 >= x1_min - tol && x1 <= x1_max + tol && x2 >= x2_min - tol && x2 <= x2_max + tol;
}

int StructuredGrid::nearest_node(double p1, double p2) const {
    int i = static_cast<int>(std::lround((p1 - box.x1_min) / h1));
    int j = static_cast<int>(std::lround((p2 - box.x2_min) / h2));
    i = std::clamp(i, 0, n1 - 1);
    j = std::clamp(j, 0, n2 - 1);
    return index(i, j);
}

StructuredGrid build_grid(const Rect& box, int n1, int n2) {
    if (n1 < 2 || n2 < 2)
        throw std::invalid_argument("build_grid: need at least 2 nodes per direction");
    if (!(box.width() > 0.0) || !(box.height() > 0.0))
        throw std::invalid_argument("build_grid: degenerate box");
    StructuredGrid g;
    g.box = box;
    g.n1 = n1;
    g.n2 = n2;
    g.h1 = box.width() / (n1 - 1);
    g.h2 = box.height() / (n2 - 1);
    return g;
}

Eigen::VectorXd quad_weights(const StructuredGrid& grid) {
    Eigen::VectorXd w(grid.num_nodes());
    for (int k = 0; k < grid.num_nodes(); ++k) {
        const int i = grid.i_of(k);
        const int j = grid.j_of(k);
        const double c1 = (i == 0 || i == grid.n1 - 1) ? 0.5 : 1.0;
        const double c2 = (j == 0 || j == grid.n2 - 1) ? 0.5 : 1.0;
        w[k] = c1 * c2 * grid.h1 * grid.h2;
    }
    return w;
}

SubdomainPartition partition_snake(const StructuredGrid& grid, int nx, int ny) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("partition_snake: need nx, ny >= 1");
    if ((grid.n1 - 1) % nx != 0 || (grid.n2 - 1) % ny != 0)
        throw std::invalid_argument("partition_snake: grid lines must cover the box edges");

    SubdomainPartition part;
    part.nx = nx;
    part.ny = ny;
    const double w = grid.box.width() / nx;
    const double h = grid.box.height() / ny;
    for (int r = 0; r < ny; ++r) {
        for (int q = 0; q < nx; ++q) {
            const int c = (r % 2 == 0) ? q : nx - 1 - q; // serpentine numbering
            Rect b;
            b.x1_min = grid.box.x1_min + c * w;
            b.x1_max = (c == nx - 1) ? grid.box.x1_max : grid.box.x1_min + (c + 1) * w;
            b.x2_min = grid.box.x2_min + r * h;
            b.x2_max = (r == ny - 1) ? grid.box.x2_max : grid.box.x2_min + (r + 1) * h;
            part.boxes.push_back(b);
        }
    }

    const double tol = 1e-9 * std::max(grid.h1, grid.h2);
    part.labels.assign(grid.num_nodes(), 0);
    part.nodes.assign(part.count(), {});
    for (int k = 0; k < grid.num_nodes(); ++k) {
        for (int s = 0; s < part.count(); ++s) {
            if (part.boxes[s].contains(grid.x1(k), grid.x2(k), tol)) {
                part.labels[k] = s + 1; // shared edges go to the lowest id
                part.nodes[s].push_back(k);
                break;
            }
        }
    }
    return part;
}

void write_partition_csv(const std::string& path, const StructuredGrid& grid,
                         const SubdomainPartition& part) {
    CsvWriter out(path);
    out.header({"x1", "x2", "subdomain"});
    for (int k = 0; k < grid.num_nodes(); ++k)
        out.raw_row({CsvWriter::format(grid.x1(k)), CsvWriter::format(grid.x2(k)),
                     std::to_string(part.labels[k])});
}

} // namespace uqdd
