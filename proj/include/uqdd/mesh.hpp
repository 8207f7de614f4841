#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace uqdd {

struct Rect {
    double x1_min = 0.0;
    double x1_max = 1.0;
    double x2_min = 0.0;
    double x2_max = 1.0;

    double width() const { return x1_max - x1_min; }
    double height() const { return x2_max - x2_min; }
    double area() const { return width() * height(); }
    bool contains(double x1, double x2, double tol = 0.0) const;
};

/// Uniform tensor grid on a rectangle. Node k = j*n1 + i runs row major,
/// bottom-left first; corner nodes coincide exactly with the box corners.
struct StructuredGrid {
    Rect box;
    int n1 = 2;
    int n2 = 2;
    double h1 = 0.0;
    double h2 = 0.0;

    int num_nodes() const { return n1 * n2; }
    int index(int i, int j) const { return j * n1 + i; }
    int i_of(int k) const { return k % n1; }
    int j_of(int k) const { return k / n1; }
    double x1(int k) const { return coord1(i_of(k)); }
    double x2(int k) const { return coord2(j_of(k)); }
    double coord1(int i) const { return i == n1 - 1 ? box.x1_max : box.x1_min + i * h1; }
    double coord2(int j) const { return j == n2 - 1 ? box.x2_max : box.x2_min + j * h2; }

    /// Index of the grid node nearest to (x1, x2).
    int nearest_node(double p1, double p2) const;
};

/// Grid with n1 x n2 nodes, n1, n2 >= 2. Throws std::invalid_argument on a
/// degenerate box or node counts below 2.
StructuredGrid build_grid(const Rect& box, int n1, int n2);

/// Trapezoid quadrature weights per node: interior h1*h2, edges halved,
/// corners quartered. Sums exactly to the box area.
Eigen::VectorXd quad_weights(const StructuredGrid& grid);

/// Disjoint partition of a grid into nx x ny congruent boxes, numbered in a
/// serpentine order: bottom row left to right, next row right to left, and so
/// on. Nodes on shared box edges belong to the lowest-numbered subdomain.
struct SubdomainPartition {
    int nx = 1;
    int ny = 1;
    std::vector<int> labels;             // per node, 1-based subdomain id
    std::vector<Rect> boxes;             // boxes[s-1] is subdomain s
    std::vector<std::vector<int>> nodes; // nodes[s-1]: global node ids, ascending

    int count() const { return nx * ny; }
};

/// Requires (n1-1) % nx == 0 and (n2-1) % ny == 0 so box edges lie on grid
/// lines; throws std::invalid_argument otherwise.
SubdomainPartition partition_snake(const StructuredGrid& grid, int nx, int ny);

/// CSV dump with header x1,x2,subdomain, one row per node in node order.
void write_partition_csv(const std::string& path, const StructuredGrid& grid,
                         const SubdomainPartition& part);

} // namespace uqdd
