#pragma once

// Independent reference computations for the tests. Everything here is
// deliberately naive: large enumeration boxes, plain grids, exhaustive
// search. None of it calls the algorithms under test beyond the data types.

#include "perigeo/periodic_set.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace oracle {

using perigeo::Mat;
using perigeo::PeriodicSet;
using perigeo::Vec;
using Points = std::vector<Vec>;

/// Sorted distances from x to all points of S within radius, enumerating a
/// coefficient box sized from the smallest singular value of the basis.
std::vector<double> distances(const PeriodicSet& s, const Vec& x, double radius);

/// k-th nearest neighbour averages (k = 1..kmax).
std::vector<double> amd(const PeriodicSet& s, int kmax);

/// All difference vectors q - p within radius (p = motif point i), unsorted.
Points cluster(const PeriodicSet& s, int i, double radius);

/// Fraction of a uniform midpoint grid of [0,1) covered by exactly k
/// intervals [p - t, p + t], p in points + Z.
double coverage_1d(const std::vector<double>& points, double t, int k, int grid = 1000000);

/// Same in the cell of an n-dimensional set, on a g^n midpoint grid.
double coverage_grid(const PeriodicSet& s, double t, int k, int g);

/// max-min distance.
double hausdorff(const Points& c, const Points& d);

/// min over a plain rotation grid (both orientations) of d_H(f(C), D).
/// 2D: uniform angle grid plus golden refinement around the best cells.
/// 3D: Euler grid plus coordinate pattern search from the best cells.
double rotation_grid_dr(const Points& c, const Points& d, double step);

/// Smallest eps on a grid of the given step with
/// dr({p in C : |p| <= alpha - eps}, D) <= eps.
double eps_grid_dm(const Points& c, const Points& d, double alpha, double step,
                   const std::function<double(const Points&, const Points&)>& dr);

/// Optimal transport cost by enumerating every basic solution (spanning
/// trees of the bipartite support graph).
double lp_vertex_transport(const std::vector<double>& w, const std::vector<double>& v, const Eigen::MatrixXd& cost);

/// Bottleneck distance over all motif permutations, translate costs from
/// a big coefficient box.
double bottleneck_bruteforce(const PeriodicSet& s, const PeriodicSet& q);

/// Longest vector of the best basis: min over bases (u,v) of max(|u|,|v|),
/// searching coefficient vectors in [-box, box]^2.
double best_basis_longest_2d(const Mat& basis, int box = 6);

/// Orders of the finite group of signed permutation matrices (n = 2 or 3)
/// mapping the point set onto itself.
int signed_permutation_symmetries(const Points& pts, double eps);

}  // namespace oracle
