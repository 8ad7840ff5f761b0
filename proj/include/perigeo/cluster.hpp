#pragma once

#include "perigeo/periodic_set.hpp"

#include <optional>
#include <vector>

namespace perigeo {

/// Vectors q - p for all q in S with |q - p| <= alpha, the zero vector
/// included, sorted by (length, lexicographic).
struct Cluster {
    int center = 0;
    double alpha = 0;
    int dim = 0;
    std::vector<Vec> points;

    int size() const { return static_cast<int>(points.size()); }
    /// Sub-cluster of the points with length <= radius + slack.
    Cluster prefix(double radius, double slack = 0) const;
};

Cluster alpha_cluster(const PeriodicSet& set, int p_index, double alpha, const Tolerances& tol = {});

/// Wraps arbitrary vectors into a Cluster (sorted; alpha defaults to the
/// largest length).
Cluster make_cluster(std::vector<Vec> points, double alpha = -1, int center = 0);

/// Absolute point-match tolerance for clusters of radius alpha.
double match_tolerance(double alpha, const Tolerances& tol);

struct OrthogonalMap {
    Mat matrix;

    double det() const { return matrix.determinant(); }
    Vec operator()(const Vec& v) const { return matrix * v; }
    OrthogonalMap compose(const OrthogonalMap& inner) const { return {matrix * inner.matrix}; }
    /// Max entry deviation of M^T M from I.
    double orthogonality_error() const;
    static OrthogonalMap identity(int n) { return {Mat::Identity(n, n)}; }
};

/// An orthogonal map f with f(C) = D as point sets (within
/// match_tolerance), or nothing.
std::optional<OrthogonalMap> clusters_isometric(const Cluster& c, const Cluster& d, const Tolerances& tol = {});

/// Every such map, deduplicated. For clusters whose span leaves a complement
/// of dimension >= 2 only the action on the span is enumerated.
std::vector<OrthogonalMap> all_isometries(const Cluster& c, const Cluster& d, const Tolerances& tol = {});

/// Dimension of the linear span of the cluster points.
int cluster_rank(const Cluster& c, const Tolerances& tol = {});

struct SymmetryGroup {
    std::vector<OrthogonalMap> elements;
    int order = 0;
    int rank = 0;
    /// The group contains a full O(k), k >= 2, acting on the complement of
    /// the cluster span; `elements` then lists one map per action on the span.
    bool continuous = false;

    bool operator==(const SymmetryGroup& o) const {
        return continuous == o.continuous && rank == o.rank && order == o.order;
    }
};

SymmetryGroup symmetry_group(const Cluster& c, const Tolerances& tol = {});
SymmetryGroup symmetry_group(const PeriodicSet& set, int p_index, double alpha, const Tolerances& tol = {});

/// Orthonormal columns spanning the same space as the given ones, completed
/// to a basis of R^n.
Mat complete_orthonormal(const Mat& columns);

}  // namespace perigeo
