#pragma once

#include "perigeo/cluster.hpp"
#include "perigeo/periodic_set.hpp"

#include <string>
#include <vector>

namespace perigeo {

using Partition = std::vector<std::vector<int>>;  // blocks of motif indices, sorted

/// Splits the motif by isometry class of the alpha-clusters.
Partition alpha_partition(const PeriodicSet& set, double alpha, const Tolerances& tol = {});

/// Same from precomputed clusters (one per motif point, equal alpha).
Partition partition_clusters(const std::vector<Cluster>& clusters, const Tolerances& tol = {});

/// Sorted distinct lengths |q - p| <= alpha_max (p in the motif, q in S,
/// q != p): the radii where some cluster gains points.
std::vector<double> critical_radii(const PeriodicSet& set, double alpha_max, const Tolerances& tol = {});

struct IsotreeLevel {
    double radius = 0;
    Partition blocks;
    std::vector<int> parent;  // index of the containing block one level up (-1 at the root)
};

struct Isotree {
    std::vector<IsotreeLevel> levels;
    /// False when a computed partition failed to refine its predecessor and
    /// had to be intersected with it.
    bool refinement_ok = true;

    /// Radii where the number of blocks grows.
    std::vector<double> split_radii() const;
    /// Text description: one line per level and block with its parent.
    std::string describe() const;
};

/// Partitions at 0 and at every critical radius up to alpha_max.
Isotree isotree(const PeriodicSet& set, double alpha_max, const Tolerances& tol = {});

struct StableRadius {
    double alpha = 0;
    double beta = 0;
    /// Set when no candidate passed the scan and the easy bound was used.
    bool fallback = false;
    /// Radii where the partition or a symmetry group changes.
    std::vector<double> change_points;
};

/// Smallest alpha >= beta with P(alpha) = P(alpha - beta) and equal symmetry
/// groups at alpha and alpha - beta for every motif point, beta being the
/// exact bridge length.
StableRadius minimum_stable_radius(const PeriodicSet& set, const Tolerances& tol = {});

struct IsosetClass {
    Cluster representative;
    std::vector<int> members;
    long weight_num = 0;  // weight = num / den, reduced
    long weight_den = 1;
    double weight() const { return static_cast<double>(weight_num) / static_cast<double>(weight_den); }
};

struct Isoset {
    double alpha = 0;
    int dim = 0;
    int motif_size = 0;
    std::vector<IsosetClass> classes;
    /// alpha lies within the match tolerance of a critical radius.
    bool unstable = false;
};

Isoset isoset(const PeriodicSet& set, double alpha, const Tolerances& tol = {});

/// Radius used to compare two sets: the larger of their easy stable radii.
double common_stable_radius(const PeriodicSet& s, const PeriodicSet& q);

/// True when there is a weight-respecting bijection between the classes of
/// two isosets taken at the same radius.
bool isosets_match(const Isoset& a, const Isoset& b, const Tolerances& tol = {});

/// Isometry decision for two periodic sets.
bool isosets_equal(const PeriodicSet& s, const PeriodicSet& q, const Tolerances& tol = {});

}  // namespace perigeo
