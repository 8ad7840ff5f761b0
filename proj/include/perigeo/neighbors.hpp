#pragma once

#include "perigeo/periodic_set.hpp"

#include <vector>

namespace perigeo {

struct Neighbor {
    Vec offset;       // q - p
    double length;    // |q - p|
    int source;       // motif index of q
    IVec translation; // lattice coefficients of q relative to its motif point
};

/// All vectors q - p with q in S and |q - p| <= alpha, the zero vector
/// included. Sorted by (length, lexicographic offset).
std::vector<Neighbor> neighbors_within(const PeriodicSet& set, int p_index, double alpha,
                                       const Tolerances& tol = {});

/// Same enumeration around an arbitrary Cartesian point x.
std::vector<Neighbor> points_within(const PeriodicSet& set, const Vec& x, double radius,
                                    const Tolerances& tol = {});

/// Sorted distances from x to every point of S within radius (no tolerance).
std::vector<double> distances_within(const PeriodicSet& set, const Vec& x, double radius);

/// Distance from an arbitrary point to the nearest point of S.
double nearest_distance(const PeriodicSet& set, const Vec& x);

/// Upper bound nu(S,alpha,n)*m on the size of any alpha-cluster.
double cluster_size_bound(const PeriodicSet& set, double alpha);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Inclusion slack used for closed balls of the given radius.
double membership_slack(const PeriodicSet& set, double radius, const Tolerances& tol);

}  // namespace perigeo
