#pragma once

#include "perigeo/periodic_set.hpp"

#include <string>
#include <vector>

namespace perigeo {

struct PackingCovering {
    double packing = 0;   // r(S): half the minimum inter-point distance
    double covering = 0;  // R(S): max distance from space to the set
    std::string method;   // "analytic-1d" or "voronoi-vertices"
};

PackingCovering packing_covering_radii(const PeriodicSet& set, const Tolerances& tol = {});

/// Smallest hop length that connects every pair of points of S by a chain.
double bridge_length(const PeriodicSet& set, const Tolerances& tol = {});

/// max{2b, d} for the longest edge b and diameter d of the given cell.
double easy_stable_radius(const PeriodicSet& set);

/// max{b, d/2}: a guaranteed upper bound of the bridge length.
double bridge_upper_bound(const PeriodicSet& set);

struct RadiusReport {
    double packing = 0;
    double covering = 0;
    double bridge = 0;
    double easy_stable = 0;
    std::string covering_method;
};

RadiusReport radius_report(const PeriodicSet& set, const Tolerances& tol = {});

/// True when the integer vectors generate all of Z^n.
bool generates_full_lattice(std::vector<IVec> vectors, int n);

/// Lagrange-Gauss reduction (n=2) or greedy reduction (n=3): a basis of the
/// same lattice whose longest vector is as short as possible. Columns in,
/// columns out, sorted by length.
Mat reduce_basis(const Mat& basis);

}  // namespace perigeo
