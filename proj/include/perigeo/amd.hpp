#pragma once

#include "perigeo/periodic_set.hpp"

#include <vector>

namespace perigeo {

struct AmdVector {
    int k = 0;
    std::vector<double> values;                  // AMD_1..AMD_k
    std::vector<std::vector<double>> per_point;  // d_ij, one row per motif point
};

/// Sorted distances from motif point i to its k nearest neighbours in S
/// (the point itself excluded).
std::vector<double> nearest_neighbor_distances(const PeriodicSet& set, int i, int k);

/// Average Minimum Distances AMD_1..AMD_k.
AmdVector amd(const PeriodicSet& set, int k);

/// max_j |a_j - b_j| over the common prefix.
double amd_linf(const AmdVector& a, const AmdVector& b);

}  // namespace perigeo
