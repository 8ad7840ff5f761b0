#include "perigeo/amd.hpp"

#include "perigeo/neighbors.hpp"

#include <algorithm>
#include <cmath>

namespace perigeo {

std::vector<double> nearest_neighbor_distances(const PeriodicSet& set, int i, int k) {
    if (k < 1) throw Error("k must be at least 1");
    const auto& cell = set.cell();
    const int n = cell.dim();
    // Ball holding about k points on average, padded by one cell diameter.
    double radius = std::pow(k * cell.volume() / (set.size() * unit_ball_volume(n)), 1.0 / n) + cell.diameter();
    for (;;) {
        // A complete ball enumeration certifies the k smallest distances as
        // soon as it holds k neighbours besides the centre.
        auto d = distances_within(set, set.point(i), radius);
        if (static_cast<int>(d.size()) >= k + 1) {
            return std::vector<double>(d.begin() + 1, d.begin() + 1 + k);
        }
        radius *= 1.5;
    }
}

AmdVector amd(const PeriodicSet& set, int k) {
    AmdVector out;
    out.k = k;
    out.values.assign(k, 0.0);
    for (int i = 0; i < set.size(); ++i) {
        out.per_point.push_back(nearest_neighbor_distances(set, i, k));
        for (int j = 0; j < k; ++j) out.values[j] += out.per_point.back()[j];
    }
    for (double& v : out.values) v /= set.size();
    return out;
}

double amd_linf(const AmdVector& a, const AmdVector& b) {
    const std::size_t k = std::min(a.values.size(), b.values.size());
    double worst = 0;
    for (std::size_t j = 0; j < k; ++j) worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    return worst;
}

}  // namespace perigeo
