#include "perigeo/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace perigeo {
namespace {

// Visits every lattice coefficient vector k with |B (df + k)| <= radius,
// using |u_l| <= radius * |row_l(B^-1)| to bound each coordinate.
template <class Visit>
void for_each_translate(const UnitCell& cell, const Vec& df, double radius, Visit&& visit) {
    const int n = cell.dim();
    long lo[kMaxDim] = {0, 0, 0};
    long hi[kMaxDim] = {0, 0, 0};
    for (int l = 0; l < n; ++l) {
        const double reach = radius * cell.inverse().row(l).norm();
        lo[l] = static_cast<long>(std::ceil(-reach - df[l]));
        hi[l] = static_cast<long>(std::floor(reach - df[l]));
        if (lo[l] > hi[l]) return;
    }
    IVec k(n);
    Vec u(n);
    for (long a = lo[0]; a <= hi[0]; ++a) {
        k[0] = a;
        for (long b = (n > 1 ? lo[1] : 0); b <= (n > 1 ? hi[1] : 0); ++b) {
            if (n > 1) k[1] = b;
            for (long c = (n > 2 ? lo[2] : 0); c <= (n > 2 ? hi[2] : 0); ++c) {
                if (n > 2) k[2] = c;
                for (int l = 0; l < n; ++l) u[l] = df[l] + static_cast<double>(k[l]);
                visit(k, cell.to_cartesian(u));
            }
        }
    }
}

void sort_neighbors(std::vector<Neighbor>& out) {
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.length != b.length) return a.length < b.length;
        return std::lexicographical_compare(a.offset.data(), a.offset.data() + a.offset.size(),
                                            b.offset.data(), b.offset.data() + b.offset.size());
    });
}

}  // namespace

double membership_slack(const PeriodicSet& set, double radius, const Tolerances& tol) {
    return tol.dist_rel * (radius + set.cell().diameter());
}

std::vector<Neighbor> points_within(const PeriodicSet& set, const Vec& x, double radius,
                                    const Tolerances& tol) {
    std::vector<Neighbor> out;
    if (radius < 0) return out;
    const double limit = radius + membership_slack(set, radius, tol);
    const Vec fx = set.cell().to_fractional(x);
    for (int j = 0; j < set.size(); ++j) {
        const Vec df = set.fractional()[j] - fx;
        for_each_translate(set.cell(), df, limit, [&](const IVec& k, const Vec& offset) {
            const double len = offset.norm();
            if (len <= limit) out.push_back({offset, len, j, k});
        });
    }
    sort_neighbors(out);
    return out;
}

std::vector<Neighbor> neighbors_within(const PeriodicSet& set, int p_index, double alpha,
                                       const Tolerances& tol) {
    auto out = points_within(set, set.point(p_index), alpha, tol);
    // The centre comes back with rounding noise from the fractional round trip.
    for (auto& nb : out) {
        if (nb.source == p_index && nb.translation.isZero()) {
            nb.offset.setZero();
            nb.length = 0.0;
        }
    }
    sort_neighbors(out);
    return out;
}

std::vector<double> distances_within(const PeriodicSet& set, const Vec& x, double radius) {
    std::vector<double> out;
    const Vec fx = set.cell().to_fractional(x);
    for (int j = 0; j < set.size(); ++j) {
        for_each_translate(set.cell(), set.fractional()[j] - fx, radius, [&](const IVec&, const Vec& offset) {
            const double len = offset.norm();
            if (len <= radius) out.push_back(len);
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

double nearest_distance(const PeriodicSet& set, const Vec& x) {
    // Every point of space lies within one cell diameter of some translate of
    // motif point 0, so this radius always contains the nearest point.
    const double radius = set.cell().diameter() * (1 + 1e-12);
    double best = std::numeric_limits<double>::infinity();
    const Vec fx = set.cell().to_fractional(x);
    for (int j = 0; j < set.size(); ++j) {
        for_each_translate(set.cell(), set.fractional()[j] - fx, radius, [&](const IVec&, const Vec& offset) {
            best = std::min(best, offset.norm());
        });
    }
    return best;
}

double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double cluster_size_bound(const PeriodicSet& set, double alpha) {
    const auto& cell = set.cell();
    return std::pow(alpha + cell.diameter(), cell.dim()) * unit_ball_volume(cell.dim()) / cell.volume() *
           set.size();
}

}  // namespace perigeo
