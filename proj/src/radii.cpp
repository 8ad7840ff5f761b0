#include "perigeo/radii.hpp"

#include "perigeo/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace perigeo {
namespace {

double covering_radius_1d(const PeriodicSet& set) {
    std::vector<double> xs;
    for (const Vec& f : set.fractional()) xs.push_back(f[0]);
    std::sort(xs.begin(), xs.end());
    double gap = xs.front() + 1.0 - xs.back();
    for (std::size_t i = 1; i < xs.size(); ++i) gap = std::max(gap, xs[i] - xs[i - 1]);
    return 0.5 * gap * set.cell().volume();
}

// Largest empty-ball radius among Voronoi vertices of the motif points. A
// vertex of the Voronoi cell of p at distance rho is equidistant from p and n
// neighbours, all within 2*rho of p, so a grid estimate of R bounds the search.
double covering_radius_voronoi(const PeriodicSet& set, const Tolerances& tol) {
    const int n = set.dim();
    const auto& cell = set.cell();
    const int g = n == 2 ? 16 : 8;
    double grid_max = 0;
    Vec f(n);
    const int total = static_cast<int>(std::pow(g, n));
    for (int idx = 0; idx < total; ++idx) {
        int code = idx;
        for (int a = 0; a < n; ++a) {
            f[a] = (code % g + 0.5) / g;
            code /= g;
        }
        grid_max = std::max(grid_max, nearest_distance(set, cell.to_cartesian(f)));
    }
    const double upper = grid_max + 0.5 * cell.diameter() / g;
    const double eps = tol.dist_rel * cell.diameter();

    double best = grid_max;
    for (int i = 0; i < set.size(); ++i) {
        const Vec& p = set.point(i);
        std::vector<Vec> nbrs;
        for (const auto& nb : neighbors_within(set, i, 2 * upper, tol))
            if (nb.length > 0) nbrs.push_back(nb.offset);
        const int k = static_cast<int>(nbrs.size());

        std::vector<Vec> candidates;
        auto try_solve = [&](const std::vector<int>& idx) {
            Mat a(n, n);
            Vec rhs(n);
            for (int r = 0; r < n; ++r) {
                a.row(r) = 2.0 * nbrs[idx[r]].transpose();
                rhs[r] = nbrs[idx[r]].squaredNorm();
            }
            Eigen::FullPivLU<Mat> lu(a);
            if (lu.rank() < n) return;
            const Vec x = lu.solve(rhs);
            if (x.norm() > best && x.norm() <= upper + eps) candidates.push_back(x);
        };
        std::vector<int> idx(n);
        if (n == 2) {
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) try_solve({a, b});
        } else {
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    for (int c = b + 1; c < k; ++c) try_solve({a, b, c});
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const Vec& u, const Vec& v) { return u.norm() > v.norm(); });
        for (const Vec& x : candidates) {
            if (x.norm() <= best) break;
            if (nearest_distance(set, p + x) >= x.norm() - eps) {
                best = x.norm();
                break;
            }
        }
    }
    return best;
}

double gauss_reduce(Vec& u, Vec& v) {
    for (;;) {
        if (v.squaredNorm() < u.squaredNorm()) std::swap(u, v);
        const double mu = std::round(u.dot(v) / u.squaredNorm());
        if (mu == 0) break;
        v -= mu * u;
        if (v.squaredNorm() >= u.squaredNorm()) break;
    }
    return v.norm();
}

// Integer Hermite-style elimination. Returns true iff the rows span Z^n.
bool hermite_full(std::vector<IVec> rows, int n) {
    std::size_t pivot_row = 0;
    for (int c = 0; c < n; ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot_row; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || std::labs(rows[r][c]) < std::labs(rows[best][c])))
                    best = r;
            if (best == rows.size()) return false;  // rank deficient
            std::swap(rows[pivot_row], rows[best]);
            bool clean = true;
            for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                const long q = rows[r][c] / rows[pivot_row][c];
                rows[r] -= q * rows[pivot_row];
                if (rows[r][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (std::labs(rows[pivot_row][c]) != 1) return false;
        ++pivot_row;
    }
    return true;
}

struct Edge {
    int from;
    int to;
    IVec shift;
    double length;
};

bool bridge_feasible(const std::vector<Edge>& edges, int m, int n, double threshold) {
    std::vector<std::vector<const Edge*>> adj(m);
    for (const auto& e : edges) {
        if (e.length > threshold) break;
        adj[e.from].push_back(&e);
    }
    std::vector<IVec> pos(m);
    std::vector<bool> seen(m, false);
    std::vector<IVec> cycles;
    std::queue<int> queue;
    queue.push(0);
    seen[0] = true;
    pos[0] = IVec::Zero(n);
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop();
        for (const Edge* e : adj[i]) {
            const IVec reach = pos[i] + e->shift;
            if (!seen[e->to]) {
                seen[e->to] = true;
                pos[e->to] = reach;
                queue.push(e->to);
            } else if (reach != pos[e->to]) {
                cycles.push_back(reach - pos[e->to]);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
    return hermite_full(std::move(cycles), n);
}

}  // namespace

bool generates_full_lattice(std::vector<IVec> vectors, int n) {
    return hermite_full(std::move(vectors), n);
}

PackingCovering packing_covering_radii(const PeriodicSet& set, const Tolerances& tol) {
    PackingCovering out;
    const double b = set.cell().longest_edge();
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < set.size(); ++i)
        for (const auto& nb : neighbors_within(set, i, b, tol))
            if (nb.length > 0) {
                nearest = std::min(nearest, nb.length);
                break;
            }
    out.packing = 0.5 * nearest;
    if (set.dim() == 1) {
        out.covering = covering_radius_1d(set);
        out.method = "analytic-1d";
    } else {
        out.covering = covering_radius_voronoi(set, tol);
        out.method = "voronoi-vertices";
    }
    return out;
}

double bridge_upper_bound(const PeriodicSet& set) {
    return std::max(set.cell().longest_edge(), 0.5 * set.cell().diameter());
}

double easy_stable_radius(const PeriodicSet& set) {
    return std::max(2.0 * set.cell().longest_edge(), set.cell().diameter());
}

double bridge_length(const PeriodicSet& set, const Tolerances& tol) {
    const int m = set.size();
    const int n = set.dim();
    const double bound = bridge_upper_bound(set);
    const double eps = tol.dist_rel * set.cell().diameter();

    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i)
        for (const auto& nb : neighbors_within(set, i, bound, tol))
            if (nb.length > 0) edges.push_back({i, nb.source, nb.translation, nb.length});
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.length < b.length; });

    std::vector<double> candidates;
    for (const auto& e : edges)
        if (candidates.empty() || e.length > candidates.back() + eps) candidates.push_back(e.length);

    // Threshold t admits all edges within eps of t, so near-ties act together.
    std::size_t lo = 0, hi = candidates.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (bridge_feasible(edges, m, n, candidates[mid] + eps))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == candidates.size()) return bound;  // unreachable for a valid cell
    return candidates[lo];
}

RadiusReport radius_report(const PeriodicSet& set, const Tolerances& tol) {
    const auto pc = packing_covering_radii(set, tol);
    return {pc.packing, pc.covering, bridge_length(set, tol), easy_stable_radius(set), pc.method};
}

Mat reduce_basis(const Mat& basis) {
    const int n = static_cast<int>(basis.cols());
    std::vector<Vec> b;
    for (int i = 0; i < n; ++i) b.push_back(basis.col(i));
    auto by_length = [](const Vec& u, const Vec& v) { return u.squaredNorm() < v.squaredNorm(); };

    if (n == 2) {
        gauss_reduce(b[0], b[1]);
    } else if (n == 3) {
        for (int iter = 0; iter < 1000; ++iter) {
            std::sort(b.begin(), b.end(), by_length);
            gauss_reduce(b[0], b[1]);
            // Closest vector to b2 in the plane lattice spanned by b0, b1.
            Eigen::Matrix<double, 3, 2> a;
            a.col(0) = b[0];
            a.col(1) = b[1];
            const Eigen::Vector2d real = a.colPivHouseholderQr().solve(Eigen::Vector3d(b[2]));
            Vec best = b[2];
            for (long x = std::lround(real[0]) - 2; x <= std::lround(real[0]) + 2; ++x)
                for (long y = std::lround(real[1]) - 2; y <= std::lround(real[1]) + 2; ++y) {
                    Vec cand = b[2] - static_cast<double>(x) * b[0] - static_cast<double>(y) * b[1];
                    if (cand.squaredNorm() < best.squaredNorm() * (1 - 1e-14)) best = cand;
                }
            if (best.squaredNorm() >= b[2].squaredNorm() * (1 - 1e-14)) break;
            b[2] = best;
        }
    }
    std::sort(b.begin(), b.end(), by_length);
    Mat out(n, n);
    for (int i = 0; i < n; ++i) out.col(i) = b[i];
    return out;
}

}  // namespace perigeo
