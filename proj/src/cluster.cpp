#include "perigeo/cluster.hpp"

#include "perigeo/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

namespace perigeo {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

void sort_points(std::vector<Vec>& pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        const double la = a.norm(), lb = b.norm();
        if (la != lb) return la < lb;
        return lex_less(a, b);
    });
}

// Orthonormal frame of the anchors, columns in anchor order.
Mat gram_schmidt(const std::vector<Vec>& vs, int n) {
    Mat q(n, static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec v = vs[i];
        for (std::size_t j = 0; j < i; ++j) v -= q.col(j).dot(v) * q.col(j);
        q.col(i) = v.normalized();
    }
    return q;
}

// Picks anchors of C greedily: at each step the vectors well away from the
// span of the previous anchors, and among those the one with the fewest
// same-length candidates in D (longest first on ties).
std::vector<int> pick_anchors(const Cluster& c, const std::vector<int>& counts, double threshold) {
    const int n = c.dim;
    std::vector<int> chosen;
    std::vector<Vec> frame;
    while (static_cast<int>(chosen.size()) < n) {
        std::vector<double> residual(c.size(), 0.0);
        double best_ind = 0;
        for (int i = 0; i < c.size(); ++i) {
            const Vec& v = c.points[i];
            const double len = v.norm();
            if (len <= threshold) continue;
            Vec r = v;
            for (const Vec& e : frame) r -= e.dot(v) * e;
            residual[i] = r.norm();
            if (residual[i] > threshold) best_ind = std::max(best_ind, residual[i] / len);
        }
        if (best_ind == 0) break;
        int pick = -1;
        for (int i = 0; i < c.size(); ++i) {
            const double len = c.points[i].norm();
            if (residual[i] <= threshold || residual[i] / len < 0.5 * best_ind) continue;
            if (pick < 0 || std::make_tuple(counts[i], -len) < std::make_tuple(counts[pick], -c.points[pick].norm()))
                pick = i;
        }
        chosen.push_back(pick);
        Vec r = c.points[pick];
        for (const Vec& e : frame) r -= e.dot(c.points[pick]) * e;
        frame.push_back(r.normalized());
    }
    return chosen;
}

class IsometrySearch {
public:
    IsometrySearch(const Cluster& c, const Cluster& d, const Tolerances& tol)
        : c_(c), d_(d), n_(c.dim), eps_(match_tolerance(std::max(c.alpha, d.alpha), tol)) {
        for (int j = 0; j < d.size(); ++j) by_length_.push_back({d.points[j].norm(), j});
        std::sort(by_length_.begin(), by_length_.end());
    }

    bool compatible() const {
        if (c_.dim != d_.dim) throw Error("clusters of different dimension");
        if (c_.size() != d_.size()) return false;
        std::vector<double> lc;
        for (const Vec& v : c_.points) lc.push_back(v.norm());
        std::sort(lc.begin(), lc.end());
        for (std::size_t i = 0; i < lc.size(); ++i)
            if (std::abs(lc[i] - by_length_[i].first) > eps_) return false;
        return true;
    }

    // Calls visit(map) for every verified map until it returns false.
    void run(const std::function<bool(const OrthogonalMap&)>& visit) {
        if (!compatible()) return;
        std::vector<int> counts(c_.size());
        for (int i = 0; i < c_.size(); ++i) counts[i] = static_cast<int>(same_length(c_.points[i].norm()).size());
        const auto anchors = pick_anchors(c_, counts, 10 * eps_);
        const int r = static_cast<int>(anchors.size());

        std::vector<Vec> a;
        for (int i : anchors) a.push_back(c_.points[i]);
        const Mat e_full = complete_orthonormal(gram_schmidt(a, n_));

        std::vector<std::vector<int>> cand;
        for (const Vec& v : a) cand.push_back(same_length(v.norm()));
        const double gram_eps = 3 * eps_ * std::max({c_.alpha, d_.alpha, 1e-300});

        std::vector<int> pick(r);
        bool go_on = true;
        std::function<void(int)> rec = [&](int level) {
            if (!go_on) return;
            if (level == r) {
                std::vector<Vec> b;
                for (int j : pick) b.push_back(d_.points[j]);
                Mat f_full = complete_orthonormal(gram_schmidt(b, n_));
                const int variants = (n_ - r == 1) ? 2 : 1;
                for (int s = 0; s < variants && go_on; ++s) {
                    if (s == 1) f_full.col(n_ - 1) *= -1.0;
                    OrthogonalMap m{f_full * e_full.transpose()};
                    if (verify(m)) go_on = visit(m);
                }
                return;
            }
            for (int j : cand[level]) {
                bool ok = true;
                for (int prev = 0; prev < level && ok; ++prev)
                    ok = std::abs(d_.points[j].dot(d_.points[pick[prev]]) - a[level].dot(a[prev])) <= gram_eps;
                if (!ok) continue;
                pick[level] = j;
                rec(level + 1);
                if (!go_on) return;
            }
        };
        rec(0);
    }

private:
    std::vector<int> same_length(double len) const {
        std::vector<int> out;
        auto it = std::lower_bound(by_length_.begin(), by_length_.end(), std::make_pair(len - eps_, -1));
        for (; it != by_length_.end() && it->first <= len + eps_; ++it) out.push_back(it->second);
        return out;
    }

    bool verify(const OrthogonalMap& m) const {
        std::vector<char> used(d_.size(), 0);
        for (const Vec& v : c_.points) {
            const Vec w = m(v);
            int hit = -1;
            for (int j : same_length(v.norm())) {
                if (!used[j] && (w - d_.points[j]).norm() <= eps_) {
                    hit = j;
                    break;
                }
            }
            if (hit < 0) return false;
            used[hit] = 1;
        }
        return true;
    }

    const Cluster& c_;
    const Cluster& d_;
    int n_;
    double eps_;
    std::vector<std::pair<double, int>> by_length_;
};

}  // namespace

Cluster Cluster::prefix(double radius, double slack) const {
    Cluster out{center, radius, dim, {}};
    for (const Vec& v : points)
        if (v.norm() <= radius + slack) out.points.push_back(v);
    return out;
}

Cluster alpha_cluster(const PeriodicSet& set, int p_index, double alpha, const Tolerances& tol) {
    if (p_index < 0 || p_index >= set.size()) throw Error("motif index out of range");
    if (alpha < 0) throw Error("alpha must be non-negative");
    Cluster c{p_index, alpha, set.dim(), {}};
    for (const auto& nb : neighbors_within(set, p_index, alpha, tol)) c.points.push_back(nb.offset);
    return c;
}

Cluster make_cluster(std::vector<Vec> points, double alpha, int center) {
    if (points.empty()) throw Error("cluster needs at least one point");
    sort_points(points);
    Cluster c{center, alpha, static_cast<int>(points.front().size()), std::move(points)};
    if (c.alpha < 0) c.alpha = c.points.back().norm();
    return c;
}

double match_tolerance(double alpha, const Tolerances& tol) { return tol.match_rel * std::max(alpha, 1e-9); }

double OrthogonalMap::orthogonality_error() const {
    const int n = static_cast<int>(matrix.cols());
    return (matrix.transpose() * matrix - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
}

Mat complete_orthonormal(const Mat& columns) {
    const int n = static_cast<int>(columns.rows());
    Mat out(n, n);
    int have = 0;
    auto push = [&](Vec v) {
        for (int j = 0; j < have; ++j) v -= out.col(j).dot(v) * out.col(j);
        const double len = v.norm();
        if (len < 1e-6 || have == n) return;
        out.col(have++) = v / len;
    };
    for (int j = 0; j < columns.cols(); ++j) push(columns.col(j));
    while (have < n) {
        // Standard axis with the largest component off the current span.
        int best = 0;
        double best_len = -1;
        for (int a = 0; a < n; ++a) {
            Vec v = Vec::Unit(n, a);
            for (int j = 0; j < have; ++j) v -= out.col(j).dot(v) * out.col(j);
            if (v.norm() > best_len) {
                best_len = v.norm();
                best = a;
            }
        }
        push(Vec::Unit(n, best));
    }
    return out;
}

std::optional<OrthogonalMap> clusters_isometric(const Cluster& c, const Cluster& d, const Tolerances& tol) {
    std::optional<OrthogonalMap> found;
    IsometrySearch(c, d, tol).run([&](const OrthogonalMap& m) {
        found = m;
        return false;
    });
    return found;
}

std::vector<OrthogonalMap> all_isometries(const Cluster& c, const Cluster& d, const Tolerances& tol) {
    const double same = std::max(tol.ortho, 10 * tol.match_rel);
    std::vector<OrthogonalMap> out;
    IsometrySearch(c, d, tol).run([&](const OrthogonalMap& m) {
        for (const auto& o : out)
            if ((o.matrix - m.matrix).cwiseAbs().maxCoeff() <= same) return true;
        out.push_back(m);
        return true;
    });
    return out;
}

int cluster_rank(const Cluster& c, const Tolerances& tol) {
    const std::vector<int> counts(c.size(), 0);
    return static_cast<int>(pick_anchors(c, counts, 10 * match_tolerance(c.alpha, tol)).size());
}

SymmetryGroup symmetry_group(const Cluster& c, const Tolerances& tol) {
    SymmetryGroup g;
    g.elements = all_isometries(c, c, tol);
    g.order = static_cast<int>(g.elements.size());
    g.rank = cluster_rank(c, tol);
    g.continuous = c.dim - g.rank >= 2;
    return g;
}

SymmetryGroup symmetry_group(const PeriodicSet& set, int p_index, double alpha, const Tolerances& tol) {
    return symmetry_group(alpha_cluster(set, p_index, alpha, tol), tol);
}

}  // namespace perigeo
