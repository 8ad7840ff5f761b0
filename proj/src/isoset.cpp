#include "perigeo/isoset.hpp"

#include "perigeo/neighbors.hpp"
#include "perigeo/radii.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace perigeo {

namespace {

void canonicalize(Partition& p) {
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
}

// Kuhn's augmenting paths on a boolean adjacency matrix.
bool perfect_matching(const std::vector<std::vector<char>>& adj) {
    const int rows = static_cast<int>(adj.size());
    const int cols = rows ? static_cast<int>(adj[0].size()) : 0;
    if (rows != cols) return false;
    std::vector<int> match(cols, -1);
    for (int r = 0; r < rows; ++r) {
        std::vector<char> seen(cols, 0);
        std::function<bool(int)> augment = [&](int u) {
            for (int v = 0; v < cols; ++v) {
                if (!adj[u][v] || seen[v]) continue;
                seen[v] = 1;
                if (match[v] < 0 || augment(match[v])) {
                    match[v] = u;
                    return true;
                }
            }
            return false;
        };
        if (!augment(r)) return false;
    }
    return true;
}

bool cluster_lex_less(const Cluster& a, const Cluster& b) {
    const std::size_t n = std::min(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& x = a.points[i];
        const Vec& y = b.points[i];
        for (int k = 0; k < x.size(); ++k)
            if (x[k] != y[k]) return x[k] < y[k];
    }
    return a.points.size() < b.points.size();
}

struct RadiusState {
    Partition partition;
    std::vector<SymmetryGroup> groups;
    bool operator==(const RadiusState& o) const { return partition == o.partition && groups == o.groups; }
};

}  // namespace

Partition partition_clusters(const std::vector<Cluster>& clusters, const Tolerances& tol) {
    Partition blocks;
    for (int i = 0; i < static_cast<int>(clusters.size()); ++i) {
        bool placed = false;
        for (auto& b : blocks) {
            if (clusters_isometric(clusters[i], clusters[b.front()], tol)) {
                b.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) blocks.push_back({i});
    }
    canonicalize(blocks);
    return blocks;
}

Partition alpha_partition(const PeriodicSet& set, double alpha, const Tolerances& tol) {
    std::vector<Cluster> clusters;
    for (int i = 0; i < set.size(); ++i) clusters.push_back(alpha_cluster(set, i, alpha, tol));
    return partition_clusters(clusters, tol);
}

std::vector<double> critical_radii(const PeriodicSet& set, double alpha_max, const Tolerances& tol) {
    std::vector<double> all;
    for (int i = 0; i < set.size(); ++i)
        for (const auto& nb : neighbors_within(set, i, alpha_max, tol))
            if (nb.length > 0) all.push_back(nb.length);
    std::sort(all.begin(), all.end());
    const double same = membership_slack(set, alpha_max, tol);
    std::vector<double> out;
    for (double r : all)
        if (out.empty() || r - out.back() > same) out.push_back(r);
    return out;
}

std::vector<double> Isotree::split_radii() const {
    std::vector<double> out;
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i].blocks.size() > levels[i - 1].blocks.size()) out.push_back(levels[i].radius);
    return out;
}

std::string Isotree::describe() const {
    std::ostringstream out;
    out.precision(12);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& lv = levels[i];
        out << "level " << i << " radius " << lv.radius << " blocks " << lv.blocks.size() << '\n';
        for (std::size_t b = 0; b < lv.blocks.size(); ++b) {
            out << "  block " << b << " parent " << lv.parent[b] << " points";
            for (int p : lv.blocks[b]) out << ' ' << p;
            out << '\n';
        }
    }
    return out.str();
}

Isotree isotree(const PeriodicSet& set, double alpha_max, const Tolerances& tol) {
    Isotree tree;
    std::vector<double> radii{0.0};
    for (double r : critical_radii(set, alpha_max, tol)) radii.push_back(r);

    std::vector<Cluster> full;
    for (int i = 0; i < set.size(); ++i) full.push_back(alpha_cluster(set, i, alpha_max, tol));

    for (double r : radii) {
        std::vector<Cluster> cs;
        for (const Cluster& c : full) cs.push_back(c.prefix(r, membership_slack(set, r, tol)));
        IsotreeLevel lv{r, partition_clusters(cs, tol), {}};
        if (!tree.levels.empty()) {
            const Partition& up = tree.levels.back().blocks;
            std::vector<int> owner(set.size());
            for (int b = 0; b < static_cast<int>(up.size()); ++b)
                for (int p : up[b]) owner[p] = b;
            Partition refined;
            for (const auto& block : lv.blocks) {
                for (int b = 0; b < static_cast<int>(up.size()); ++b) {
                    std::vector<int> part;
                    for (int p : block)
                        if (owner[p] == b) part.push_back(p);
                    if (!part.empty()) refined.push_back(part);
                }
            }
            canonicalize(refined);
            if (refined != lv.blocks) tree.refinement_ok = false;
            lv.blocks = refined;
            for (const auto& block : lv.blocks) lv.parent.push_back(owner[block.front()]);
        } else {
            lv.parent.assign(lv.blocks.size(), -1);
        }
        tree.levels.push_back(std::move(lv));
    }
    return tree;
}

StableRadius minimum_stable_radius(const PeriodicSet& set, const Tolerances& tol) {
    StableRadius out;
    out.beta = bridge_length(set, tol);
    const double upper = out.beta + bridge_upper_bound(set);
    const double eps = membership_slack(set, upper, tol);

    std::vector<Cluster> full;
    for (int i = 0; i < set.size(); ++i) full.push_back(alpha_cluster(set, i, upper, tol));
    auto state_at = [&](double r) {
        RadiusState st;
        std::vector<Cluster> cs;
        for (const Cluster& c : full) cs.push_back(c.prefix(r, membership_slack(set, r, tol)));
        st.partition = partition_clusters(cs, tol);
        for (const Cluster& c : cs) st.groups.push_back(symmetry_group(c, tol));
        return st;
    };

    RadiusState prev = state_at(0.0);
    for (double r : critical_radii(set, upper, tol)) {
        RadiusState st = state_at(r);
        if (!(st == prev)) out.change_points.push_back(r);
        prev = std::move(st);
    }

    std::vector<double> candidates{out.beta};
    for (double c : out.change_points) candidates.push_back(c + out.beta);
    std::sort(candidates.begin(), candidates.end());
    for (double a : candidates) {
        if (a > upper + eps) break;
        const bool clean = std::none_of(out.change_points.begin(), out.change_points.end(),
                                        [&](double c) { return c > a - out.beta + eps && c <= a + eps; });
        if (clean) {
            out.alpha = a;
            return out;
        }
    }
    out.alpha = easy_stable_radius(set);
    out.fallback = true;
    return out;
}

Isoset isoset(const PeriodicSet& set, double alpha, const Tolerances& tol) {
    Isoset iso;
    iso.alpha = alpha;
    iso.dim = set.dim();
    iso.motif_size = set.size();
    const double eps = match_tolerance(alpha, tol);

    std::vector<Cluster> clusters;
    for (int i = 0; i < set.size(); ++i) {
        Cluster wide = alpha_cluster(set, i, alpha + 2 * eps, tol);
        for (const Vec& v : wide.points) {
            const double len = v.norm();
            if (len > alpha - eps && len <= alpha + eps && len > 0) iso.unstable = true;
        }
        clusters.push_back(alpha_cluster(set, i, alpha, tol));
    }

    const long m = set.size();
    for (const auto& block : partition_clusters(clusters, tol)) {
        IsosetClass cls;
        cls.members = block;
        cls.representative = clusters[block.front()];
        for (int p : block)
            if (cluster_lex_less(clusters[p], cls.representative)) cls.representative = clusters[p];
        const long g = std::gcd(static_cast<long>(block.size()), m);
        cls.weight_num = static_cast<long>(block.size()) / g;
        cls.weight_den = m / g;
        iso.classes.push_back(std::move(cls));
    }
    return iso;
}

double common_stable_radius(const PeriodicSet& s, const PeriodicSet& q) {
    return std::max(easy_stable_radius(s), easy_stable_radius(q));
}

bool isosets_match(const Isoset& a, const Isoset& b, const Tolerances& tol) {
    if (a.dim != b.dim || a.classes.size() != b.classes.size()) return false;
    std::vector<std::vector<char>> adj(a.classes.size(), std::vector<char>(b.classes.size(), 0));
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        for (std::size_t j = 0; j < b.classes.size(); ++j) {
            const auto& x = a.classes[i];
            const auto& y = b.classes[j];
            if (x.weight_num * y.weight_den != y.weight_num * x.weight_den) continue;
            adj[i][j] = clusters_isometric(x.representative, y.representative, tol).has_value();
        }
    }
    return perfect_matching(adj);
}

bool isosets_equal(const PeriodicSet& s, const PeriodicSet& q, const Tolerances& tol) {
    if (s.dim() != q.dim()) return false;
    const double alpha = common_stable_radius(s, q);
    return isosets_match(isoset(s, alpha, tol), isoset(q, alpha, tol), tol);
}

}  // namespace perigeo
