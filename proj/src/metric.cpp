#include "perigeo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>

namespace perigeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// d_H(M C, D), giving up once the running value exceeds cutoff (the
// returned value is then only a lower bound above cutoff).
double hausdorff_mapped(const Mat& m, const PointList& c, const PointList& d, double cutoff = kInf) {
    double worst = 0;
    for (const Vec& p : c) {
        const Vec fp = m * p;
        double best = kInf;
        for (const Vec& q : d) {
            const double dist = (fp - q).squaredNorm();
            if (dist < best) {
                best = dist;
                if (best <= worst * worst) break;
            }
        }
        worst = std::max(worst, std::sqrt(best));
        if (worst > cutoff) return worst;
    }
    return worst;
}

Mat rotation_2d(double theta, double reflect) {
    Mat m(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    m << c, -s * reflect, s, c * reflect;
    return m;
}

Mat rodrigues(const Vec& w) {
    const double angle = w.norm();
    Mat k(3, 3);
    k << 0, -w[2], w[1], w[2], 0, -w[0], -w[1], w[0], 0;
    Mat r = Mat::Identity(3, 3);
    if (angle < 1e-15) return r + k;
    k /= angle;
    return r + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

Mat euler_zyz(double a, double b, double c) {
    auto rz = [](double t) {
        Mat m(3, 3);
        m << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
        return m;
    };
    Mat ry(3, 3);
    ry << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
    return rz(a) * ry * rz(c);
}

// Minimal rotation in the plane of unit vectors u, v taking u to v.
Mat plane_rotation(const Vec& u, const Vec& v) {
    const int n = static_cast<int>(u.size());
    const double c = u.dot(v);
    Mat id = Mat::Identity(n, n);
    if (c > -1 + 1e-12) {
        const Vec s = u + v;
        return id - s * s.transpose() / (1 + c) + 2 * v * u.transpose();
    }
    // Antipodal: half turn in the plane of u and any perpendicular axis.
    Mat frame = complete_orthonormal(u);
    const Vec w = frame.col(1);
    return id - 2 * u * u.transpose() - 2 * w * w.transpose();
}

// Keeps the k smallest (value, map) pairs.
class TopK {
public:
    explicit TopK(int k) : k_(std::max(k, 1)) {}
    double cutoff() const { return static_cast<int>(items_.size()) < k_ ? kInf : items_.back().first; }
    void offer(double v, const Mat& m) {
        if (v >= cutoff()) return;
        auto it = std::upper_bound(items_.begin(), items_.end(), v,
                                   [](double x, const std::pair<double, Mat>& e) { return x < e.first; });
        items_.insert(it, {v, m});
        if (static_cast<int>(items_.size()) > k_) items_.pop_back();
    }
    const std::vector<std::pair<double, Mat>>& items() const { return items_; }

private:
    int k_;
    std::vector<std::pair<double, Mat>> items_;
};

double farthest_norm(const PointList& pts) {
    double r = 0;
    for (const Vec& p : pts) r = std::max(r, p.norm());
    return r;
}

int farthest_index(const PointList& pts) {
    int best = -1;
    double len = 0;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (pts[i].norm() > len) {
            len = pts[i].norm();
            best = i;
        }
    }
    return best;
}

// Nelder-Mead over rotation vectors w, objective f(M0 * exp(w)).
std::pair<Mat, double> refine_3d(const Mat& m0, double f0, const PointList& c, const PointList& d, double size) {
    auto f = [&](const Vec& w) { return hausdorff_mapped(m0 * rodrigues(w), c, d); };
    std::vector<Vec> simplex(4, Vec::Zero(3));
    std::vector<double> val(4);
    val[0] = f0;
    for (int i = 1; i < 4; ++i) {
        simplex[i][i - 1] = size;
        val[i] = f(simplex[i]);
    }
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<int> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] < val[b]; });
        std::vector<Vec> s2;
        std::vector<double> v2;
        for (int i : order) {
            s2.push_back(simplex[i]);
            v2.push_back(val[i]);
        }
        simplex = s2;
        val = v2;
        if ((simplex[3] - simplex[0]).norm() < 1e-10) break;
        Vec centroid = (simplex[0] + simplex[1] + simplex[2]) / 3.0;
        Vec xr = centroid + (centroid - simplex[3]);
        double fr = f(xr);
        if (fr < val[0]) {
            Vec xe = centroid + 2.0 * (centroid - simplex[3]);
            double fe = f(xe);
            if (fe < fr) {
                simplex[3] = xe;
                val[3] = fe;
            } else {
                simplex[3] = xr;
                val[3] = fr;
            }
        } else if (fr < val[2]) {
            simplex[3] = xr;
            val[3] = fr;
        } else {
            Vec xc = centroid + 0.5 * (simplex[3] - centroid);
            double fc = f(xc);
            if (fc < val[3]) {
                simplex[3] = xc;
                val[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
                    val[i] = f(simplex[i]);
                }
            }
        }
    }
    int best = static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin());
    return {m0 * rodrigues(simplex[best]), val[best]};
}

// Frame alignment maps sending (a1, a2) to the directions of (b1, b2).
void frame_candidates(const Vec& a1, const Vec& a2, const Vec& b1, const Vec& b2,
                      const std::function<void(const Mat&)>& emit) {
    auto frame = [](const Vec& x, const Vec& y) {
        Mat f(3, 3);
        f.col(0) = x.normalized();
        Vec y2 = y - f.col(0).dot(y) * f.col(0);
        f.col(1) = y2.normalized();
        const Eigen::Vector3d a = f.col(0), b = f.col(1);
        f.col(2) = a.cross(b);
        return f;
    };
    const Mat ea = frame(a1, a2);
    Mat eb = frame(b1, b2);
    emit(eb * ea.transpose());
    eb.col(2) *= -1.0;
    emit(eb * ea.transpose());
}

void check_nonempty(const PointList& c, const PointList& d) {
    if (c.empty() || d.empty()) throw Error("point sets must be nonempty");
    if (c.front().size() != d.front().size()) throw Error("point sets of different dimension");
}

RotationFit exact_1d(const PointList& c, const PointList& d) {
    RotationFit best{kInf, OrthogonalMap::identity(1)};
    for (double s : {1.0, -1.0}) {
        Mat m(1, 1);
        m(0, 0) = s;
        const double v = hausdorff_mapped(m, c, d);
        if (v < best.value) best = {v, {m}};
    }
    return best;
}

struct Polar {
    double r, phi;
};

std::vector<Polar> to_polar(const PointList& pts, double reflect) {
    std::vector<Polar> out;
    for (const Vec& p : pts) out.push_back({p.norm(), std::atan2(reflect * p[1], p[0])});
    return out;
}

// Lower bound of d_H(R_t C, D) over t in [theta - h, theta + h]. Each point
// of C sweeps an arc, and the distance from a point to an arc is exact.
double arc_lower_bound(const std::vector<Polar>& c, const std::vector<Polar>& d, double theta, double h,
                       double stop) {
    double worst = 0;
    for (const Polar& p : c) {
        double best = kInf;
        for (const Polar& q : d) {
            double dist;
            if (p.r == 0 || q.r == 0) {
                dist = std::abs(p.r - q.r);
            } else {
                const double gap = std::abs(std::remainder(q.phi - p.phi - theta, 2 * std::numbers::pi));
                if (gap <= h) {
                    dist = std::abs(p.r - q.r);
                } else {
                    const double sq = p.r * p.r + q.r * q.r - 2 * p.r * q.r * std::cos(gap - h);
                    dist = std::sqrt(std::max(sq, 0.0));
                }
            }
            if (dist < best) {
                best = dist;
                if (best <= worst) break;
            }
        }
        worst = std::max(worst, best);
        if (worst >= stop) return worst;
    }
    return worst;
}

// Branch and bound over the rotation angle for both orientations; the
// result is within opt.precision_2d * max|c| of the optimum unless the
// interval budget runs out.
RotationFit exact_2d(const PointList& c, const PointList& d, const ExactOptions& opt) {
    RotationFit best{hausdorff_mapped(Mat::Identity(2, 2), c, d), OrthogonalMap::identity(2)};
    auto consider = [&](double theta, double reflect) {
        const Mat m = rotation_2d(theta, reflect);
        const double v = hausdorff_mapped(m, c, d, best.value);
        if (v < best.value) best = {v, {m}};
    };

    const double rmax = farthest_norm(c);
    if (rmax == 0) return best;
    const int a = farthest_index(c);
    for (const Vec& q : d) {
        if (q.norm() == 0) continue;
        for (double s : {1.0, -1.0}) consider(std::atan2(q[1], q[0]) - std::atan2(s * c[a][1], c[a][0]), s);
    }

    const double target = opt.precision_2d * rmax;
    const std::vector<Polar> pd = to_polar(d, 1.0);
    const std::vector<Polar> pc[2] = {to_polar(c, 1.0), to_polar(c, -1.0)};
    struct Interval {
        double theta, half;
        int side;
    };
    std::vector<Interval> stack;
    const int steps = std::max(1, static_cast<int>(std::ceil(2 * std::numbers::pi / opt.grid_step_2d)));
    const double half = std::numbers::pi / steps;
    for (int side = 0; side < 2; ++side)
        for (int i = 0; i < steps; ++i) stack.push_back({(2 * i + 1) * half, half, side});

    long budget = opt.max_intervals;
    while (!stack.empty()) {
        if (--budget < 0) {
            best.certified = false;
            break;
        }
        const Interval iv = stack.back();
        stack.pop_back();
        const double reflect = iv.side == 0 ? 1.0 : -1.0;
        if (arc_lower_bound(pc[iv.side], pd, iv.theta, iv.half, best.value - target) >= best.value - target) continue;
        consider(iv.theta, reflect);
        if (iv.half * rmax <= target) continue;
        stack.push_back({iv.theta - iv.half / 2, iv.half / 2, iv.side});
        stack.push_back({iv.theta + iv.half / 2, iv.half / 2, iv.side});
    }
    return best;
}

RotationFit exact_3d(const PointList& c, const PointList& d, const ExactOptions& opt) {
    TopK top(opt.refine_starts);
    Mat reflect = Mat::Identity(3, 3);
    reflect(2, 2) = -1;

    auto offer = [&](const Mat& m) { top.offer(hausdorff_mapped(m, c, d, top.cutoff()), m); };

    // Alignments of the two farthest independent points of C onto pairs of D.
    const int a1 = farthest_index(c);
    if (a1 >= 0) {
        const Vec u = c[a1].normalized();
        int a2 = -1;
        double off = 0;
        for (int i = 0; i < static_cast<int>(c.size()); ++i) {
            const double r = (c[i] - u.dot(c[i]) * u).norm();
            if (r > off + 1e-12) {
                off = r;
                a2 = i;
            }
        }
        for (const Vec& q1 : d) {
            if (q1.norm() == 0) continue;
            if (a2 < 0 || off < 1e-9 * c[a1].norm()) {
                Vec x = q1.normalized();
                offer(plane_rotation(u, x));
                offer(plane_rotation(u, x) * reflect);
                continue;
            }
            for (const Vec& q2 : d) {
                const Vec x = q1.normalized();
                if ((q2 - x.dot(q2) * x).norm() < 1e-9 * (q2.norm() + 1)) continue;
                frame_candidates(c[a1], c[a2], q1, q2, offer);
            }
        }
    }

    const double h = opt.grid_step_3d;
    const int na = static_cast<int>(std::ceil(2 * std::numbers::pi / h));
    const int nb = static_cast<int>(std::ceil(std::numbers::pi / h));
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j <= nb; ++j) {
            for (int l = 0; l < na; ++l) {
                const Mat r = euler_zyz(i * 2 * std::numbers::pi / na, j * std::numbers::pi / nb,
                                        l * 2 * std::numbers::pi / na);
                offer(r);
                offer(r * reflect);
            }
        }
    }

    RotationFit best{kInf, OrthogonalMap::identity(3)};
    for (const auto& [v, m] : top.items()) {
        auto [mr, vr] = refine_3d(m, v, c, d, h / 2);
        if (v < vr) {
            mr = m;
            vr = v;
        }
        if (vr < best.value) best = {vr, {mr}};
    }
    return best;
}

}  // namespace

double directed_hausdorff(const PointList& c, const PointList& d) {
    check_nonempty(c, d);
    const int n = static_cast<int>(c.front().size());
    return hausdorff_mapped(Mat::Identity(n, n), c, d);
}

RotationFit d_R_exact_small(const PointList& c, const PointList& d, const ExactOptions& opt) {
    check_nonempty(c, d);
    switch (c.front().size()) {
        case 1: return exact_1d(c, d);
        case 2: return exact_2d(c, d, opt);
        case 3: return exact_3d(c, d, opt);
        default: throw Error("dimension must be 1, 2 or 3");
    }
}

RotationFit d_R_approx(const PointList& c, const PointList& d, double delta, bool thorough) {
    check_nonempty(c, d);
    (void)delta;  // nearest neighbours are exact; delta only enters the factor
    const int n = static_cast<int>(c.front().size());
    if (n == 1) return exact_1d(c, d);

    RotationFit best{kInf, OrthogonalMap::identity(n)};
    const double rmax = farthest_norm(c);
    if (rmax == 0) {
        best.value = hausdorff_mapped(best.map.matrix, c, d);
        return best;
    }

    Mat reflect = Mat::Identity(n, n);
    reflect(n - 1, n - 1) = -1;

    std::vector<int> first;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        const double len = c[i].norm();
        if (len >= rmax * (1 - 1e-12)) {
            first.push_back(i);
            if (!thorough) break;
        }
    }

    for (int i1 : first) {
        // Second anchor: farthest from the line through the first.
        const Vec u = c[i1].normalized();
        int i2 = -1;
        double off = 1e-9 * rmax;
        for (int i = 0; i < static_cast<int>(c.size()); ++i) {
            const double r = (c[i] - u.dot(c[i]) * u).norm();
            if (r > off) {
                off = r;
                i2 = i;
            }
        }
        for (const Mat& pre : {Mat(Mat::Identity(n, n)), reflect}) {
            const Vec p1 = pre * c[i1];
            for (const Vec& q1 : d) {
                if (q1.norm() == 0) continue;
                const Vec x = q1.normalized();
                const Mat f1 = plane_rotation(p1.normalized(), x) * pre;
                if (n == 2 || i2 < 0) {
                    const double v = hausdorff_mapped(f1, c, d, best.value);
                    if (v < best.value) best = {v, {f1}};
                    continue;
                }
                const Vec y = f1 * c[i2];
                const Vec y_perp = y - x.dot(y) * x;
                for (const Vec& q2 : d) {
                    const Vec q_perp = q2 - x.dot(q2) * x;
                    if (q_perp.norm() < 1e-12 * (q2.norm() + 1)) continue;
                    for (double side : {1.0, -1.0}) {
                        const Mat f = plane_rotation(y_perp.normalized(), side * q_perp.normalized()) * f1;
                        const double v = hausdorff_mapped(f, c, d, best.value);
                        if (v < best.value) best = {v, {f}};
                    }
                }
            }
        }
    }
    if (best.value == kInf) best.value = hausdorff_mapped(best.map.matrix, c, d);
    return best;
}

DrEngine resolve_engine(const DrConfig& cfg, int size_c, int size_d) {
    if (cfg.engine != DrEngine::Auto) return cfg.engine;
    return std::max(size_c, size_d) <= cfg.exact_limit ? DrEngine::Exact : DrEngine::Approx;
}

std::string engine_name(DrEngine e) {
    switch (e) {
        case DrEngine::Exact: return "exact";
        case DrEngine::Approx: return "approx";
        default: return "auto";
    }
}

double engine_factor(DrEngine e, int dim, double delta) {
    if (e != DrEngine::Approx || dim < 2) return 1.0;
    return 2.0 * (dim - 1) * (1 + delta);
}

DmResult d_M(const Cluster& c, const Cluster& d, double alpha, const DrConfig& cfg) {
    DmResult out;
    out.engine = resolve_engine(cfg, c.size(), d.size());
    const auto& p = c.points;
    double best = 0;
    double last_dr = 0;
    for (int i = 0; i < c.size(); ++i) {
        const double len = p[i].norm();
        if (alpha - len <= best) break;
        // Points tied in length enter the prefix together.
        if (i + 1 < c.size() && p[i + 1].norm() - len <= 1e-12 * std::max(alpha, 1.0)) continue;
        const PointList prefix(p.begin(), p.begin() + i + 1);
        const double dr = out.engine == DrEngine::Exact ? d_R_exact_small(prefix, d.points, cfg.exact).value
                                                        : d_R_approx(prefix, d.points, cfg.delta, cfg.thorough).value;
        ++out.prefixes_evaluated;
        if (dr < last_dr - 1e-9) out.prefix_monotone = false;
        last_dr = dr;
        best = std::max(best, std::min(alpha - len, dr));
    }
    out.value = best;
    return out;
}

DcResult d_C(const Cluster& c, const Cluster& d, double alpha, const DrConfig& cfg) {
    const double slack = 1e-9 * std::max(alpha, 1.0);
    if (c.dim != d.dim) throw Error("clusters of different dimension");
    if (farthest_norm(c.points) > alpha + slack || farthest_norm(d.points) > alpha + slack)
        throw Error("alpha is smaller than a cluster radius");
    DcResult out;
    out.forward = d_M(c, d, alpha, cfg);
    out.backward = d_M(d, c, alpha, cfg);
    out.value = std::max(out.forward.value, out.backward.value);
    out.engine = out.forward.engine == DrEngine::Approx || out.backward.engine == DrEngine::Approx ? DrEngine::Approx
                                                                                                 : DrEngine::Exact;
    out.factor_bound = engine_factor(out.engine, c.dim, cfg.delta);
    return out;
}

TransportPlan transport(const std::vector<long>& supply, const std::vector<long>& demand, const Eigen::MatrixXd& cost) {
    const int a = static_cast<int>(supply.size());
    const int b = static_cast<int>(demand.size());
    if (cost.rows() != a || cost.cols() != b) throw Error("cost matrix shape does not match the masses");
    long total = 0, total_d = 0;
    for (long s : supply) total += s;
    for (long s : demand) total_d += s;
    if (total != total_d || total <= 0) throw Error("masses must be positive with equal totals");

    // Nodes: 0 source, 1..a rows, a+1..a+b columns, a+b+1 sink.
    const int nodes = a + b + 2, src = 0, sink = a + b + 1;
    struct Edge {
        int to;
        long cap;
        double cost;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj(nodes);
    auto add = [&](int u, int v, long cap, double w) {
        adj[u].push_back(static_cast<int>(edges.size()));
        edges.push_back({v, cap, w});
        adj[v].push_back(static_cast<int>(edges.size()));
        edges.push_back({u, 0, -w});
    };
    for (int i = 0; i < a; ++i) add(src, 1 + i, supply[i], 0);
    std::vector<std::vector<int>> arc(a, std::vector<int>(b));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            arc[i][j] = static_cast<int>(edges.size());
            add(1 + i, 1 + a + j, total, cost(i, j));
        }
    for (int j = 0; j < b; ++j) add(1 + a + j, sink, demand[j], 0);

    std::vector<double> potential(nodes, 0.0);
    long sent = 0;
    while (sent < total) {
        std::vector<double> dist(nodes, kInf);
        std::vector<int> via(nodes, -1);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[src] = 0;
        pq.push({0, src});
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist[u]) continue;
            for (int e : adj[u]) {
                const Edge& ed = edges[e];
                if (ed.cap <= 0) continue;
                const double reduced = std::max(0.0, ed.cost + potential[u] - potential[ed.to]);
                if (dist[u] + reduced < dist[ed.to]) {
                    dist[ed.to] = dist[u] + reduced;
                    via[ed.to] = e;
                    pq.push({dist[ed.to], ed.to});
                }
            }
        }
        if (dist[sink] == kInf) throw Error("transport problem is infeasible");
        for (int v = 0; v < nodes; ++v)
            if (dist[v] < kInf) potential[v] += dist[v];
        long push = total - sent;
        for (int v = sink; v != src; v = edges[via[v] ^ 1].to) push = std::min(push, edges[via[v]].cap);
        for (int v = sink; v != src; v = edges[via[v] ^ 1].to) {
            edges[via[v]].cap -= push;
            edges[via[v] ^ 1].cap += push;
        }
        sent += push;
    }

    TransportPlan plan;
    plan.flows = Eigen::MatrixXd::Zero(a, b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            const long f = edges[arc[i][j] ^ 1].cap;
            plan.flows(i, j) = static_cast<double>(f) / static_cast<double>(total);
            plan.cost += plan.flows(i, j) * cost(i, j);
        }
    for (long s : supply) plan.row.push_back(static_cast<double>(s) / static_cast<double>(total));
    for (long s : demand) plan.col.push_back(static_cast<double>(s) / static_cast<double>(total));
    return plan;
}

EmdResult emd(const Isoset& a, const Isoset& b, const DrConfig& cfg) {
    if (a.dim != b.dim) throw Error("isosets of different dimension");
    if (std::abs(a.alpha - b.alpha) > 1e-9 * std::max(a.alpha, 1.0)) throw Error("isosets taken at different alpha");
    double wa = 0, wb = 0;
    for (const auto& c : a.classes) wa += c.weight();
    for (const auto& c : b.classes) wb += c.weight();
    if (std::abs(wa - 1) > 1e-9 || std::abs(wb - 1) > 1e-9) throw Error("isoset weights must sum to 1");

    EmdResult out;
    const int ra = static_cast<int>(a.classes.size());
    const int rb = static_cast<int>(b.classes.size());
    out.ground = Eigen::MatrixXd::Zero(ra, rb);
    bool approx = false;
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < rb; ++j) {
            const auto r = d_C(a.classes[i].representative, b.classes[j].representative, a.alpha, cfg);
            out.ground(i, j) = r.value;
            approx = approx || r.engine == DrEngine::Approx;
        }
    out.engine = approx ? DrEngine::Approx : DrEngine::Exact;
    out.factor_bound = engine_factor(out.engine, a.dim, cfg.delta);

    // Weights k/m become integers over the common denominator m_a * m_b.
    const long scale = static_cast<long>(a.motif_size) * b.motif_size;
    std::vector<long> supply, demand;
    for (const auto& c : a.classes) supply.push_back(c.weight_num * (scale / c.weight_den));
    for (const auto& c : b.classes) demand.push_back(c.weight_num * (scale / c.weight_den));
    out.plan = transport(supply, demand, out.ground);
    out.cost = out.plan.cost;
    return out;
}

double bottleneck_distance_common_cell(const PeriodicSet& s, const PeriodicSet& q, const Tolerances& tol) {
    if (s.dim() != q.dim()) throw Error("sets of different dimension");
    if (s.size() != q.size()) throw Error("motifs of different size");
    const auto& cell = s.cell();
    const double scale = cell.longest_edge();
    if ((cell.basis() - q.cell().basis()).cwiseAbs().maxCoeff() > 1e2 * tol.dist_rel * scale)
        throw Error("sets do not share a unit cell");
    const int m = s.size();
    const int n = s.dim();

    // Pair costs: shortest lattice translate of q_j - p_i.
    Eigen::MatrixXd cost(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec df = q.fractional()[j] - s.fractional()[i];
            for (int l = 0; l < n; ++l) df[l] -= std::round(df[l]);
            const double radius = cell.to_cartesian(df).norm();
            long reach[kMaxDim] = {0, 0, 0};
            for (int l = 0; l < n; ++l)
                reach[l] = static_cast<long>(std::ceil(radius * cell.inverse().row(l).norm())) + 1;
            double best = radius;
            for (long x = -reach[0]; x <= reach[0]; ++x)
                for (long y = (n > 1 ? -reach[1] : 0); y <= (n > 1 ? reach[1] : 0); ++y)
                    for (long z = (n > 2 ? -reach[2] : 0); z <= (n > 2 ? reach[2] : 0); ++z) {
                        const long k[kMaxDim] = {x, y, z};
                        Vec u(n);
                        for (int l = 0; l < n; ++l) u[l] = df[l] + static_cast<double>(k[l]);
                        best = std::min(best, cell.to_cartesian(u).norm());
                    }
            cost(i, j) = best;
        }

    std::vector<double> levels(cost.data(), cost.data() + cost.size());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    auto matchable = [&](double t) {
        std::vector<int> match(m, -1);
        for (int i = 0; i < m; ++i) {
            std::vector<char> seen(m, 0);
            std::function<bool(int)> augment = [&](int u) {
                for (int v = 0; v < m; ++v) {
                    if (cost(u, v) > t || seen[v]) continue;
                    seen[v] = 1;
                    if (match[v] < 0 || augment(match[v])) {
                        match[v] = u;
                        return true;
                    }
                }
                return false;
            };
            if (!augment(i)) return false;
        }
        return true;
    };
    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (matchable(levels[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return levels[lo];
}

}  // namespace perigeo
