// Acceptance checks, one line per criterion:
//   acceptance [--criterion N]
// Exit status is 0 when every selected criterion passes.

#include "oracles.hpp"
#include "support.hpp"

#include "perigeo/amd.hpp"
#include "perigeo/density.hpp"
#include "perigeo/isoset.hpp"
#include "perigeo/metric.hpp"
#include "perigeo/radii.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>

using namespace perigeo;

namespace {

// Pinned tolerances.
constexpr double kAmdTol = 1e-9;
constexpr double kCornerTol = 1e-12;
constexpr double kSymmetryTol = 1e-9;
constexpr double kSigmas = 4.0;
constexpr double kDcTol = 1e-6;
constexpr double kApproxSlack = 1e-6;
constexpr double kOracleSlack = 1e-6;  // rotation-grid oracle refinement accuracy
constexpr double kOracleStep3d = 0.05;  // Euler grid before pattern search
constexpr double kMetricTol = 2e-6;    // 2 * match_rel at alpha = 1
constexpr double kLpTol = 1e-9;
constexpr double kBoundSlack = 1e-9;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void amd_tables(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        const char* file;
        int k;
        std::vector<double> want;
    };
    const std::vector<Case> cases{
        {"S15.txt", 4, {11.0 / 9, 19.0 / 9, 25.0 / 9, 34.0 / 9}},
        {"Q15.txt", 4, {11.0 / 9, 19.0 / 9, 26.0 / 9, 33.0 / 9}},
        {"S32.txt", 3, {20.0 / 16, 31.0 / 16, 50.0 / 16}},
        {"Q32.txt", 3, {20.0 / 16, 32.0 / 16, 51.0 / 16}},
    };
    for (const auto& c : cases) {
        const auto a = amd(support::load(c.file), c.k);
        for (int i = 0; i < c.k; ++i)
            o.require(std::abs(a.values[i] - c.want[i]) <= kAmdTol,
                      std::string(c.file) + " AMD_" + std::to_string(i + 1) + " = " + fmt(a.values[i]));
    }
    const double secs = seconds_since(t0);
    o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
    o.detail << "runtime " << fmt(secs) << " s";
}

void check_corners(Outcome& o, const std::string& name, const PiecewiseLinear& f, const std::vector<Corner>& want) {
    const auto& got = f.corners();
    o.require(got.size() == want.size(), name + " corner count " + std::to_string(got.size()));
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i)
        o.require(std::abs(got[i].t - want[i].t) <= kCornerTol && std::abs(got[i].value - want[i].value) <= kCornerTol,
                  name + " corner " + std::to_string(i));
}

void density_corners(Outcome& o) {
    const DensityFingerprint1D f(PeriodicSet::line(1.0, {0, 1.0 / 3, 0.5}));
    check_corners(o, "psi0", f.psi(0), {{0, 1}, {1.0 / 12, 0.5}, {1.0 / 6, 1.0 / 6}, {0.25, 0}});
    check_corners(o, "eta_R", trapezoid(1.0 / 3, 0, 0.5), {{0, 0}, {1.0 / 6, 1.0 / 3}, {0.25, 1.0 / 3}, {5.0 / 12, 0}});
    check_corners(o, "eta_GB", trapezoid(1.0 / 3, 1.0 / 6, 0.5),
                  {{1.0 / 12, 0}, {0.25, 1.0 / 3}, {1.0 / 3, 1.0 / 3}, {0.5, 0}});
    o.detail << "psi0, eta_R, eta_GB corner lists compared";
}

void fingerprints(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const DensityFingerprint1D s15(support::load("S15.txt")), q15(support::load("Q15.txt"));
    const DensityFingerprint1D s32(support::load("S32.txt")), q32(support::load("Q32.txt"));
    o.require(fingerprints_equal_1d(s15, q15), "S15 and Q15 fingerprints differ");
    for (int k = 0; k <= 4; ++k) {
        std::vector<double> ts;
        for (const auto& c : s15.psi(k).corners()) ts.push_back(c.t);
        for (const auto& c : q15.psi(k).corners()) ts.push_back(c.t);
        for (double t : ts)
            o.require(std::abs(s15.psi(k)(t) - q15.psi(k)(t)) <= kSymmetryTol, "psi_" + std::to_string(k) + " differs");
    }

    // psi_4 trapezoids not shared by the two sets, in period-15 units.
    auto canonical = [](const DensityFingerprint1D& f) {
        std::vector<std::array<double, 3>> out;
        for (auto tr : f.triples(4)) {
            for (double& x : tr) x = std::round(15 * x);
            if (tr[0] > tr[2]) std::swap(tr[0], tr[2]);
            out.push_back(tr);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto ts = canonical(s15), tq = canonical(q15);
    std::vector<std::array<double, 3>> only_s, only_q;
    std::set_difference(ts.begin(), ts.end(), tq.begin(), tq.end(), std::back_inserter(only_s));
    std::set_difference(tq.begin(), tq.end(), ts.begin(), ts.end(), std::back_inserter(only_q));
    o.require(only_s.size() == 6 && only_q.size() == 6, "expected six unshared triples each");
    const std::vector<std::pair<double, double>> checkpoints{{2.5, 2}, {3, 5}, {3.5, 6}, {4, 4}, {4.5, 1}};
    for (const auto* group : {&only_s, &only_q}) {
        std::vector<PiecewiseLinear> terms;
        for (const auto& tr : *group) terms.push_back(trapezoid(tr[0], tr[1], tr[2]));
        const auto eta = PiecewiseLinear::sum(terms);
        for (const auto& [t, v] : checkpoints)
            o.require(std::abs(eta(t) - v) <= kSymmetryTol, "eta(" + fmt(t) + ") = " + fmt(eta(t)));
    }
    o.require(!fingerprints_equal_1d(s32, q32), "S32 and Q32 fingerprints agree");
    const int k32 = first_differing_k(s32, q32, 16);
    const double secs = seconds_since(t0);
    o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
    o.detail << "S32/Q32 first differ at k=" << k32 << "; runtime " << fmt(secs) << " s";
}

DensityFingerprint1D random_fingerprint(support::Rng& rng, int m) {
    const auto f = support::random_fractions_1d(rng, m, 0.005);
    std::vector<double> gaps;
    for (int i = 0; i < m; ++i) gaps.push_back(i + 1 < m ? f[i + 1] - f[i] : 1.0 + f[0] - f[i]);
    double total = 0;
    for (double g : gaps) total += g;
    for (double& g : gaps) g /= total;
    return DensityFingerprint1D::from_gaps(gaps);
}

void density_symmetry(Outcome& o) {
    support::Rng rng(2024);
    double worst = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const int m = 1 + trial % 12;
        const auto f = random_fingerprint(rng, m);
        for (int i = 0; i < 100; ++i) {
            const double t = 0.5 * i / 99.0;
            for (int k = 0; k <= m; ++k) {
                worst = std::max(worst, std::abs(f.psi(m - k)(0.5 - t) - f.psi(k)(t)));
                worst = std::max(worst, std::abs(f.psi(k + m)(t + 0.5) - f.psi(k)(t)));
            }
        }
    }
    o.require(worst <= kSymmetryTol, "max deviation " + fmt(worst));
    o.detail << "max deviation " << fmt(worst);
}

void sampled_vs_exact(Outcome& o) {
    support::Rng rng(7);
    std::vector<double> grid;
    for (int i = 1; i <= 10; ++i) grid.push_back(0.05 * i);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 2 + trial % 5;
        const auto f = random_fingerprint(rng, m);
        std::vector<double> pts{0.0};
        for (int i = 0; i + 1 < m; ++i) pts.push_back(pts.back() + f.gaps()[i]);
        const auto set = PeriodicSet::line(1.0, pts);
        const std::vector<int> ks{0, 1, 2, 3};
        const auto est = psi_sampled(set, ks, grid, 100000, 1000 + trial);
        for (std::size_t a = 0; a < ks.size(); ++a)
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double z = std::abs(est[a][i].estimate - f.psi(ks[a])(grid[i])) / est[a][i].stderr_;
                worst = std::max(worst, z);
                o.require(z <= kSigmas, "set " + std::to_string(trial) + " k=" + std::to_string(ks[a]) +
                                            " t=" + fmt(grid[i]) + " off by " + fmt(z) + " sigma");
            }
    }
    o.detail << "largest deviation " << fmt(worst) << " standard errors";
}

void isoset_facts(Outcome& o) {
    const auto s4 = support::load("S4.txt");
    const auto sr = minimum_stable_radius(s4);
    o.require(std::abs(sr.beta - 0.5) <= 1e-12, "beta(S4) = " + fmt(sr.beta));
    o.require(std::abs(sr.alpha - 0.75) <= 1e-12, "alpha(S4) = " + fmt(sr.alpha));
    const auto tree = isotree(s4, 0.75);
    const auto splits = tree.split_radii();
    o.require(splits.size() == 2 && std::abs(splits[0] - 1.0 / 12) <= 1e-12 && std::abs(splits[1] - 1.0 / 6) <= 1e-12,
              "S4 split radii");
    std::vector<std::size_t> sizes;
    for (const auto& lv : tree.levels)
        if (sizes.empty() || sizes.back() != lv.blocks.size()) sizes.push_back(lv.blocks.size());
    o.require(sizes == std::vector<std::size_t>{1, 2, 4}, "S4 partition sizes");
    for (const char* f : {"square.txt", "hexagonal.txt"}) {
        const auto s = support::load(f);
        const double dmin = 2 * packing_covering_radii(s).packing;
        const double a = minimum_stable_radius(s).alpha;
        o.require(std::abs(dmin - 1) <= 1e-12 && std::abs(a - 2) <= 1e-9, std::string(f) + " alpha = " + fmt(a));
    }
    const auto s2 = support::load("S2.txt");
    const auto iso = isoset(s2, minimum_stable_radius(s2).alpha);
    std::vector<std::pair<long, long>> w;
    for (const auto& c : iso.classes) w.push_back({c.weight_num, c.weight_den});
    std::sort(w.begin(), w.end());
    o.require(w == std::vector<std::pair<long, long>>{{1, 5}, {4, 5}}, "S2 weights");
    o.detail << "S4 beta=" << fmt(sr.beta) << " alpha=" << fmt(sr.alpha) << "; S2 classes " << iso.classes.size();
}

void completeness(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    support::Rng rng(99);
    int equal_ok = 0, jitter_ok = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const int m = 2 + trial % 5;  // a jittered one-point motif is only translated
        const auto s = support::random_set(rng, n, m);
        Vec shift(n);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int a = 0; a < n; ++a) shift[a] = u(rng);
        const auto t = support::transform(s, support::random_orthogonal(rng, n), support::random_unimodular(rng, n), shift);
        const double r = packing_covering_radii(s).packing;
        const auto j = support::jitter(s, rng, 0.05 * r, true);
        const bool same = isosets_equal(s, t);
        const bool diff = !isosets_equal(s, j);
        equal_ok += same;
        jitter_ok += diff;
        o.require(same, "trial " + std::to_string(trial) + " transformed copy not recognised");
        o.require(diff, "trial " + std::to_string(trial) + " jittered copy reported isometric");
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime " + fmt(secs) + " s");
    o.detail << equal_ok << "/20 transformed, " << jitter_ok << "/20 jittered; runtime " << fmt(secs) << " s";
}

void cluster_distance_value(Outcome& o) {
    const auto sq = alpha_cluster(support::load("square.txt"), 0, 2);
    const auto hx = alpha_cluster(support::load("hexagonal.txt"), 0, 2);
    DrConfig cfg;
    cfg.engine = DrEngine::Exact;
    const auto r = d_C(sq, hx, 2, cfg);
    const double want = std::sqrt(2 - std::sqrt(3.0));
    o.require(std::abs(r.value - want) <= kDcTol, "d_C = " + fmt(r.value) + ", expected " + fmt(want));
    o.detail << "d_C = " << fmt(r.value) << " (engine " << engine_name(r.engine) << ")";
}

struct Jitter {
    double eps;
    PeriodicSet q;
};

std::vector<Jitter> jitter_suite() {
    support::Rng rng(314);
    const auto s = support::square_supercell();
    const double eps_values[] = {0.01, 0.03, 0.05};
    std::vector<Jitter> out;
    for (int trial = 0; trial < 50; ++trial) {
        const double eps = eps_values[trial % 3];
        out.push_back({eps, support::jitter(s, rng, eps, false)});
    }
    return out;
}

void continuity(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = support::square_supercell();
    double worst = 0;
    int holds = 0;
    const auto suite = jitter_suite();
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& [eps, q] = suite[i];
        const double alpha = std::max(easy_stable_radius(s), easy_stable_radius(q));
        const auto e = emd(isoset(s, alpha), isoset(q, alpha));
        worst = std::max(worst, e.cost / eps);
        const bool ok = e.cost <= 2 * eps + kBoundSlack;
        holds += ok;
        o.require(ok, "trial " + std::to_string(i) + " EMD " + fmt(e.cost) + " > 2*" + fmt(eps));
    }
    o.detail << holds << "/50 within bound, max EMD/eps " << fmt(worst) << "; runtime " << fmt(seconds_since(t0))
             << " s";
}

void approximation_bound(Outcome& o) {
    support::Rng rng(555);
    const double delta = 0.1;
    double worst_ratio = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = trial < 100 ? 2 : 3;
        const int size = n == 2 ? 8 : 6;
        const auto c = support::random_cloud(rng, n, size, 1.0);
        const auto d = support::random_cloud(rng, n, size, 1.0);
        const double approx = d_R_approx(c, d, delta).value;
        const double ref = oracle::rotation_grid_dr(c, d, n == 2 ? 1e-4 : kOracleStep3d);
        const double factor = 2 * (n - 1) * (1 + delta);
        worst_ratio = std::max(worst_ratio, approx / ref);
        o.require(approx >= ref - kOracleSlack, "trial " + std::to_string(trial) + " approx " + fmt(approx) +
                                                    " below oracle " + fmt(ref));
        o.require(approx <= factor * ref + kApproxSlack, "trial " + std::to_string(trial) + " ratio " + fmt(approx / ref));
    }
    o.detail << "largest approx/oracle ratio " << fmt(worst_ratio);
}

void metric_axioms(Outcome& o) {
    support::Rng rng(808);
    DrConfig cfg;
    cfg.engine = DrEngine::Exact;
    double worst_sym = 0, worst_tri = -1e9, worst_id = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + (trial % 5 == 4);
        std::vector<Cluster> cl;
        for (int i = 0; i < 3; ++i) cl.push_back(make_cluster(support::random_cloud(rng, n, 6, 1.0), 1.0));
        auto dc = [&](int i, int j) { return d_C(cl[i], cl[j], 1.0, cfg).value; };
        const double ab = dc(0, 1), ba = dc(1, 0), bc = dc(1, 2), ac = dc(0, 2);
        worst_id = std::max(worst_id, dc(0, 0));
        worst_sym = std::max(worst_sym, std::abs(ab - ba));
        worst_tri = std::max(worst_tri, ac - ab - bc);
    }
    o.require(worst_id <= kMetricTol, "identity " + fmt(worst_id));
    o.require(worst_sym <= kMetricTol, "symmetry " + fmt(worst_sym));
    o.require(worst_tri <= kMetricTol, "triangle excess " + fmt(worst_tri));

    // Transport on small instances, including a real isoset pair.
    double worst_lp = 0;
    std::uniform_int_distribution<long> mass(1, 5);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int a = 1 + trial % 4, b = 1 + (trial / 4) % 4;
        std::vector<long> supply(a), demand(b, 1);
        long total = 0;
        for (long& x : supply) total += (x = mass(rng));
        if (total < b) continue;
        for (long t = b; t < total; ++t) demand[std::uniform_int_distribution<int>(0, b - 1)(rng)] += 1;
        Eigen::MatrixXd cost(a, b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) cost(i, j) = u(rng);
        std::vector<double> w, v;
        for (long x : supply) w.push_back(static_cast<double>(x) / total);
        for (long x : demand) v.push_back(static_cast<double>(x) / total);
        worst_lp = std::max(worst_lp, std::abs(transport(supply, demand, cost).cost - oracle::lp_vertex_transport(w, v, cost)));
    }
    const auto s4 = support::load("S4.txt");
    const auto moved = support::jitter(s4, rng, 0.004, false);
    const double alpha = std::max(easy_stable_radius(s4), easy_stable_radius(moved));
    const auto ia = isoset(s4, alpha), ib = isoset(moved, alpha);
    const auto e = emd(ia, ib, cfg);
    std::vector<double> w, v;
    for (const auto& c : ia.classes) w.push_back(c.weight());
    for (const auto& c : ib.classes) v.push_back(c.weight());
    worst_lp = std::max(worst_lp, std::abs(e.cost - oracle::lp_vertex_transport(w, v, e.ground)));
    o.require(worst_lp <= kLpTol, "transport deviation " + fmt(worst_lp));
    o.detail << "identity " << fmt(worst_id) << ", symmetry " << fmt(worst_sym) << ", triangle excess "
             << fmt(worst_tri) << ", EMD vs LP " << fmt(worst_lp) << " (" << ia.classes.size() << "x"
             << ib.classes.size() << " isoset pair)";
}

void amd_continuity(Outcome& o) {
    const auto s = support::square_supercell();
    const auto as = amd(s, 50);
    double worst = 0;
    for (const auto& [eps, q] : jitter_suite()) {
        const double db = bottleneck_distance_common_cell(s, q);
        const auto aq = amd(q, 50);
        for (int k = 0; k < 50; ++k) {
            const double diff = std::abs(as.values[k] - aq.values[k]);
            worst = std::max(worst, db > 0 ? diff / db : 0.0);
            o.require(diff <= 2 * db + kBoundSlack, "AMD_" + std::to_string(k + 1) + " moved " + fmt(diff));
        }
        o.require(db <= eps + kBoundSlack, "bottleneck " + fmt(db) + " above eps");
    }
    o.detail << "max |dAMD|/d_B " << fmt(worst);
}

struct Criterion {
    const char* title;
    std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"AMD tables", amd_tables},
        {"density corners", density_corners},
        {"fingerprint indistinguishability", fingerprints},
        {"density symmetry and periodicity", density_symmetry},
        {"sampled vs exact densities", sampled_vs_exact},
        {"isoset facts", isoset_facts},
        {"completeness behaviour", completeness},
        {"square/hexagonal cluster distance", cluster_distance_value},
        {"EMD continuity under jitter", continuity},
        {"d_R approximation bound", approximation_bound},
        {"metric axioms and EMD optimality", metric_axioms},
        {"AMD continuity", amd_continuity},
    };
    return all;
}

bool run(int index) {
    const auto& c = criteria()[index - 1];
    Outcome o;
    try {
        c.run(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s  %s: %s\n", index, o.pass ? "PASS" : "FAIL", c.title, o.detail.str().c_str());
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            const int c = std::atoi(argv[++i]);
            if (c < 1 || c > static_cast<int>(criteria().size())) {
                std::fprintf(stderr, "criterion must be 1..%zu\n", criteria().size());
                return 1;
            }
            selected.push_back(c);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 1;
        }
    }
    if (selected.empty())
        for (int c = 1; c <= static_cast<int>(criteria().size()); ++c) selected.push_back(c);
    bool all = true;
    for (int c : selected) all = run(c) && all;
    return all ? 0 : 1;
}
