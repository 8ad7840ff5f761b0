#include "perigeo/density.hpp"

#include "perigeo/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace perigeo {

PiecewiseLinear psi0_1d(const std::vector<double>& gaps) {
    if (gaps.empty()) throw Error("psi0 needs at least one gap");
    for (double d : gaps)
        if (!(d > 0)) throw Error("gaps must be positive");
    const double total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw Error("gaps must sum to 1");

    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const int m = static_cast<int>(sorted.size());
    std::vector<Corner> corners{{0.0, 1.0}};
    double prefix = 0;
    for (int i = 0; i < m; ++i) {
        // 1-based index i+1: value 1 - sum_{j<i} d_[j] - (m-i) d_[i]
        corners.push_back({sorted[i] / 2, 1.0 - prefix - (m - i) * sorted[i]});
        prefix += sorted[i];
    }
    corners.back().value = 0.0;  // exact zero instead of rounding noise
    return PiecewiseLinear(std::move(corners));
}

PiecewiseLinear trapezoid(double d_prev, double s, double d_next) {
    const double h = std::min(d_prev, d_next);
    return PiecewiseLinear({{s / 2, 0.0},
                            {(d_prev + s) / 2, h},
                            {(s + d_next) / 2, h},
                            {(d_prev + s + d_next) / 2, 0.0}});
}

DensityFingerprint1D::DensityFingerprint1D(const PeriodicSet& set) {
    if (set.dim() != 1) throw Error("density fingerprint needs a 1D set");
    period_ = std::abs(set.cell().basis()(0, 0));
    std::vector<double> f;
    for (const Vec& p : set.fractional()) f.push_back(p[0]);
    std::sort(f.begin(), f.end());
    const int m = static_cast<int>(f.size());
    for (int i = 0; i + 1 < m; ++i) gaps_.push_back(f[i + 1] - f[i]);
    gaps_.push_back(f[0] + 1.0 - f[m - 1]);
    build();
}

DensityFingerprint1D DensityFingerprint1D::from_gaps(std::vector<double> gaps, double period) {
    DensityFingerprint1D out;
    out.period_ = period;
    out.gaps_ = std::move(gaps);
    out.build();
    return out;
}

std::vector<std::array<double, 3>> DensityFingerprint1D::triples(int k) const {
    const int m = size();
    if (k < 1 || k > m) throw Error("trapezoid triples exist for 1 <= k <= m");
    std::vector<std::array<double, 3>> out;
    for (int i = 0; i < m; ++i) {
        double s = 0;
        for (int j = i; j <= i + k - 2; ++j) s += gaps_[j % m];
        out.push_back({gaps_[(i - 1 + m) % m], s, gaps_[(i + k - 1) % m]});
    }
    return out;
}

void DensityFingerprint1D::build() {
    const int m = size();
    psi_.clear();
    psi_.push_back(psi0_1d(gaps_));
    for (int k = 1; k <= m; ++k) {
        std::vector<PiecewiseLinear> terms;
        for (const auto& [a, s, b] : triples(k)) terms.push_back(trapezoid(a, s, b));
        psi_.push_back(PiecewiseLinear::sum(terms));
    }
}

const PiecewiseLinear& DensityFingerprint1D::psi(int k) const {
    if (k < 0) throw Error("k must be non-negative");
    const int m = size();
    if (k <= m) return psi_[k];
    auto it = shifted_.find(k);
    if (it == shifted_.end()) it = shifted_.emplace(k, psi(k - m).shifted(0.5)).first;
    return it->second;
}

PiecewiseLinear DensityFingerprint1D::psi_by_symmetry(int k) const {
    const int m = size();
    if (k <= 0 || k >= m) throw Error("symmetry applies to 0 < k < m");
    const PiecewiseLinear& g = psi_[m - k];
    std::vector<Corner> corners{{0.5, g(0.0)}, {0.0, g(0.5)}};
    for (const Corner& c : g.corners())
        if (c.t > 0 && c.t < 0.5) corners.push_back({0.5 - c.t, c.value});
    return PiecewiseLinear(std::move(corners)).pruned();
}

PiecewiseLinear psi_k_1d(const DensityFingerprint1D& f, int k) { return f.psi(k); }

namespace {

bool same_function(const PiecewiseLinear& a, const PiecewiseLinear& b, double tol) {
    for (const auto* f : {&a, &b})
        for (const Corner& c : f->corners())
            if (std::abs(a(c.t) - b(c.t)) > tol) return false;
    return true;
}

}  // namespace

int first_differing_k(const DensityFingerprint1D& s, const DensityFingerprint1D& q, int k_max, double tol) {
    for (int k = 0; k <= k_max; ++k)
        if (!same_function(s.psi(k), q.psi(k), tol)) return k;
    return -1;
}

bool fingerprints_equal_1d(const DensityFingerprint1D& s, const DensityFingerprint1D& q, double tol) {
    const int k_max = s.size() == q.size() ? s.size() / 2 : s.size() + q.size();
    return first_differing_k(s, q, k_max, tol) < 0;
}

std::vector<std::vector<DensitySample>> psi_sampled(const PeriodicSet& set, const std::vector<int>& ks,
                                                    const std::vector<double>& t_grid, int samples,
                                                    std::uint64_t seed) {
    if (samples < 1) throw Error("samples must be at least 1");
    for (int k : ks)
        if (k < 0) throw Error("k must be non-negative");
    const int n = set.dim();
    const double t_max = t_grid.empty() ? 0.0 : *std::max_element(t_grid.begin(), t_grid.end());

    // g^n jittered strata, the remainder drawn uniformly over the cell.
    int g = static_cast<int>(std::floor(std::pow(static_cast<double>(samples), 1.0 / n) + 1e-9));
    g = std::max(g, 1);
    long strata = 1;
    for (int i = 0; i < n; ++i) strata *= g;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<long>> hits(ks.size(), std::vector<long>(t_grid.size(), 0));

    for (long s = 0; s < samples; ++s) {
        Vec u(n);
        long code = s;
        for (int a = 0; a < n; ++a) {
            if (s < strata) {
                u[a] = (static_cast<double>(code % g) + unit(rng)) / g;
                code /= g;
            } else {
                u[a] = unit(rng);
            }
        }
        const auto d = distances_within(set, set.cell().to_cartesian(u), t_max);
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const long mult = std::upper_bound(d.begin(), d.end(), t_grid[j]) - d.begin();
            for (std::size_t i = 0; i < ks.size(); ++i)
                if (mult == ks[i]) ++hits[i][j];
        }
    }

    std::vector<std::vector<DensitySample>> out(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const double x = static_cast<double>(hits[i][j]);
            const double p = (x + 0.5) / (samples + 1.0);
            out[i].push_back({t_grid[j], x / samples, std::sqrt(p * (1 - p) / samples)});
        }
    }
    return out;
}

std::vector<DensitySample> psi_k_sampled(const PeriodicSet& set, int k, const std::vector<double>& t_grid,
                                         int samples, std::uint64_t seed) {
    return psi_sampled(set, {k}, t_grid, samples, seed).front();
}

}  // namespace perigeo
