#pragma once

#include "perigeo/periodic_set.hpp"
#include "perigeo/piecewise_linear.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace perigeo {

/// psi_0 of a 1D set with the given gaps (fractions of the period, summing
/// to 1). Throws Error for non-positive gaps or a sum off by more than 1e-9.
PiecewiseLinear psi0_1d(const std::vector<double>& gaps);

/// Trapezoid with corners (s/2,0), ((d_prev+s)/2,h), ((s+d_next)/2,h),
/// ((d_prev+s+d_next)/2,0), h = min(d_prev,d_next).
PiecewiseLinear trapezoid(double d_prev, double s, double d_next);

/// Exact density functions of a 1D periodic set, normalized to period 1.
class DensityFingerprint1D {
public:
    explicit DensityFingerprint1D(const PeriodicSet& set);
    /// From gaps d_1..d_m directly (already normalized).
    static DensityFingerprint1D from_gaps(std::vector<double> gaps, double period = 1.0);

    int size() const { return static_cast<int>(gaps_.size()); }
    double period() const { return period_; }
    const std::vector<double>& gaps() const { return gaps_; }

    /// psi_k for any k >= 0, cached for k <= m.
    const PiecewiseLinear& psi(int k) const;

    /// psi_k for m/2 < k < m rebuilt from psi_{m-k} by reflection t -> 1/2 - t.
    PiecewiseLinear psi_by_symmetry(int k) const;

    /// Trapezoid triples (d_{i-1}, s, d_{i+k-1}) of psi_k, 1 <= k <= m.
    std::vector<std::array<double, 3>> triples(int k) const;

private:
    DensityFingerprint1D() = default;
    void build();

    double period_ = 1.0;
    std::vector<double> gaps_;
    std::vector<PiecewiseLinear> psi_;  // k = 0..m
    mutable std::map<int, PiecewiseLinear> shifted_;  // k > m, built lazily
};

/// psi_k of a 1D set (shorthand for DensityFingerprint1D(set).psi(k)).
PiecewiseLinear psi_k_1d(const DensityFingerprint1D& f, int k);

/// Equality of density fingerprints within tol. Equal m compares
/// k = 0..floor(m/2); different m compares k = 0..m_S+m_Q. Each pair is
/// evaluated at the union of both corner abscissas.
bool fingerprints_equal_1d(const DensityFingerprint1D& s, const DensityFingerprint1D& q, double tol = 1e-9);

/// First k where the fingerprints differ, or -1 when they agree up to k_max.
int first_differing_k(const DensityFingerprint1D& s, const DensityFingerprint1D& q, int k_max, double tol = 1e-9);

struct DensitySample {
    double t;
    double estimate;
    double stderr_;
};

/// Monte Carlo estimates of psi_k(t) for each t (in the set's own units):
/// fraction of jittered stratified points of the cell covered by exactly k
/// closed balls of radius t. The standard error is the binomial one with
/// p = (hits+0.5)/(samples+1), so it never collapses to zero.
std::vector<DensitySample> psi_k_sampled(const PeriodicSet& set, int k, const std::vector<double>& t_grid,
                                         int samples, std::uint64_t seed);

/// Same for several k at once; result[i] belongs to ks[i].
std::vector<std::vector<DensitySample>> psi_sampled(const PeriodicSet& set, const std::vector<int>& ks,
                                                    const std::vector<double>& t_grid, int samples,
                                                    std::uint64_t seed);

}  // namespace perigeo
