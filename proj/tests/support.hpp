#pragma once

// Fixtures and random generators shared by the test binaries.

#include "perigeo/periodic_set.hpp"
#include "perigeo/set_io.hpp"

#include <random>
#include <string>
#include <vector>

namespace support {

using perigeo::Mat;
using perigeo::PeriodicSet;
using perigeo::Vec;
using Rng = std::mt19937_64;

inline std::string data_path(const std::string& name) { return std::string(PERIGEO_DATA_DIR) + "/" + name; }
inline PeriodicSet load(const std::string& name) { return perigeo::parse_set_file(data_path(name)); }

/// 1D set given by integer points of a period (S15 style).
PeriodicSet integer_line(double period, const std::vector<double>& points);

/// m points of [0,1) with all gaps at least min_gap.
std::vector<double> random_fractions_1d(Rng& rng, int m, double min_gap = 1e-3);

/// Random mildly skewed cell and a motif of m points with a separation floor.
PeriodicSet random_set(Rng& rng, int n, int m);

Mat random_orthogonal(Rng& rng, int n);
/// Product of a few elementary integer column operations.
Mat random_unimodular(Rng& rng, int n, int ops = 3);

/// Image of S under the rotation r, described in the reduced-or-not basis
/// r * B * u, with the motif translated by `shift` (fractional units).
PeriodicSet transform(const PeriodicSet& s, const Mat& r, const Mat& u, const Vec& shift);

/// Each motif point moved by eps (or a random length up to eps) in a random direction.
PeriodicSet jitter(const PeriodicSet& s, Rng& rng, double eps, bool exact_length);

/// Square lattice with unit spacing described by a 2x2 supercell (4 points).
PeriodicSet square_supercell();

/// Random finite point set containing the origin, within radius r.
std::vector<Vec> random_cloud(Rng& rng, int n, int size, double r);

}  // namespace support
