#pragma once

#include "perigeo/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perigeo {

/// Parallelepiped spanned by n basis vectors (stored as matrix columns).
class UnitCell {
public:
    /// Throws DataError for n outside {1,2,3} or a degenerate basis.
    explicit UnitCell(Mat basis, const Tolerances& tol = {});

    static UnitCell cubic(int dim, double edge = 1.0);

    int dim() const { return static_cast<int>(basis_.cols()); }
    const Mat& basis() const { return basis_; }
    const Mat& inverse() const { return inverse_; }
    Vec vector(int i) const { return basis_.col(i); }

    double volume() const { return volume_; }
    /// Longest edge length.
    double longest_edge() const { return longest_edge_; }
    /// Length of the longest diagonal, sup over pairs of cell points.
    double diameter() const { return diameter_; }

    Vec to_cartesian(const Vec& frac) const { return basis_ * frac; }
    Vec to_fractional(const Vec& cart) const { return inverse_ * cart; }

    /// Smallest |translation| possible from a cell at Chebyshev lattice
    /// distance 1: the minimum over axes of the inradius-type height
    /// Vol / area of the opposite face.
    double min_height() const { return min_height_; }

private:
    Mat basis_;
    Mat inverse_;
    double volume_ = 0;
    double longest_edge_ = 0;
    double diameter_ = 0;
    double min_height_ = 0;
};

/// A motif of m points with fractional coordinates in [0,1) replicated by the
/// lattice of a unit cell.
class PeriodicSet {
public:
    /// Throws DataError when the motif is empty, a fraction is outside [0,1),
    /// or two motif points coincide.
    PeriodicSet(UnitCell cell, std::vector<Vec> fractional, std::vector<std::string> labels = {},
                const Tolerances& tol = {});

    /// Builds a set from Cartesian motif points, wrapping them into the cell.
    static PeriodicSet from_cartesian(UnitCell cell, const std::vector<Vec>& points,
                                      const Tolerances& tol = {});

    /// One-dimensional set {points} + period*Z.
    static PeriodicSet line(double period, const std::vector<double>& points);

    int dim() const { return cell_.dim(); }
    int size() const { return static_cast<int>(frac_.size()); }
    const UnitCell& cell() const { return cell_; }
    const std::vector<Vec>& fractional() const { return frac_; }
    const std::vector<Vec>& cartesian() const { return cart_; }
    const Vec& point(int i) const { return cart_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    UnitCell cell_;
    std::vector<Vec> frac_;
    std::vector<Vec> cart_;
    std::vector<std::string> labels_;
};

/// Wraps a fractional coordinate vector into [0,1)^n.
Vec wrap_fractional(const Vec& f);

}  // namespace perigeo
