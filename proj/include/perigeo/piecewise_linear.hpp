#pragma once

#include <span>
#include <vector>

namespace perigeo {

struct Corner {
    double t;
    double value;
    bool operator==(const Corner&) const = default;
};

/// Continuous piecewise linear function given by its corners; constant
/// before the first and after the last corner.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    /// Sorts corners by t and collapses corners with equal t.
    explicit PiecewiseLinear(std::vector<Corner> corners);

    static PiecewiseLinear constant(double value) { return PiecewiseLinear({{0.0, value}}); }

    /// Pointwise sum, re-emitted on the merged abscissas with collinear
    /// corners pruned.
    static PiecewiseLinear sum(std::span<const PiecewiseLinear> terms, double prune_tol = 1e-12);

    double operator()(double t) const;

    const std::vector<Corner>& corners() const { return corners_; }
    bool empty() const { return corners_.empty(); }

    PiecewiseLinear shifted(double dt) const;
    PiecewiseLinear scaled(double t_factor, double value_factor) const;

    /// Drops corners that lie on the segment joining their neighbours and
    /// redundant leading/trailing constant pieces.
    PiecewiseLinear pruned(double tol = 1e-12) const;

private:
    std::vector<Corner> corners_;
};

}  // namespace perigeo
