#include "perigeo/periodic_set.hpp"

#include <cmath>
#include <limits>
#include <cstdlib>

namespace perigeo {

Tolerances Tolerances::from_env() {
    Tolerances tol;
    if (const char* env = std::getenv("PERIGEO_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0) tol.match_rel = v;
    }
    return tol;
}

UnitCell::UnitCell(Mat basis, const Tolerances& tol) : basis_(std::move(basis)) {
    const int n = static_cast<int>(basis_.cols());
    if (n < 1 || n > kMaxDim || basis_.rows() != n)
        throw DataError("dimension must be 1, 2 or 3 with a square basis");
    if (!basis_.allFinite()) throw DataError("basis contains non-finite values");

    for (int i = 0; i < n; ++i) longest_edge_ = std::max(longest_edge_, basis_.col(i).norm());
    volume_ = std::abs(basis_.determinant());
    if (!(volume_ > tol.degenerate * std::pow(longest_edge_, n))) throw DataError("degenerate cell");
    inverse_ = basis_.inverse();

    // Diagonals v1 +- v2 +- ... +- vn with the leading sign fixed.
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        Vec diag = basis_.col(0);
        for (int i = 1; i < n; ++i) diag += ((mask >> (i - 1)) & 1 ? -1.0 : 1.0) * basis_.col(i);
        diameter_ = std::max(diameter_, diag.norm());
    }
    min_height_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) min_height_ = std::min(min_height_, 1.0 / inverse_.row(i).norm());
}

UnitCell UnitCell::cubic(int dim, double edge) {
    return UnitCell(Mat::Identity(dim, dim) * edge);
}

Vec wrap_fractional(const Vec& f) {
    Vec w(f.size());
    for (int i = 0; i < f.size(); ++i) {
        double x = f[i] - std::floor(f[i]);
        if (x >= 1.0) x = 0.0;
        w[i] = x;
    }
    return w;
}

PeriodicSet::PeriodicSet(UnitCell cell, std::vector<Vec> fractional, std::vector<std::string> labels,
                         const Tolerances& tol)
    : cell_(std::move(cell)), frac_(std::move(fractional)), labels_(std::move(labels)) {
    const int n = cell_.dim();
    if (frac_.empty()) throw DataError("motif must contain at least one point");
    if (!labels_.empty() && labels_.size() != frac_.size())
        throw DataError("label count does not match motif size");
    cart_.reserve(frac_.size());
    for (std::size_t i = 0; i < frac_.size(); ++i) {
        const Vec& f = frac_[i];
        if (f.size() != n) throw DataError("motif point " + std::to_string(i) + " has wrong dimension");
        for (int j = 0; j < n; ++j)
            if (!(f[j] >= 0.0 && f[j] < 1.0))
                throw DataError("motif point " + std::to_string(i) + " has a fraction outside [0,1)");
        cart_.push_back(cell_.to_cartesian(f));
    }

    // Coincidence modulo the lattice: nearest translate lies in the 3^n box
    // around the wrapped difference once it is centred to [-1/2,1/2).
    const double eps = tol.coincide * cell_.diameter();
    const int boxes = static_cast<int>(std::pow(3, n));
    for (std::size_t i = 0; i < frac_.size(); ++i) {
        for (std::size_t j = i + 1; j < frac_.size(); ++j) {
            Vec df = frac_[j] - frac_[i];
            for (int a = 0; a < n; ++a) df[a] -= std::round(df[a]);
            for (int b = 0; b < boxes; ++b) {
                Vec shift(n);
                int code = b;
                for (int a = 0; a < n; ++a) {
                    shift[a] = code % 3 - 1;
                    code /= 3;
                }
                if (cell_.to_cartesian(df + shift).norm() <= eps)
                    throw DataError("motif points " + std::to_string(i) + " and " + std::to_string(j) +
                                    " coincide");
            }
        }
    }
}

PeriodicSet PeriodicSet::from_cartesian(UnitCell cell, const std::vector<Vec>& points,
                                        const Tolerances& tol) {
    std::vector<Vec> frac;
    frac.reserve(points.size());
    for (const Vec& p : points) frac.push_back(wrap_fractional(cell.to_fractional(p)));
    return PeriodicSet(std::move(cell), std::move(frac), {}, tol);
}

PeriodicSet PeriodicSet::line(double period, const std::vector<double>& points) {
    std::vector<Vec> frac;
    for (double p : points) {
        Vec f(1);
        f[0] = p / period;
        frac.push_back(wrap_fractional(f));
    }
    return PeriodicSet(UnitCell(Mat::Constant(1, 1, period)), std::move(frac));
}

}  // namespace perigeo
