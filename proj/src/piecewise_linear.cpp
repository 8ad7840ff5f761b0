#include "perigeo/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>

namespace perigeo {

namespace {
constexpr double kSameT = 1e-12;
}

PiecewiseLinear::PiecewiseLinear(std::vector<Corner> corners) {
    std::stable_sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) { return a.t < b.t; });
    for (const Corner& c : corners) {
        if (!corners_.empty() && std::abs(c.t - corners_.back().t) <= kSameT) continue;
        corners_.push_back(c);
    }
}

double PiecewiseLinear::operator()(double t) const {
    if (corners_.empty()) return 0.0;
    if (t <= corners_.front().t) return corners_.front().value;
    if (t >= corners_.back().t) return corners_.back().value;
    const auto hi = std::upper_bound(corners_.begin(), corners_.end(), t,
                                     [](double x, const Corner& c) { return x < c.t; });
    const auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    return lo->value + w * (hi->value - lo->value);
}

PiecewiseLinear PiecewiseLinear::sum(std::span<const PiecewiseLinear> terms, double prune_tol) {
    std::vector<double> ts;
    for (const auto& f : terms)
        for (const Corner& c : f.corners()) ts.push_back(c.t);
    std::sort(ts.begin(), ts.end());
    std::vector<Corner> out;
    for (double t : ts) {
        if (!out.empty() && t - out.back().t <= kSameT) continue;
        double v = 0;
        for (const auto& f : terms) v += f(t);
        out.push_back({t, v});
    }
    return PiecewiseLinear(std::move(out)).pruned(prune_tol);
}

PiecewiseLinear PiecewiseLinear::shifted(double dt) const {
    std::vector<Corner> out = corners_;
    for (Corner& c : out) c.t += dt;
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::scaled(double t_factor, double value_factor) const {
    std::vector<Corner> out = corners_;
    for (Corner& c : out) {
        c.t *= t_factor;
        c.value *= value_factor;
    }
    return PiecewiseLinear(std::move(out));
}

PiecewiseLinear PiecewiseLinear::pruned(double tol) const {
    std::vector<Corner> c = corners_;
    if (c.size() <= 1) return *this;
    std::vector<Corner> out;
    out.push_back(c.front());
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        const Corner& a = out.back();
        const Corner& b = c[i + 1];
        const double w = (c[i].t - a.t) / (b.t - a.t);
        if (std::abs(a.value + w * (b.value - a.value) - c[i].value) > tol) out.push_back(c[i]);
    }
    out.push_back(c.back());
    while (out.size() >= 2 && std::abs(out[out.size() - 1].value - out[out.size() - 2].value) <= tol) out.pop_back();
    while (out.size() >= 2 && std::abs(out[0].value - out[1].value) <= tol) out.erase(out.begin());
    PiecewiseLinear f;
    f.corners_ = std::move(out);
    return f;
}

}  // namespace perigeo
