#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace support {

PeriodicSet integer_line(double period, const std::vector<double>& points) {
    return PeriodicSet::line(period, points);
}

std::vector<double> random_fractions_1d(Rng& rng, int m, double min_gap) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        std::vector<double> f(m);
        for (double& x : f) x = u(rng);
        std::sort(f.begin(), f.end());
        bool ok = f.front() + 1.0 - f.back() >= min_gap;
        for (int i = 1; i < m; ++i) ok = ok && f[i] - f[i - 1] >= min_gap;
        if (ok) return f;
    }
}

PeriodicSet random_set(Rng& rng, int n, int m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> skew(-0.3, 0.3);
    std::uniform_real_distribution<double> scale(1.0, 1.6);
    Mat b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = i == j ? scale(rng) : skew(rng);
    const perigeo::UnitCell cell(b);
    const double floor = 0.25 * std::pow(cell.volume() / m, 1.0 / n);
    for (;;) {
        std::vector<Vec> frac;
        for (int tries = 0; tries < 1000 && static_cast<int>(frac.size()) < m; ++tries) {
            Vec f(n);
            for (int a = 0; a < n; ++a) f[a] = u(rng);
            bool far = true;
            for (const Vec& g : frac) {
                Vec d = f - g;
                for (int a = 0; a < n; ++a) d[a] -= std::round(d[a]);
                // Check a few translates; the cell is only mildly skewed.
                for (int k = 0; k < (n == 2 ? 9 : 27) && far; ++k) {
                    Vec t = d;
                    int code = k;
                    for (int a = 0; a < n; ++a) {
                        t[a] += code % 3 - 1;
                        code /= 3;
                    }
                    far = (b * t).norm() >= floor;
                }
                if (!far) break;
            }
            if (far) frac.push_back(f);
        }
        if (static_cast<int>(frac.size()) == m) return PeriodicSet(cell, frac);
    }
}

Mat random_orthogonal(Rng& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Mat q = Mat(qr.householderQ());
    if (std::uniform_int_distribution<int>(0, 1)(rng)) q.col(0) *= -1.0;
    return q;
}

Mat random_unimodular(Rng& rng, int n, int ops) {
    Mat u = Mat::Identity(n, n);
    if (n == 1) {
        u(0, 0) = std::uniform_int_distribution<int>(0, 1)(rng) ? 1.0 : -1.0;
        return u;
    }
    std::uniform_int_distribution<int> col(0, n - 1);
    for (int i = 0; i < ops; ++i) {
        const int a = col(rng);
        int b = col(rng);
        while (b == a) b = col(rng);
        const double c = std::uniform_int_distribution<int>(0, 1)(rng) ? 1.0 : -1.0;
        u.col(a) += c * u.col(b);
    }
    return u;
}

PeriodicSet transform(const PeriodicSet& s, const Mat& r, const Mat& u, const Vec& shift) {
    const perigeo::UnitCell cell(r * s.cell().basis() * u);
    const Mat u_inv = u.inverse();
    std::vector<Vec> frac;
    for (const Vec& f : s.fractional()) frac.push_back(perigeo::wrap_fractional(u_inv * (f + shift)));
    return PeriodicSet(cell, frac, s.labels());
}

PeriodicSet jitter(const PeriodicSet& s, Rng& rng, double eps, bool exact_length) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts;
    for (const Vec& p : s.cartesian()) {
        Vec dir(s.dim());
        for (int a = 0; a < s.dim(); ++a) dir[a] = g(rng);
        const double len = exact_length ? eps : eps * u(rng);
        pts.push_back(p + len * dir.normalized());
    }
    return PeriodicSet::from_cartesian(s.cell(), pts);
}

PeriodicSet square_supercell() {
    Mat b = 2.0 * Mat::Identity(2, 2);
    std::vector<Vec> frac;
    for (double x : {0.0, 0.5})
        for (double y : {0.0, 0.5}) {
            Vec f(2);
            f << x, y;
            frac.push_back(f);
        }
    return PeriodicSet(perigeo::UnitCell(b), frac);
}

std::vector<Vec> random_cloud(Rng& rng, int n, int size, double r) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> out{Vec::Zero(n)};
    while (static_cast<int>(out.size()) < size) {
        Vec v(n);
        for (int a = 0; a < n; ++a) v[a] = g(rng);
        out.push_back(v.normalized() * r * std::pow(u(rng), 1.0 / n));
    }
    return out;
}

}  // namespace support
