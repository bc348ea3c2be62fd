#include "prandtl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prandtl/errors.hpp"

namespace prandtl {

void solve_tridiagonal(const Tridiagonal& sys, std::span<double> x) {
    const std::size_t n = sys.size();
    if (x.size() != n || n == 0) {
        throw std::invalid_argument("solve_tridiagonal: size mismatch");
    }
    std::vector<double> c(n);
    double pivot = sys.diag[0];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
        throw NumericalError("tridiagonal solve: zero pivot in row 0");
    }
    c[0] = sys.upper[0] / pivot;
    x[0] = sys.rhs[0] / pivot;
    for (std::size_t k = 1; k < n; ++k) {
        pivot = sys.diag[k] - sys.lower[k] * c[k - 1];
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
            throw NumericalError("tridiagonal solve: zero pivot in row " + std::to_string(k));
        }
        c[k] = (k + 1 < n) ? sys.upper[k] / pivot : 0.0;
        x[k] = (sys.rhs[k] - sys.lower[k] * x[k - 1]) / pivot;
    }
    for (std::size_t k = n - 1; k-- > 0;) {
        x[k] -= c[k] * x[k + 1];
    }
}

double tridiagonal_residual(const Tridiagonal& sys, std::span<const double> x) {
    const std::size_t n = sys.size();
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double r = sys.diag[k] * x[k] - sys.rhs[k];
        if (k > 0) r += sys.lower[k] * x[k - 1];
        if (k + 1 < n) r += sys.upper[k] * x[k + 1];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

std::vector<double> uniform_nodes(double a, double b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("uniform_nodes: need at least two nodes");
    std::vector<double> x(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) x[k] = a + h * static_cast<double>(k);
    x.back() = b;
    return x;
}

std::vector<double> stretched_nodes(double y_max, std::size_t n, double stretch) {
    if (n < 2) throw std::invalid_argument("stretched_nodes: need at least two nodes");
    if (!(stretch > 0.0 && stretch <= 1.0)) {
        throw std::invalid_argument("stretched_nodes: stretch must lie in (0, 1]");
    }
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n - 1);
        y[k] = y_max * s * s / (stretch + (1.0 - stretch) * s);
    }
    y.front() = 0.0;
    y.back() = y_max;
    return y;
}

std::vector<double> power_nodes(std::size_t n, double power) {
    if (n < 2) throw std::invalid_argument("power_nodes: need at least two nodes");
    if (!(power >= 1.0)) throw std::invalid_argument("power_nodes: power must be >= 1");
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n - 1);
        x[k] = power == 1.0 ? s : std::pow(s, power);
    }
    x.front() = 0.0;
    x.back() = 1.0;
    return x;
}

double trapezoid(std::span<const double> x, std::span<const double> f) {
    double sum = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        sum += 0.5 * (x[k] - x[k - 1]) * (f[k] + f[k - 1]);
    }
    return sum;
}

namespace {

// End slope of the three-point formula, limited so the interpolant stays
// monotone (same rule as SciPy's PchipInterpolator).
double pchip_end_slope(double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (std::signbit(d) != std::signbit(m0)) {
        d = 0.0;
    } else if (std::signbit(m0) != std::signbit(m1) && std::abs(d) > std::abs(3.0 * m0)) {
        d = 3.0 * m0;
    }
    return d;
}

}  // namespace

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("Pchip: need >= 2 matching samples");
    for (std::size_t k = 1; k < n; ++k) {
        if (!(x_[k] > x_[k - 1])) throw std::invalid_argument("Pchip: abscissae must increase");
    }
    d_.assign(n, 0.0);
    std::vector<double> h(n - 1), m(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x_[k + 1] - x_[k];
        m[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    if (n == 2) {
        d_[0] = d_[1] = m[0];
        return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (m[k - 1] * m[k] <= 0.0) {
            d_[k] = 0.0;
        } else {
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            d_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
        }
    }
    d_[0] = pchip_end_slope(h[0], h[1], m[0], m[1]);
    d_[n - 1] = pchip_end_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

double Pchip::operator()(double t) const {
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[k + 1] - x_[k];
    const double s = (t - x_[k]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
}

double inverse_hypot_cell(double a, double b, double wa, double wb) {
    const double q = (wb - wa) / (b - a);
    const double p = wa - q * a;  // w(η) = p + qη
    const double A = 1.0 + q * q;
    const double sqrtA = std::sqrt(A);
    if (p == 0.0) {
        if (a <= 0.0) return std::numeric_limits<double>::infinity();
        return std::log(b / a) / sqrtA;
    }
    // w² + η² = A·[(η + m)² + h²]
    const double m = p * q / A;
    const double h = std::abs(p) / A;
    return (std::asinh((b + m) / h) - std::asinh((a + m) / h)) / sqrtA;
}

double reciprocal_cell(double a, double b, double wa, double wb) {
    const double len = b - a;
    const double r = wb / wa;
    const double rm1 = r - 1.0;
    if (std::abs(rm1) < 1e-8) {
        // log(r)/(r−1) ≈ 1 − (r−1)/2
        return len / wa * (1.0 - 0.5 * rm1);
    }
    return len / wa * std::log(r) / rm1;
}

OneSided3 one_sided_first_derivative(double h1, double h2) {
    const double c1 = h2 / (h1 * (h2 - h1));
    const double c2 = -h1 / (h2 * (h2 - h1));
    return {-(c1 + c2), c1, c2};
}

std::vector<double> derivative_nonuniform(std::span<const double> x, std::span<const double> f) {
    const std::size_t n = x.size();
    if (n < 3 || f.size() != n) throw std::invalid_argument("derivative_nonuniform: need >= 3 samples");
    std::vector<double> d(n);
    {
        const auto c = one_sided_first_derivative(x[1] - x[0], x[2] - x[0]);
        d[0] = c.c0 * f[0] + c.c1 * f[1] + c.c2 * f[2];
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double hm = x[j] - x[j - 1];
        const double hp = x[j + 1] - x[j];
        d[j] = -hp / (hm * (hm + hp)) * f[j - 1] + (hp - hm) / (hm * hp) * f[j] +
               hm / (hp * (hm + hp)) * f[j + 1];
    }
    {
        const auto c = one_sided_first_derivative(x[n - 1] - x[n - 2], x[n - 1] - x[n - 3]);
        d[n - 1] = -(c.c0 * f[n - 1] + c.c1 * f[n - 2] + c.c2 * f[n - 3]);
    }
    return d;
}

}  // namespace prandtl
