#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "prandtl/errors.hpp"
#include "prandtl/numerics.hpp"

using namespace prandtl;

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double m = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= m * a[c][k];
            b[r] -= m * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

// Composite Simpson with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("Thomas solve agrees with dense elimination") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const std::size_t n = 40;
    Tridiagonal sys(n);
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        sys.lower[k] = k > 0 ? d(rng) : 0.0;
        sys.upper[k] = k + 1 < n ? d(rng) : 0.0;
        sys.diag[k] = 3.0 + d(rng);
        sys.rhs[k] = d(rng);
        a[k][k] = sys.diag[k];
        if (k > 0) a[k][k - 1] = sys.lower[k];
        if (k + 1 < n) a[k][k + 1] = sys.upper[k];
    }
    std::vector<double> x(n);
    solve_tridiagonal(sys, x);
    const auto ref = dense_solve(a, sys.rhs);
    for (std::size_t k = 0; k < n; ++k) CHECK(x[k] == doctest::Approx(ref[k]).epsilon(1e-12));
    CHECK(tridiagonal_residual(sys, x) < 1e-13);
}

TEST_CASE("Thomas solve rejects a zero pivot") {
    Tridiagonal sys(3);
    sys.diag = {0.0, 1.0, 1.0};
    std::vector<double> x(3);
    CHECK_THROWS_AS(solve_tridiagonal(sys, x), NumericalError);
}

TEST_CASE("node generators") {
    const auto u = uniform_nodes(-1.0, 3.0, 5);
    CHECK(u == std::vector<double>{-1.0, 0.0, 1.0, 2.0, 3.0});

    const auto y = stretched_nodes(8.0, 33, 1.0);
    CHECK(y.front() == 0.0);
    CHECK(y.back() == doctest::Approx(8.0));
    for (std::size_t j = 1; j < y.size(); ++j) CHECK(y[j] > y[j - 1]);
    CHECK(y[16] == doctest::Approx(2.0));  // s = 1/2 with full packing lands at y_max/4

    const auto p = power_nodes(5, 2.0);
    CHECK(p[2] == doctest::Approx(0.25));
    CHECK(p.back() == 1.0);
}

TEST_CASE("trapezoid is second order on a non-uniform grid") {
    const auto err = [](std::size_t n) {
        const auto x = stretched_nodes(1.0, n, 0.5);
        std::vector<double> f(n);
        for (std::size_t k = 0; k < n; ++k) f[k] = std::exp(x[k]);
        return std::abs(trapezoid(x, f) - (std::exp(1.0) - 1.0));
    };
    const double r = err(65) / err(129);
    CHECK(r > 3.5);
    CHECK(r < 4.5);
}

TEST_CASE("Pchip reproduces lines and keeps monotone data monotone") {
    const Pchip line({0.0, 1.0, 3.0, 4.0}, {1.0, 3.0, 7.0, 9.0});
    CHECK(line(2.2) == doctest::Approx(5.4));

    const Pchip step({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 1.0, 1.0, 1.0});
    double prev = -1.0;
    for (int k = 0; k <= 400; ++k) {
        const double v = step(k * 0.01);
        CHECK(v >= prev - 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("exact cell integrals against Simpson") {
    const double a = 0.1, b = 0.35, wa = 0.8, wb = 0.2;
    const auto w = [&](double e) { return wa + (wb - wa) * (e - a) / (b - a); };
    const double ref_h = simpson([&](double e) { return 1.0 / std::hypot(w(e), e); }, a, b, 2000);
    CHECK(inverse_hypot_cell(a, b, wa, wb) == doctest::Approx(ref_h).epsilon(1e-10));
    const double ref_r = simpson([&](double e) { return 1.0 / w(e); }, a, b, 2000);
    CHECK(reciprocal_cell(a, b, wa, wb) == doctest::Approx(ref_r).epsilon(1e-10));

    // w ≡ 0 on [0, h]: ∫ dη/η diverges
    CHECK(std::isinf(inverse_hypot_cell(0.0, 0.1, 0.0, 0.0)));
    // w ≡ 1 from the wall: asinh(h)
    CHECK(inverse_hypot_cell(0.0, 0.5, 1.0, 1.0) == doctest::Approx(std::asinh(0.5)).epsilon(1e-13));
}

TEST_CASE("one-sided and non-uniform derivatives are exact on quadratics") {
    const auto q = [](double x) { return 2.0 - 3.0 * x + 5.0 * x * x; };
    const auto c = one_sided_first_derivative(0.1, 0.25);
    CHECK(c.c0 * q(0.0) + c.c1 * q(0.1) + c.c2 * q(0.25) == doctest::Approx(-3.0).epsilon(1e-12));

    const std::vector<double> x{0.0, 0.1, 0.3, 0.35, 0.7, 1.0};
    std::vector<double> f;
    for (const double v : x) f.push_back(q(v));
    const auto d = derivative_nonuniform(x, f);
    for (std::size_t k = 0; k < x.size(); ++k) CHECK(d[k] == doctest::Approx(-3.0 + 10.0 * x[k]).epsilon(1e-11));
}

TEST_CASE("Field2D columns are contiguous") {
    Field2D f(3, 4);
    f(1, 2) = 5.0;
    CHECK(f.column(1)[2] == 5.0);
    CHECK(f.values()[1 * 4 + 2] == 5.0);
}
