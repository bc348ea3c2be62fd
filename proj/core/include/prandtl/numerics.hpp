#pragma once

// Small numerical building blocks shared by the solvers and diagnostics.

#include <cstddef>
#include <span>
#include <vector>

namespace prandtl {

/// Dense 2-D array stored column-major in the second index: for a fixed first
/// index `i` the values over `j` are contiguous.  Both solvers march columns
/// (fixed x or ξ) so a column is a plain span.
class Field2D {
public:
    Field2D() = default;
    Field2D(std::size_t n0, std::size_t n1, double fill = 0.0)
        : n0_(n0), n1_(n1), data_(n0 * n1, fill) {}

    std::size_t n0() const noexcept { return n0_; }
    std::size_t n1() const noexcept { return n1_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n1_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n1_ + j]; }

    std::span<double> column(std::size_t i) noexcept { return {data_.data() + i * n1_, n1_}; }
    std::span<const double> column(std::size_t i) const noexcept {
        return {data_.data() + i * n1_, n1_};
    }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    bool operator==(const Field2D&) const = default;

private:
    std::size_t n0_ = 0;
    std::size_t n1_ = 0;
    std::vector<double> data_;
};

/// Tridiagonal system  lower[k]·x[k-1] + diag[k]·x[k] + upper[k]·x[k+1] = rhs[k].
/// lower[0] and upper[n-1] are ignored.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}
    std::size_t size() const noexcept { return diag.size(); }
};

/// Thomas algorithm.  Throws NumericalError on a zero (or non-finite) pivot.
void solve_tridiagonal(const Tridiagonal& sys, std::span<double> x);

/// max_k |(A x − b)_k|
double tridiagonal_residual(const Tridiagonal& sys, std::span<const double> x);

/// Uniform nodes on [a, b] inclusive.
std::vector<double> uniform_nodes(double a, double b, std::size_t n);

/// y_j = y_max·s²/(stretch + (1 − stretch)·s) with s uniform on [0, 1].
/// stretch = 1 packs half the nodes below y_max/4; stretch → 0 tends to uniform.
std::vector<double> stretched_nodes(double y_max, std::size_t n, double stretch);

/// η_j = s_j^power on [0, 1]; power = 1 is the uniform grid.
std::vector<double> power_nodes(std::size_t n, double power);

/// Composite trapezoid on arbitrary (sorted) nodes.
double trapezoid(std::span<const double> x, std::span<const double> f);

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Carlson slopes).
/// Preserves monotonicity of the data and never overshoots between nodes.
class Pchip {
public:
    Pchip(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_;
};

/// ∫_{a}^{b} dη / sqrt(w(η)² + η²) with w linear between (a, wa) and (b, wb).
/// Exact for piecewise-linear w; returns +inf if the integrand is singular
/// inside the cell (w = η = 0 at the left end).
double inverse_hypot_cell(double a, double b, double wa, double wb);

/// ∫_{a}^{b} dη / w(η) with w linear and positive on the cell.
double reciprocal_cell(double a, double b, double wa, double wb);

/// Coefficients (c0, c1, c2) of the one-sided three-point first derivative at
/// x = 0 from samples at 0, h1, h2 (h1 < h2).  Exact on quadratics.
struct OneSided3 {
    double c0, c1, c2;
};
OneSided3 one_sided_first_derivative(double h1, double h2);

/// First derivative of tabulated data on a non-uniform grid: second-order
/// centred interior, second-order one-sided at both ends.
std::vector<double> derivative_nonuniform(std::span<const double> x, std::span<const double> f);

}  // namespace prandtl
