#include "prandtl/crocco_transform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "prandtl/errors.hpp"

namespace prandtl {

CroccoGrid::CroccoGrid(double length, std::size_t n_xi, std::size_t n_eta, double eta_power)
    : length_(length), d_xi_(0.0), eta_power_(eta_power) {
    if (n_xi < 2 || n_eta < 3) throw std::invalid_argument("CroccoGrid: need n_xi >= 2 and n_eta >= 3");
    if (!(length > 0.0)) throw std::invalid_argument("CroccoGrid: length must be > 0");
    xi_ = uniform_nodes(0.0, length, n_xi);
    eta_ = power_nodes(n_eta, eta_power);
    d_xi_ = length / static_cast<double>(n_xi - 1);
}

std::vector<double> crocco_forward(std::span<const double> y, std::span<const double> u,
                                   std::span<const double> dudy, double ue, std::span<const double> eta_nodes,
                                   const ForwardOptions& opts) {
    const std::size_t n = y.size();
    if (n < 2 || u.size() != n || dudy.size() != n) {
        throw std::invalid_argument("crocco_forward: profile arrays must match and hold >= 2 samples");
    }
    if (!(ue > 0.0)) throw DataError("crocco_forward: U_e must be > 0");
    if (u[0] != 0.0) throw DataError("crocco_forward: profile must satisfy u(0) = 0");

    std::vector<double> eta_s;
    std::vector<double> w_s;
    eta_s.reserve(n);
    w_s.reserve(n);
    const double sat = 1.0 - opts.truncation_tol;
    for (std::size_t j = 0; j < n; ++j) {
        const double e = u[j] / ue;
        if (j > 0 && !(e > eta_s.back())) {
            if (eta_s.back() >= sat && e >= eta_s.back() - 1e-14) break;  // saturated tail
            throw MonotonicityError(describe_node("crocco_forward: u not increasing", 0, static_cast<int>(j), u[j]));
        }
        if (!(dudy[j] > 0.0)) {
            if (eta_s.size() > 1 && eta_s.back() >= sat) break;
            throw MonotonicityError(describe_node("crocco_forward: du/dy <= 0", 0, static_cast<int>(j), dudy[j]));
        }
        eta_s.push_back(e);
        w_s.push_back(dudy[j] / ue);
    }
    if (eta_s.back() < sat) {
        throw TruncationError("crocco_forward: u(y_max)/U_e = " + std::to_string(eta_s.back()) +
                              " is below 1 - tolerance");
    }
    const double eta_top = eta_s.back();
    const double w_top = w_s.back();
    const Pchip interp(eta_s, w_s);

    std::vector<double> w(eta_nodes.size());
    for (std::size_t k = 0; k < eta_nodes.size(); ++k) {
        const double e = eta_nodes[k];
        if (e >= 1.0) {
            w[k] = 0.0;
        } else if (e <= eta_top) {
            w[k] = interp(e);
        } else {
            w[k] = w_top * (1.0 - e) / (1.0 - eta_top);
        }
    }
    return w;
}

InverseProfile crocco_inverse(std::span<const double> eta, std::span<const double> w, double ue) {
    const std::size_t n = eta.size();
    if (n < 2 || w.size() != n) throw std::invalid_argument("crocco_inverse: arrays must match");
    std::size_t last = n;  // one past the last node with η < 1
    while (last > 0 && eta[last - 1] >= 1.0) --last;
    if (last == 0) throw InvertibilityError("crocco_inverse: no node below eta = 1");
    for (std::size_t j = 0; j < last; ++j) {
        if (!(w[j] > 0.0)) {
            throw InvertibilityError(describe_node("crocco_inverse: w <= 0 below eta = 1", 0, static_cast<int>(j), w[j]));
        }
    }
    InverseProfile p;
    p.eta_cut = eta[last - 1];
    p.eta.assign(eta.begin(), eta.begin() + static_cast<std::ptrdiff_t>(last));
    p.y.assign(last, 0.0);
    p.u.assign(last, 0.0);
    p.y[0] = eta[0] == 0.0 ? 0.0 : reciprocal_cell(0.0, eta[0], w[0], w[0]);
    p.u[0] = eta[0] * ue;
    for (std::size_t j = 1; j < last; ++j) {
        p.y[j] = p.y[j - 1] + reciprocal_cell(eta[j - 1], eta[j], w[j - 1], w[j]);
        p.u[j] = eta[j] * ue;
    }
    return p;
}

CroccoCoefficients crocco_coefficients(const OuterFlowModel& model, double t, double xi, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("crocco_coefficients: eta outside [0, 1]");
    const double ux = model.velocity_dx(t, xi);
    const double ut_over_u = model.velocity_dt(t, xi) / model.velocity(t, xi);
    return {(1.0 - eta * eta) * ux + (1.0 - eta) * ut_over_u, eta * ux + ut_over_u};
}

double crocco_coefficient_A_factored(const OuterFlowModel& model, double t, double xi, double eta) {
    const double ux = model.velocity_dx(t, xi);
    const double ut_over_u = model.velocity_dt(t, xi) / model.velocity(t, xi);
    return (1.0 - eta) * ((1.0 + eta) * ux + ut_over_u);
}

double auxiliary_W(double w, double eta) noexcept {
    const double r = std::hypot(w, eta);
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / r;
}

}  // namespace prandtl
