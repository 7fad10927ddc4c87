#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "substantial/mlf.hpp"
#include "substantial/quadrature.hpp"
#include "substantial/special_functions.hpp"

namespace substantial {

// Brute-force evaluation of the substantial fractional derivative straight
// from its convolution definition.  Validation use only: targets 1e-8-ish
// accuracy, not machine precision and not speed.
struct OracleRequest {
    std::function<double(double)> f;
    double order;                       // in (0,2) excluding 1
    double sigma;
    double x;
    double tol = 1e-10;                 // absolute target, >= 1e-12
    double singularity_exponent = 0.0;  // f(t) ~ t^this near t = 0
};

struct OracleResult {
    double value;
    double error_estimate;
    bool converged;
};

namespace detail {

// Gauss rule on [0,1] for the weight u^b, b > -1: Jacobi-matrix eigenvalues
// of the (0, b) Jacobi recurrence on [-1,1], weights from the Christoffel
// function, then the affine map to [0,1].
struct UnitJacobiRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline UnitJacobiRule unit_jacobi_rule(int n_points, double b) {
    if (n_points < 1)
        throw std::domain_error("unit_jacobi_rule: need at least one point");
    if (!(b > -1.0))
        throw std::domain_error("unit_jacobi_rule: weight exponent must exceed -1");

    // Monic recurrence coefficients for weight (1+t)^b on [-1,1].
    std::vector<double> alpha(static_cast<std::size_t>(n_points));
    std::vector<double> beta_sq(static_cast<std::size_t>(n_points));  // beta_sq[0] = total mass
    beta_sq[0] = std::exp((b + 1.0) * std::log(2.0)) / (b + 1.0);
    alpha[0] = b / (b + 2.0);
    for (int k = 1; k < n_points; ++k) {
        const double s = 2.0 * k + b;
        alpha[static_cast<std::size_t>(k)] = b * b / (s * (s + 2.0));
        beta_sq[static_cast<std::size_t>(k)] =
            4.0 * k * k * (k + b) * (k + b) / (s * s * (s + 1.0) * (s - 1.0));
    }

    std::vector<double> diag(alpha.begin(), alpha.end());
    std::vector<double> off(static_cast<std::size_t>(n_points), 0.0);
    for (int k = 1; k < n_points; ++k)
        off[static_cast<std::size_t>(k - 1)] = std::sqrt(beta_sq[static_cast<std::size_t>(k)]);
    off.resize(static_cast<std::size_t>(n_points) - 1);
    std::vector<double> t = tridiagonal_eigenvalues(diag, off);

    UnitJacobiRule rule;
    rule.nodes.resize(t.size());
    rule.weights.resize(t.size());
    const double map_scale = std::exp(-(b + 1.0) * std::log(2.0));
    for (std::size_t i = 0; i < t.size(); ++i) {
        // Christoffel weight: 1 / sum of squared orthonormal polynomials.
        double p_prev = 0.0;
        double p_cur = 1.0 / std::sqrt(beta_sq[0]);
        double sum = p_cur * p_cur;
        for (int k = 0; k + 1 < n_points; ++k) {
            const double root_next = std::sqrt(beta_sq[static_cast<std::size_t>(k + 1)]);
            const double root_cur = (k == 0) ? 0.0 : std::sqrt(beta_sq[static_cast<std::size_t>(k)]);
            const double p_next =
                ((t[i] - alpha[static_cast<std::size_t>(k)]) * p_cur - root_cur * p_prev) / root_next;
            p_prev = p_cur;
            p_cur = p_next;
            sum += p_cur * p_cur;
        }
        rule.nodes[i] = 0.5 * (t[i] + 1.0);
        rule.weights[i] = map_scale / sum;
    }
    return rule;
}

}  // namespace detail

// D_s^order f(x) per the convolution definition: with m the smallest integer
// exceeding the order,
//   G(y) = integral_0^y (y-tau)^{m-order-1} e^{sigma tau} f(tau) dtau,
//   D_s^order f(x) = e^{-sigma x} G^(m)(x) / Gamma(m-order).
// The convolution splits at tau = y/2; each half maps to [0,1] with its
// algebraic endpoint factor ((y-tau)^{m-order-1} on the right, tau^lambda on
// the left) absorbed into a weighted Gauss rule.  G^(m) uses 5-point central
// differences with two Richardson levels.
inline OracleResult substantial_derivative(const OracleRequest& req) {
    if (!(req.x > 0.0))
        throw std::domain_error("substantial_derivative: x must be positive");
    if (!(req.tol >= 1e-12))
        throw std::domain_error("substantial_derivative: tol must be at least 1e-12");
    if (!(req.order > 0.0 && req.order < 2.0) || req.order == 1.0)
        throw std::domain_error("substantial_derivative: order must lie in (0,2) excluding 1");
    if (!(req.sigma > 0.0))
        throw std::domain_error("substantial_derivative: sigma must be positive");
    if (!(req.singularity_exponent > -1.0))
        throw std::domain_error("substantial_derivative: endpoint exponent not integrable");

    const int m = req.order < 1.0 ? 1 : 2;
    const double edge = m - req.order - 1.0;  // in (-1, 0)
    const double lam = req.singularity_exponent;

    const auto evaluate = [&](int n_points, double h) {
        const detail::UnitJacobiRule left = detail::unit_jacobi_rule(n_points, lam);
        const detail::UnitJacobiRule right = detail::unit_jacobi_rule(n_points, edge);

        const auto G = [&](double y) {
            const double half = 0.5 * y;
            // tau in (0, y/2]: tau = half*u, f(tau) = tau^lam * smooth
            double left_sum = 0.0;
            for (std::size_t i = 0; i < left.nodes.size(); ++i) {
                const double tau = half * left.nodes[i];
                const double smooth = std::pow(y - tau, edge) * std::exp(req.sigma * tau) *
                                      (req.f(tau) / std::pow(tau, lam));
                left_sum += left.weights[i] * smooth;
            }
            left_sum *= std::pow(half, 1.0 + lam);
            // tau in [y/2, y): tau = y - half*u, kernel = (half*u)^edge
            double right_sum = 0.0;
            for (std::size_t i = 0; i < right.nodes.size(); ++i) {
                const double tau = y - half * right.nodes[i];
                right_sum += right.weights[i] * std::exp(req.sigma * tau) * req.f(tau);
            }
            right_sum *= std::pow(half, 1.0 + edge);
            return left_sum + right_sum;
        };

        const auto stencil = [&](double step) {
            if (m == 1)
                return (-G(req.x + 2.0 * step) + 8.0 * G(req.x + step) - 8.0 * G(req.x - step) +
                        G(req.x - 2.0 * step)) /
                       (12.0 * step);
            return (-G(req.x + 2.0 * step) + 16.0 * G(req.x + step) - 30.0 * G(req.x) +
                    16.0 * G(req.x - step) - G(req.x - 2.0 * step)) /
                   (12.0 * step * step);
        };

        const double d0 = stencil(h);
        const double d1 = stencil(0.5 * h);
        const double d2 = stencil(0.25 * h);
        const double r0 = (16.0 * d1 - d0) / 15.0;
        const double r1 = (16.0 * d2 - d1) / 15.0;
        const double r2 = (64.0 * r1 - r0) / 63.0;
        struct Level {
            double value;
            double estimate;
        };
        return Level{r2, std::fabs(r2 - r1)};
    };

    const double scale = std::exp(-req.sigma * req.x) / std::exp(log_gamma(m - req.order));
    double h = std::max(1e-3, 1e-3 * req.x);
    h = std::min(h, req.x / 4.0);

    auto level = evaluate(48, h);
    double value = scale * level.value;
    double estimate = scale * level.estimate;
    bool converged = estimate <= std::max(req.tol, 1e-8 * std::fabs(value));
    if (!converged) {
        const auto refined = evaluate(80, 0.5 * h);
        const double refined_value = scale * refined.value;
        estimate = std::max(scale * refined.estimate, std::fabs(refined_value - value));
        value = refined_value;
        converged = estimate <= std::max(req.tol, 1e-8 * std::fabs(value));
    }
    return {value, estimate, converged};
}

// Disagreement between the oracle and the closed-form derivative of basis
// function n over the sample points xs, as a relative-max-norm error:
// max |oracle - closed| over the batch, divided by max |closed|.  Pointwise
// ratios are useless here; the shifted-index polynomial has roots, and the
// sample grids can land on one exactly.
inline double verify_identity(int n, const BasisParams& p, EquationKind kind,
                              std::span<const double> xs) {
    const DerivativeTerm term = substantial_derivative_term(n, p, kind);
    const double order = kind == EquationKind::advection ? 1.0 - p.nu : 2.0 - p.nu;
    double worst_abs = 0.0;
    double scale = 0.0;
    for (const double x : xs) {
        if (!(x > 0.0))
            throw std::domain_error("verify_identity: sample points must be positive");
        OracleRequest req;
        req.f = [&](double t) { return mlf_eval(n, p.lambda, p.sigma, t); };
        req.order = order;
        req.sigma = p.sigma;
        req.x = x;
        req.tol = 1e-10;
        req.singularity_exponent = p.lambda;
        const OracleResult result = substantial_derivative(req);
        const double closed = term.coeff * mlf_eval(n, term.new_lambda, p.sigma, x);
        worst_abs = std::max(worst_abs, std::fabs(result.value - closed));
        scale = std::max(scale, std::fabs(closed));
    }
    return worst_abs / (scale + 1e-300);
}

}  // namespace substantial
