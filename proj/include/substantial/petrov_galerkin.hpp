#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "substantial/laguerre.hpp"
#include "substantial/mlf.hpp"
#include "substantial/quadrature.hpp"
#include "substantial/special_functions.hpp"

namespace substantial {

// Right-hand side plus optional exact solution for error reporting.
struct RhsFunction {
    std::function<double(double)> f;
    std::function<double(double)> exact;  // empty when no closed form is known
};

// Coefficients of the scaled trial expansion
//   u_N(x) = sum_k coeffs[k] (k+1)^{-scaling_exponent} x^lambda e^{-sigma x} L_k^lambda(2 sigma x).
struct SpectralSolution {
    BasisParams params;
    EquationKind kind;
    std::vector<double> coeffs;
    double scaling_exponent;
};

namespace detail {

inline double trial_scaling_exponent(const BasisParams& p, EquationKind kind) {
    return kind == EquationKind::advection ? 0.5 * (p.lambda - p.nu + 1.0)
                                           : 0.5 * (p.lambda - p.nu + 2.0);
}

inline double test_scaling_exponent(const BasisParams& p, EquationKind kind) {
    return kind == EquationKind::advection ? 0.5 * (p.lambda + p.nu - 1.0)
                                           : 0.5 * (p.lambda + p.nu - 2.0);
}

inline double test_index(const BasisParams& p, EquationKind kind) {
    return kind == EquationKind::advection ? p.lambda + p.nu - 1.0 : p.lambda + p.nu - 2.0;
}

}  // namespace detail

// Diagonal of the scaled Petrov-Galerkin matrix.  The trial/test scalings
// cancel the Gamma-ratio growth, so entries stay positive and O(1) in n.
inline std::vector<double> assemble_diagonal(int n_modes, const BasisParams& p,
                                             EquationKind kind) {
    if (n_modes < 0)
        throw std::domain_error("assemble_diagonal: negative mode count");
    validate(p);
    const double exponent =
        kind == EquationKind::advection ? p.lambda + p.nu : p.lambda + p.nu - 1.0;
    const double log_prefactor = -exponent * std::log(2.0 * p.sigma);
    std::vector<double> diag(static_cast<std::size_t>(n_modes) + 1);
    for (int n = 0; n <= n_modes; ++n) {
        const double log_entry = log_prefactor + log_gamma(p.lambda + n + 1.0) -
                                 log_gamma(n + 1.0) - p.lambda * std::log(n + 1.0);
        diag[static_cast<std::size_t>(n)] = std::exp(log_entry);
    }
    return diag;
}

// Scaled right-hand side.  The moment integral against the test functions is
// taken with weight x^{lambda+nu-1} e^{-2 sigma x} for both kinds; the
// regularized factor g_f = f e^{sigma x} x^{1-lambda-nu} is then polynomial
// whenever f has the matched structure, and the diffusion test polynomial
// (extended index lambda+nu-2) is simply evaluated at the nodes.
inline std::vector<double> assemble_rhs(int n_modes, const BasisParams& p, EquationKind kind,
                                        const RhsFunction& rhs, int quad_order) {
    if (n_modes < 0)
        throw std::domain_error("assemble_rhs: negative mode count");
    if (quad_order < n_modes + 1)
        throw std::domain_error("assemble_rhs: quad_order must be at least N+1");
    validate(p);
    if (!rhs.f)
        throw std::invalid_argument("assemble_rhs: missing f");

    const QuadratureRule rule = gauss_rule(quad_order - 1, p.lambda + p.nu - 1.0, p.sigma);
    const double alpha_test = detail::test_index(p, kind);
    const double s_test = detail::test_scaling_exponent(p, kind);

    std::vector<double> f_vec(static_cast<std::size_t>(n_modes) + 1, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double g = rhs.f(x) * std::exp(p.sigma * x) *
                         std::pow(x, 1.0 - p.lambda - p.nu);
        if (!std::isfinite(g))
            throw std::runtime_error("assemble_rhs: non-finite integrand sample");
        const std::vector<double> test_values =
            laguerre_eval_batch(n_modes, alpha_test, 2.0 * p.sigma * x);
        const double wg = rule.weights[i] * g;
        for (int n = 0; n <= n_modes; ++n)
            f_vec[static_cast<std::size_t>(n)] += wg * test_values[static_cast<std::size_t>(n)];
    }
    for (int n = 0; n <= n_modes; ++n)
        f_vec[static_cast<std::size_t>(n)] *= std::pow(n + 1.0, -s_test);
    return f_vec;
}

// Diagonal solve: one division per mode.
inline SpectralSolution solve(int n_modes, const BasisParams& p, EquationKind kind,
                              const RhsFunction& rhs, int quad_order) {
    const std::vector<double> diag = assemble_diagonal(n_modes, p, kind);
    std::vector<double> coeffs = assemble_rhs(n_modes, p, kind, rhs, quad_order);
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        coeffs[n] /= diag[n];
    return {p, kind, std::move(coeffs), detail::trial_scaling_exponent(p, kind)};
}

inline SpectralSolution solve(int n_modes, const BasisParams& p, EquationKind kind,
                              const RhsFunction& rhs) {
    return solve(n_modes, p, kind, rhs, std::max(2 * n_modes, n_modes + 1));
}

// Zero initial condition is built into the basis; a nonzero u(0) = u0 is
// handled by writing u = w + u0 e^{-sigma x} and solving for w.  Both the
// forcing and the exact-solution metadata shift accordingly.
inline RhsFunction lift_initial_condition(double u0, const BasisParams& p,
                                          const RhsFunction& rhs) {
    validate(p);
    if (!rhs.f)
        throw std::invalid_argument("lift_initial_condition: missing f");
    if (u0 == 0.0)
        return rhs;
    const double nu = p.nu;
    const double sigma = p.sigma;
    const double inv_gamma_nu = 1.0 / std::exp(log_gamma(nu));
    RhsFunction lifted;
    const auto f = rhs.f;
    lifted.f = [f, u0, nu, sigma, inv_gamma_nu](double x) {
        return f(x) - u0 * inv_gamma_nu * std::pow(x, nu - 1.0) * std::exp(-sigma * x);
    };
    if (rhs.exact) {
        const auto exact = rhs.exact;
        lifted.exact = [exact, u0, sigma](double x) {
            return exact(x) - u0 * std::exp(-sigma * x);
        };
    }
    return lifted;
}

// u_N at each sample point.
inline std::vector<double> evaluate(const SpectralSolution& sol, std::span<const double> xs) {
    const int n_modes = static_cast<int>(sol.coeffs.size()) - 1;
    std::vector<double> values;
    values.reserve(xs.size());
    for (const double x : xs) {
        if (x < 0.0 || (x == 0.0 && sol.params.lambda < 0.0))
            throw std::domain_error("evaluate: point outside basis domain");
        if (x == 0.0 && sol.params.lambda > 0.0) {
            values.push_back(0.0);
            continue;
        }
        const std::vector<double> lag =
            laguerre_eval_batch(n_modes, sol.params.lambda, 2.0 * sol.params.sigma * x);
        double acc = 0.0;
        for (int n = 0; n <= n_modes; ++n)
            acc += sol.coeffs[static_cast<std::size_t>(n)] *
                   std::pow(n + 1.0, -sol.scaling_exponent) * lag[static_cast<std::size_t>(n)];
        values.push_back(acc * std::pow(x, sol.params.lambda) *
                         std::exp(-sol.params.sigma * x));
    }
    return values;
}

// The substantial derivative of u_N, via the termwise closed form: each mode
// maps to the same-index basis function at a shifted parameter.
inline std::vector<double> evaluate_substantial_derivative(const SpectralSolution& sol,
                                                           std::span<const double> xs) {
    const int n_modes = static_cast<int>(sol.coeffs.size()) - 1;
    std::vector<double> values;
    values.reserve(xs.size());
    for (const double x : xs) {
        if (!(x > 0.0))
            throw std::domain_error(
                "evaluate_substantial_derivative: points must be positive (shifted index "
                "is negative)");
        double acc = 0.0;
        double new_lambda = 0.0;
        std::vector<double> lag;
        for (int n = 0; n <= n_modes; ++n) {
            const DerivativeTerm term = substantial_derivative_term(n, sol.params, sol.kind);
            if (n == 0) {
                new_lambda = term.new_lambda;
                lag = laguerre_eval_batch(n_modes, new_lambda, 2.0 * sol.params.sigma * x);
            }
            acc += sol.coeffs[static_cast<std::size_t>(n)] *
                   std::pow(n + 1.0, -sol.scaling_exponent) * term.coeff *
                   lag[static_cast<std::size_t>(n)];
        }
        values.push_back(acc * std::pow(x, new_lambda) * std::exp(-sol.params.sigma * x));
    }
    return values;
}

}  // namespace substantial
