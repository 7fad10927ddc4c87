#pragma once

#include <cmath>
#include <stdexcept>

#include "substantial/laguerre.hpp"
#include "substantial/quadrature.hpp"
#include "substantial/special_functions.hpp"

namespace substantial {

enum class EquationKind { advection, diffusion };

// Parameters of the modified Laguerre basis: index lambda, fractional index
// nu, tempering rate sigma.
struct BasisParams {
    double lambda;
    double nu;
    double sigma;
};

inline void validate(const BasisParams& p) {
    if (!(p.lambda > -2.0))
        throw std::domain_error("BasisParams: lambda must exceed -2");
    if (!(p.nu > 0.0 && p.nu < 1.0))
        throw std::domain_error("BasisParams: nu must lie in (0,1)");
    if (!(p.sigma > 0.0))
        throw std::domain_error("BasisParams: sigma must be positive");
}

// Modified Laguerre function x^lambda e^{-sigma x} L_n^lambda(2 sigma x).
inline double mlf_eval(int n, double lambda, double sigma, double x) {
    if (x < 0.0 || (x == 0.0 && lambda < 0.0))
        throw std::domain_error("mlf_eval: prefactor undefined at this x");
    const double prefactor = std::pow(x, lambda) * std::exp(-sigma * x);
    return prefactor * laguerre_eval(n, lambda, 2.0 * sigma * x);
}

// One term "coeff * L'_n^{new_lambda}": the closed-form substantial
// derivative of a basis function is a scalar multiple of a single modified
// Laguerre function at a shifted index.
struct DerivativeTerm {
    double coeff;
    double new_lambda;
};

// Order 1-nu derivative of L'_n^lambda:
//   coeff = Gamma(lambda+n+1)/Gamma(nu+lambda+n), index shift nu-1.
inline DerivativeTerm substantial_deriv_advection_coeff(int n, const BasisParams& p) {
    validate(p);
    if (n < 0)
        throw std::domain_error("substantial_deriv_advection_coeff: degree must be non-negative");
    return {gamma_ratio(p.lambda + n + 1.0, p.nu + p.lambda + n), p.lambda + p.nu - 1.0};
}

// Order 2-nu derivative of L'_n^lambda:
//   coeff = Gamma(n+lambda+1)/Gamma(n-1+lambda+nu), index shift nu-2.
// At n = 0 with lambda+nu < 1 the denominator gamma is negative (continued
// through (-1,0)); the sign is part of the value and must be kept.
inline DerivativeTerm substantial_deriv_diffusion_coeff(int n, const BasisParams& p) {
    validate(p);
    if (n < 0)
        throw std::domain_error("substantial_deriv_diffusion_coeff: degree must be non-negative");
    return {gamma_ratio(n + p.lambda + 1.0, n - 1.0 + p.lambda + p.nu), p.lambda + p.nu - 2.0};
}

inline DerivativeTerm substantial_derivative_term(int n, const BasisParams& p, EquationKind kind) {
    return kind == EquationKind::advection ? substantial_deriv_advection_coeff(n, p)
                                           : substantial_deriv_diffusion_coeff(n, p);
}

// Integral of x^{2+lambda-nu} e^{-2 sigma x} [L_n^lambda(2 sigma x)]^2 over
// (0, inf), by a Gauss rule of order n+2 in the matching weight.  Used to
// certify the regular-pair norm growth of the trial/test spaces.
inline double regular_pair_norm_check(int n, const BasisParams& p) {
    validate(p);
    if (n < 0)
        throw std::domain_error("regular_pair_norm_check: degree must be non-negative");
    const QuadratureRule rule = gauss_rule(n + 2, 2.0 + p.lambda - p.nu, p.sigma);
    return integrate(rule, [&](double x) {
        const double value = laguerre_eval(n, p.lambda, 2.0 * p.sigma * x);
        return value * value;
    });
}

}  // namespace substantial
