#pragma once

#include <stdexcept>
#include <vector>

#include "substantial/special_functions.hpp"

namespace substantial {

// Generalized Laguerre polynomial L_n^alpha(x).
//
// The three-term recurrence
//   (n+1) L_{n+1}^a = (2n+1+a-x) L_n^a - (n+a) L_{n-1}^a
// with seeds L_0^a = 1, L_1^a = 1+a-x remains valid for the extended index
// range a in (-2, -1], where L_n^a is defined by the difference formula
// L_n^a = L_n^{a+1} - L_{n-1}^{a+1}.  Degrees up to n = 256 are supported.
inline double laguerre_eval(int n, double alpha, double x) {
    if (n < 0)
        throw std::domain_error("laguerre_eval: degree must be non-negative");
    if (!(alpha > -2.0))
        throw std::domain_error("laguerre_eval: index must exceed -2");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

// [L_0^alpha(x), ..., L_{n_max}^alpha(x)] in one recurrence pass.
inline std::vector<double> laguerre_eval_batch(int n_max, double alpha, double x) {
    if (n_max < 0)
        throw std::domain_error("laguerre_eval_batch: degree must be non-negative");
    if (!(alpha > -2.0))
        throw std::domain_error("laguerre_eval_batch: index must exceed -2");
    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    values[0] = 1.0;
    if (n_max == 0) return values;
    values[1] = 1.0 + alpha - x;
    for (int k = 1; k < n_max; ++k)
        values[k + 1] = ((2 * k + 1 + alpha - x) * values[k] - (k + alpha) * values[k - 1]) / (k + 1);
    return values;
}

// Integral of [L_n^alpha]^2 against x^alpha e^{-x}: Gamma(n+alpha+1)/Gamma(n+1).
// For alpha <= -1 the integral is understood in the continued sense; n >= 1 is
// then required so the gamma argument stays positive.
inline double laguerre_norm_squared(int n, double alpha) {
    if (n < 0)
        throw std::domain_error("laguerre_norm_squared: degree must be non-negative");
    if (!(n + alpha + 1.0 > 0.0))
        throw std::domain_error("laguerre_norm_squared: n + alpha + 1 must be positive");
    return gamma_ratio(n + alpha + 1.0, n + 1.0);
}

// d^k/dx^k L_n^alpha(x) = (-1)^k L_{n-k}^{alpha+k}(x); zero once the degree
// is exhausted.
inline double laguerre_derivative(int n, double alpha, int k, double x) {
    if (k < 0)
        throw std::domain_error("laguerre_derivative: order must be non-negative");
    if (k > n) return 0.0;
    const double value = laguerre_eval(n - k, alpha + k, x);
    return (k % 2 == 0) ? value : -value;
}

}  // namespace substantial
