#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "substantial/laguerre.hpp"
#include "substantial/special_functions.hpp"

namespace substantial {

enum class RuleKind { gauss, radau };

// Nodes and weights for the weight function x^lambda e^{-2 sigma x} on
// (0, inf).  nodes are strictly increasing; a Radau rule starts at 0.
struct QuadratureRule {
    RuleKind kind;
    double lambda;
    double sigma;
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix (diagonal d, off-diagonal e
// where e[i] couples rows i and i+1), by the implicit QL method with shifts.
// Returns the eigenvalues in ascending order.
inline std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    e.resize(static_cast<std::size_t>(n), 0.0);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 60)
                throw std::runtime_error("tridiagonal_eigenvalues: QL iteration failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// log|L_n^alpha(x)|, evaluated with periodic rescaling so the result is
// usable where the polynomial value itself would overflow a double.
inline double log_abs_laguerre(int n, double alpha, double x) {
    if (n == 0) return 0.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    double log_scale = 0.0;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
        const double mag = std::max(std::fabs(cur), std::fabs(prev));
        if (mag > 1e150) {
            cur *= 1e-150;
            prev *= 1e-150;
            log_scale += 150.0 * 2.302585092994045684;
        }
    }
    return std::log(std::fabs(cur)) + log_scale;
}

}  // namespace detail

// The N real zeros of L_N^alpha(y), strictly increasing.  Eigenvalues of the
// Jacobi matrix of the recurrence, then one round of Newton polish using
// d/dy L_N^alpha = -L_{N-1}^{alpha+1}.
inline std::vector<double> polynomial_zeros(int N, double alpha) {
    if (N < 1)
        throw std::domain_error("polynomial_zeros: degree must be at least 1");
    if (!(alpha > -1.0))
        throw std::domain_error("polynomial_zeros: index must exceed -1");
    std::vector<double> diag(static_cast<std::size_t>(N));
    std::vector<double> off(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) diag[static_cast<std::size_t>(k)] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < N; ++k) off[static_cast<std::size_t>(k - 1)] = std::sqrt(k * (k + alpha));
    std::vector<double> zeros = detail::tridiagonal_eigenvalues(std::move(diag), std::move(off));

    for (double& z : zeros) {
        for (int pass = 0; pass < 4; ++pass) {
            const double value = laguerre_eval(N, alpha, z);
            const double deriv = -laguerre_eval(N - 1, alpha + 1.0, z);
            if (deriv == 0.0) break;
            const double step = value / deriv;
            z -= step;
            if (std::fabs(step) <= 1e-15 * std::fabs(z)) break;
        }
    }
    for (std::size_t i = 0; i + 1 < zeros.size(); ++i)
        if (!(zeros[i] < zeros[i + 1]))
            throw std::runtime_error("polynomial_zeros: zeros failed to separate");
    if (!(zeros.front() > 0.0))
        throw std::runtime_error("polynomial_zeros: spurious non-positive zero");
    return zeros;
}

// (N+1)-point Laguerre-Gauss rule for x^lambda e^{-2 sigma x}: nodes are the
// zeros of L_{N+1}^lambda(2 sigma x), exact through degree 2N+1.
inline QuadratureRule gauss_rule(int N, double lambda, double sigma) {
    if (N < 0)
        throw std::domain_error("gauss_rule: order must be non-negative");
    if (!(lambda > -1.0))
        throw std::domain_error("gauss_rule: weight exponent must exceed -1");
    if (!(sigma > 0.0))
        throw std::domain_error("gauss_rule: sigma must be positive");

    const std::vector<double> y = polynomial_zeros(N + 1, lambda);
    QuadratureRule rule{RuleKind::gauss, lambda, sigma, {}, {}};
    rule.nodes.reserve(y.size());
    rule.weights.reserve(y.size());
    // log of Gamma(N+lambda+1) / ((N+1)! (N+lambda+1)) * (2 sigma)^{-(1+lambda)}
    const double log_prefactor = log_gamma(N + lambda + 1.0) - log_gamma(N + 2.0) -
                                 std::log(N + lambda + 1.0) -
                                 (1.0 + lambda) * std::log(2.0 * sigma);
    for (const double yi : y) {
        rule.nodes.push_back(yi / (2.0 * sigma));
        const double log_w =
            log_prefactor + std::log(yi) - 2.0 * detail::log_abs_laguerre(N, lambda, yi);
        rule.weights.push_back(std::exp(log_w));
    }
    return rule;
}

// (N+1)-point Laguerre-Gauss-Radau rule: node 0 plus the zeros of
// L_N^{1+lambda}(2 sigma x), exact through degree 2N.
inline QuadratureRule radau_rule(int N, double lambda, double sigma) {
    if (N < 1)
        throw std::domain_error("radau_rule: order must be at least 1");
    if (!(lambda > -1.0))
        throw std::domain_error("radau_rule: weight exponent must exceed -1");
    if (!(sigma > 0.0))
        throw std::domain_error("radau_rule: sigma must be positive");

    const std::vector<double> y = polynomial_zeros(N, lambda + 1.0);
    QuadratureRule rule{RuleKind::radau, lambda, sigma, {}, {}};
    rule.nodes.reserve(y.size() + 1);
    rule.weights.reserve(y.size() + 1);

    const double log_scale = (1.0 + lambda) * std::log(2.0 * sigma);
    const double log_w0 = std::log(lambda + 1.0) + 2.0 * log_gamma(lambda + 1.0) +
                          log_gamma(N + 1.0) - log_gamma(N + lambda + 2.0) - log_scale;
    rule.nodes.push_back(0.0);
    rule.weights.push_back(std::exp(log_w0));

    const double log_prefactor =
        log_gamma(N + lambda + 1.0) - log_gamma(N + 1.0) - std::log(N + lambda + 1.0) - log_scale;
    for (const double yi : y) {
        rule.nodes.push_back(yi / (2.0 * sigma));
        const double log_w = log_prefactor - 2.0 * detail::log_abs_laguerre(N, lambda, yi);
        rule.weights.push_back(std::exp(log_w));
    }
    return rule;
}

// Sum of w_i f(x_i).  Exact for polynomials f of degree <= 2N+1 (Gauss) or
// <= 2N (Radau) under the rule's weight.
template <typename F>
double integrate(const QuadratureRule& rule, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double value = f(rule.nodes[i]);
        if (!std::isfinite(value))
            throw std::runtime_error("integrate: integrand not finite at a node");
        sum += rule.weights[i] * value;
    }
    return sum;
}

// Node/weight dump, columns i,node,weight at 17 significant digits.
inline void write_rule_csv(const QuadratureRule& rule, std::ostream& out) {
    out << "i,node,weight\n";
    char line[96];
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", i, rule.nodes[i], rule.weights[i]);
        out << line;
    }
}

}  // namespace substantial
