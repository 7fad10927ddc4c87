#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "substantial/laguerre.hpp"
#include "substantial/linalg.hpp"
#include "substantial/mlf.hpp"
#include "substantial/petrov_galerkin.hpp"
#include "substantial/quadrature.hpp"
#include "substantial/special_functions.hpp"

namespace substantial {

// beta(k, j): coefficient of L_k^lambda(2 sigma x) in the expansion of the
// Lagrange cardinal polynomial attached to node j.
struct ConnectionCoefficients {
    DenseMatrix beta;
};

// Nodal differentiation system: matrix(i, j) maps values at nodes[j] to the
// substantial derivative sampled at nodes[i].  Advection collocates on all
// N+1 Gauss nodes; diffusion on the N interior Radau nodes, with the origin
// reserved for the initial condition.
struct CollocationSystem {
    EquationKind kind;
    BasisParams params;
    int n;  // trial cutoff N
    std::vector<double> nodes;
    std::vector<double> weights;
    DenseMatrix matrix;
    DenseMatrix beta;
};

struct CollocationSolution {
    std::vector<double> nodal_values;
    SpectralSolution modal;  // evaluates the interpolant anywhere
};

// Cardinal-to-modal change of basis for the advection grid.  Each cardinal
// is first expanded in L^{lambda+nu-1}(2 sigma x) (one quadrature term
// survives, carrying the node weight), then converted to the L^lambda basis
// through the unit-scale connection integrals.
inline ConnectionCoefficients advection_connection(int n_modes, const BasisParams& p) {
    if (n_modes < 0)
        throw std::domain_error("advection_connection: negative mode count");
    validate(p);
    const std::size_t size = static_cast<std::size_t>(n_modes) + 1;
    const double mu = p.lambda + p.nu - 1.0;

    const QuadratureRule grid = gauss_rule(n_modes, mu, p.sigma);
    const QuadratureRule unit = gauss_rule(n_modes, p.lambda, 0.5);

    // connection(k, i): L_i^mu = sum_{k<=i} connection(k, i) L_k^lambda
    DenseMatrix connection(size, size);
    {
        std::vector<std::vector<double>> src(unit.nodes.size()), dst(unit.nodes.size());
        for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
            src[q] = laguerre_eval_batch(n_modes, mu, unit.nodes[q]);
            dst[q] = laguerre_eval_batch(n_modes, p.lambda, unit.nodes[q]);
        }
        for (int k = 0; k <= n_modes; ++k) {
            const double inv_norm = std::exp(log_gamma(k + 1.0) - log_gamma(k + p.lambda + 1.0));
            for (int i = k; i <= n_modes; ++i) {
                double acc = 0.0;
                for (std::size_t q = 0; q < unit.nodes.size(); ++q)
                    acc += unit.weights[q] * src[q][static_cast<std::size_t>(i)] *
                           dst[q][static_cast<std::size_t>(k)];
                connection(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
                    inv_norm * acc;
            }
        }
    }

    // alpha(i, j): coefficient of L_i^mu in the cardinal at node j.
    DenseMatrix alpha(size, size);
    const double log_two_sigma = std::log(2.0 * p.sigma);
    for (std::size_t j = 0; j < size; ++j) {
        const std::vector<double> at_node =
            laguerre_eval_batch(n_modes, mu, 2.0 * p.sigma * grid.nodes[j]);
        for (int i = 0; i <= n_modes; ++i) {
            const double scale = std::exp((p.lambda + p.nu) * log_two_sigma +
                                          log_gamma(i + 1.0) - log_gamma(i + p.lambda + p.nu));
            alpha(static_cast<std::size_t>(i), j) =
                scale * grid.weights[j] * at_node[static_cast<std::size_t>(i)];
        }
    }

    ConnectionCoefficients out;
    out.beta = DenseMatrix(size, size);
    for (std::size_t k = 0; k < size; ++k)
        for (std::size_t j = 0; j < size; ++j) {
            double acc = 0.0;
            for (std::size_t i = k; i < size; ++i)
                acc += connection(k, i) * alpha(i, j);
            out.beta(k, j) = acc;
        }
    return out;
}

inline CollocationSystem advection_matrix(int n_modes, const BasisParams& p) {
    if (n_modes < 0)
        throw std::domain_error("advection_matrix: negative mode count");
    validate(p);
    const std::size_t size = static_cast<std::size_t>(n_modes) + 1;
    const double mu = p.lambda + p.nu - 1.0;

    const QuadratureRule grid = gauss_rule(n_modes, mu, p.sigma);
    ConnectionCoefficients conn = advection_connection(n_modes, p);

    std::vector<double> gamma(size);
    for (int k = 0; k <= n_modes; ++k)
        gamma[static_cast<std::size_t>(k)] =
            gamma_ratio(p.lambda + k + 1.0, p.nu + p.lambda + k);

    DenseMatrix d(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        const double x = grid.nodes[i];
        const std::vector<double> lag = laguerre_eval_batch(n_modes, mu, 2.0 * p.sigma * x);
        const double prefactor = std::pow(x, mu) * std::exp(-p.sigma * x);
        for (std::size_t j = 0; j < size; ++j) {
            const double node_scale =
                std::pow(grid.nodes[j], -p.lambda) * std::exp(p.sigma * grid.nodes[j]);
            double acc = 0.0;
            for (std::size_t k = 0; k < size; ++k)
                acc += conn.beta(k, j) * gamma[k] * lag[k];
            d(i, j) = node_scale * prefactor * acc;
        }
    }
    return {EquationKind::advection, p,       n_modes, grid.nodes,
            grid.weights,            std::move(d), std::move(conn.beta)};
}

// Interior-node system for the order 2-nu operator.  The cardinal expansion
// keeps trial degrees 0..N-1; requiring the degree-N coefficient to vanish
// fixes the cardinal's value at the origin, which folds the two surviving
// Radau quadrature terms into one bracket per (k, j).
inline CollocationSystem diffusion_matrix(int n_modes, const BasisParams& p) {
    if (n_modes < 1)
        throw std::domain_error("diffusion_matrix: need at least one interior node");
    validate(p);
    const std::size_t size = static_cast<std::size_t>(n_modes);
    const double mu = p.lambda + p.nu - 2.0;

    const QuadratureRule grid = radau_rule(n_modes, p.lambda, p.sigma);
    std::vector<double> nodes(grid.nodes.begin() + 1, grid.nodes.end());
    std::vector<double> weights(grid.weights.begin() + 1, grid.weights.end());

    const double log_two_sigma = std::log(2.0 * p.sigma);
    const double top_ratio = std::exp(log_gamma(n_modes + 1.0) -
                                      log_gamma(n_modes + p.lambda + 1.0));

    DenseMatrix beta(size, size);
    for (std::size_t j = 0; j < size; ++j) {
        const double y = 2.0 * p.sigma * nodes[j];
        const std::vector<double> lag = laguerre_eval_batch(n_modes, p.lambda, y);
        const double scale = std::exp((1.0 + p.lambda) * log_two_sigma) * weights[j];
        const double top_term = top_ratio * lag[static_cast<std::size_t>(n_modes)];
        for (int k = 0; k < n_modes; ++k) {
            const double ratio = std::exp(log_gamma(k + 1.0) - log_gamma(k + p.lambda + 1.0));
            beta(static_cast<std::size_t>(k), j) =
                scale * (ratio * lag[static_cast<std::size_t>(k)] - top_term);
        }
    }

    std::vector<double> gamma(size);
    for (int k = 0; k < n_modes; ++k)
        gamma[static_cast<std::size_t>(k)] =
            gamma_ratio(p.lambda + k + 1.0, p.nu + p.lambda + k - 1.0);
    if (gamma[0] == 0.0)
        throw std::domain_error(
            "diffusion_matrix: lambda+nu = 1 puts the lowest trial mode in the operator "
            "kernel; the nodal system is singular");

    DenseMatrix d(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        const double x = nodes[i];
        const std::vector<double> lag = laguerre_eval_batch(n_modes - 1, mu, 2.0 * p.sigma * x);
        const double prefactor = std::pow(x, mu) * std::exp(-p.sigma * x);
        for (std::size_t j = 0; j < size; ++j) {
            const double node_scale =
                std::pow(nodes[j], -p.lambda) * std::exp(p.sigma * nodes[j]);
            double acc = 0.0;
            for (std::size_t k = 0; k < size; ++k)
                acc += beta(k, j) * gamma[k] * lag[k];
            d(i, j) = node_scale * prefactor * acc;
        }
    }
    return {EquationKind::diffusion, p,       n_modes, std::move(nodes),
            std::move(weights),      std::move(d), std::move(beta)};
}

// Collocates D u = f at the system's nodes and rebuilds the global
// interpolant in modal form: u_N = sum_k d_k MLF_k^lambda with
// d_k = sum_j u_j beta(k, j) / (x_j^lambda e^{-sigma x_j}).
inline CollocationSolution solve_collocation(const CollocationSystem& sys,
                                             const RhsFunction& rhs) {
    if (!rhs.f)
        throw std::invalid_argument("solve_collocation: missing f");
    if (sys.beta.rows() == 0)
        throw std::invalid_argument(
            "solve_collocation: system carries no connection coefficients");
    std::vector<double> b(sys.nodes.size());
    for (std::size_t i = 0; i < sys.nodes.size(); ++i) {
        b[i] = rhs.f(sys.nodes[i]);
        if (!std::isfinite(b[i]))
            throw std::runtime_error("solve_collocation: non-finite forcing at a node");
    }
    std::vector<double> u = solve(sys.matrix, b);

    std::vector<double> modal(sys.beta.rows(), 0.0);
    for (std::size_t j = 0; j < sys.nodes.size(); ++j) {
        const double node_scale =
            std::pow(sys.nodes[j], -sys.params.lambda) * std::exp(sys.params.sigma * sys.nodes[j]);
        const double c = u[j] * node_scale;
        for (std::size_t k = 0; k < sys.beta.rows(); ++k)
            modal[k] += c * sys.beta(k, j);
    }
    return {std::move(u), SpectralSolution{sys.params, sys.kind, std::move(modal), 0.0}};
}

}  // namespace substantial
