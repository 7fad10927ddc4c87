#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "substantial/collocation.hpp"
#include "substantial/collocation_io.hpp"
#include "substantial/linalg.hpp"
#include "substantial/mlf.hpp"
#include "substantial/special_functions.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace substantial;

namespace {

// Forcing whose exact solution is x^p e^{-sigma x}.
RhsFunction manufactured(double p_exp, const BasisParams& p, EquationKind kind) {
    const double nu = p.nu;
    const double sigma = p.sigma;
    const double coeff = gamma_ratio(
        p_exp + 1.0, kind == EquationKind::advection ? p_exp + nu : p_exp + nu - 1.0);
    const double shift = kind == EquationKind::advection ? nu - 1.0 : nu - 2.0;
    RhsFunction rhs;
    rhs.f = [coeff, p_exp, shift, sigma](double x) {
        return coeff * std::pow(x, p_exp + shift) * std::exp(-sigma * x);
    };
    rhs.exact = [p_exp, sigma](double x) { return std::pow(x, p_exp) * std::exp(-sigma * x); };
    return rhs;
}

}  // namespace

TEST_CASE("connection coefficients recover modal content from nodal samples") {
    // Sampling basis function m at the grid and pushing through beta must
    // produce the m-th unit vector; the envelope cancels in the node scaling.
    const BasisParams p = {0.3, 0.5, 2.0};
    SECTION("advection grid") {
        const CollocationSystem sys = advection_matrix(8, p);
        for (int m = 0; m <= 8; ++m) {
            for (int k = 0; k <= 8; ++k) {
                double acc = 0.0;
                for (std::size_t j = 0; j < sys.nodes.size(); ++j)
                    acc += sys.beta(static_cast<std::size_t>(k), j) *
                           laguerre_eval(m, p.lambda, 2.0 * p.sigma * sys.nodes[j]);
                REQUIRE_THAT(acc, WithinAbs(k == m ? 1.0 : 0.0, 1e-9));
            }
        }
    }
    SECTION("diffusion grid") {
        const CollocationSystem sys = diffusion_matrix(8, p);
        REQUIRE(sys.nodes.size() == 8);  // interior points only
        for (int m = 0; m <= 7; ++m) {
            for (int k = 0; k <= 7; ++k) {
                double acc = 0.0;
                for (std::size_t j = 0; j < sys.nodes.size(); ++j)
                    acc += sys.beta(static_cast<std::size_t>(k), j) *
                           laguerre_eval(m, p.lambda, 2.0 * p.sigma * sys.nodes[j]);
                REQUIRE_THAT(acc, WithinAbs(k == m ? 1.0 : 0.0, 1e-9));
            }
        }
    }
}

TEST_CASE("one-point connection is the identity") {
    const ConnectionCoefficients conn = advection_connection(0, {0.3, 0.5, 2.0});
    REQUIRE(conn.beta.rows() == 1);
    REQUIRE_THAT(conn.beta(0, 0), WithinRel(1.0, 1e-12));
}

TEST_CASE("differentiation matrix is exact on the trial span") {
    struct Pair {
        double lambda, nu;
    };
    for (const Pair pr : {Pair{0.3, 0.5}, Pair{0.7, 0.5}, Pair{0.5, 0.25}}) {
        const BasisParams p = {pr.lambda, pr.nu, 2.0};
        SECTION("advection, lambda=" + std::to_string(pr.lambda) + " nu=" + std::to_string(pr.nu)) {
            const CollocationSystem sys = advection_matrix(8, p);
            for (int m = 0; m <= 8; ++m) {
                const DerivativeTerm term = substantial_derivative_term(m, p, EquationKind::advection);
                std::vector<double> u(sys.nodes.size());
                for (std::size_t j = 0; j < u.size(); ++j)
                    u[j] = mlf_eval(m, p.lambda, p.sigma, sys.nodes[j]);
                const std::vector<double> got = sys.matrix.matvec(u);
                double scale = 1.0;
                for (std::size_t i = 0; i < got.size(); ++i)
                    scale = std::max(scale,
                                     std::fabs(term.coeff * mlf_eval(m, term.new_lambda, p.sigma,
                                                                     sys.nodes[i])));
                for (std::size_t i = 0; i < got.size(); ++i) {
                    const double expect =
                        term.coeff * mlf_eval(m, term.new_lambda, p.sigma, sys.nodes[i]);
                    REQUIRE_THAT(got[i], WithinAbs(expect, 1e-8 * scale));
                }
            }
        }
        SECTION("diffusion, lambda=" + std::to_string(pr.lambda) + " nu=" + std::to_string(pr.nu)) {
            const CollocationSystem sys = diffusion_matrix(8, p);
            for (int m = 0; m <= 7; ++m) {
                const DerivativeTerm term = substantial_derivative_term(m, p, EquationKind::diffusion);
                std::vector<double> u(sys.nodes.size());
                for (std::size_t j = 0; j < u.size(); ++j)
                    u[j] = mlf_eval(m, p.lambda, p.sigma, sys.nodes[j]);
                const std::vector<double> got = sys.matrix.matvec(u);
                double scale = 1.0;
                for (std::size_t i = 0; i < got.size(); ++i)
                    scale = std::max(scale,
                                     std::fabs(term.coeff * mlf_eval(m, term.new_lambda, p.sigma,
                                                                     sys.nodes[i])));
                for (std::size_t i = 0; i < got.size(); ++i) {
                    const double expect =
                        term.coeff * mlf_eval(m, term.new_lambda, p.sigma, sys.nodes[i]);
                    REQUIRE_THAT(got[i], WithinAbs(expect, 1e-8 * scale));
                }
            }
        }
    }
}

TEST_CASE("advection collocation resolves a smooth tempered solution") {
    const BasisParams p = {0.3, 0.5, 2.0};
    const RhsFunction rhs = manufactured(6.3, p, EquationKind::advection);
    const CollocationSystem sys = advection_matrix(16, p);
    const CollocationSolution sol = solve_collocation(sys, rhs);
    for (std::size_t j = 0; j < sys.nodes.size(); ++j)
        REQUIRE_THAT(sol.nodal_values[j], WithinAbs(rhs.exact(sys.nodes[j]), 1e-8));
    // The modal form interpolates the nodal values and extends off the grid.
    const std::vector<double> at_nodes = evaluate(sol.modal, sys.nodes);
    for (std::size_t j = 0; j < sys.nodes.size(); ++j)
        REQUIRE_THAT(at_nodes[j], WithinAbs(sol.nodal_values[j], 1e-9));
    const std::vector<double> xs = {0.2, 0.9, 2.5, 6.0};
    const std::vector<double> off = evaluate(sol.modal, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        REQUIRE_THAT(off[i], WithinAbs(rhs.exact(xs[i]), 1e-7));
    REQUIRE(sol.modal.scaling_exponent == 0.0);
}

TEST_CASE("diffusion collocation resolves a smooth tempered solution") {
    const BasisParams p = {0.3, 0.5, 2.0};
    const RhsFunction rhs = manufactured(6.3, p, EquationKind::diffusion);
    const CollocationSystem sys = diffusion_matrix(16, p);
    const CollocationSolution sol = solve_collocation(sys, rhs);
    for (std::size_t j = 0; j < sys.nodes.size(); ++j)
        REQUIRE_THAT(sol.nodal_values[j], WithinAbs(rhs.exact(sys.nodes[j]), 1e-8));
    const std::vector<double> at_nodes = evaluate(sol.modal, sys.nodes);
    for (std::size_t j = 0; j < sys.nodes.size(); ++j)
        REQUIRE_THAT(at_nodes[j], WithinAbs(sol.nodal_values[j], 1e-9));
    const std::vector<double> xs = {0.2, 0.9, 2.5, 6.0};
    const std::vector<double> off = evaluate(sol.modal, xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        REQUIRE_THAT(off[i], WithinAbs(rhs.exact(xs[i]), 1e-7));
}

TEST_CASE("zero forcing collapses to the zero interpolant") {
    const BasisParams p = {0.5, 0.25, 1.0};
    const CollocationSystem sys = advection_matrix(6, p);
    RhsFunction rhs;
    rhs.f = [](double) { return 0.0; };
    const CollocationSolution sol = solve_collocation(sys, rhs);
    for (double v : sol.nodal_values) REQUIRE(v == 0.0);
    for (double c : sol.modal.coeffs) REQUIRE(c == 0.0);
}

TEST_CASE("the degenerate diffusion line is refused") {
    // lambda + nu = 1 puts x^{1-nu} e^{-sigma x} in the operator kernel, so
    // the nodal system cannot be inverted.
    REQUIRE_THROWS_AS(diffusion_matrix(8, {0.5, 0.5, 2.0}), std::domain_error);
    REQUIRE_THROWS_AS(diffusion_matrix(3, {0.25, 0.75, 1.0}), std::domain_error);
    REQUIRE_NOTHROW(diffusion_matrix(3, {0.26, 0.75, 1.0}));
}

TEST_CASE("construction and solve guards") {
    const BasisParams p = {0.3, 0.5, 2.0};
    REQUIRE_THROWS_AS(advection_matrix(-1, p), std::domain_error);
    REQUIRE_THROWS_AS(advection_connection(-2, p), std::domain_error);
    REQUIRE_THROWS_AS(diffusion_matrix(0, p), std::domain_error);
    const CollocationSystem sys = advection_matrix(4, p);
    REQUIRE_THROWS_AS(solve_collocation(sys, RhsFunction{}), std::invalid_argument);
    RhsFunction bad;
    bad.f = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    REQUIRE_THROWS_AS(solve_collocation(sys, bad), std::runtime_error);
}

TEST_CASE("advection systems stay well conditioned") {
    const BasisParams p = {0.3, 0.5, 2.0};
    double previous = 0.0;
    for (int n : {8, 16, 32}) {
        const double cond = condition_number_2norm(advection_matrix(n, p).matrix);
        REQUIRE(cond > previous);
        REQUIRE(cond < 20.0);
        previous = cond;
    }
}

TEST_CASE("saved systems reload with identical geometry and matrix") {
    const BasisParams p = {0.3, 0.5, 2.0};
    const CollocationSystem sys = diffusion_matrix(6, p);
    const std::string base = "collocation_io_roundtrip";
    save_collocation_system(sys, base);
    const CollocationSystem loaded = load_collocation_system(base);
    REQUIRE(loaded.kind == sys.kind);
    REQUIRE(loaded.n == sys.n);
    REQUIRE(loaded.params.lambda == sys.params.lambda);
    REQUIRE(loaded.params.nu == sys.params.nu);
    REQUIRE(loaded.params.sigma == sys.params.sigma);
    REQUIRE(loaded.nodes.size() == sys.nodes.size());
    for (std::size_t i = 0; i < sys.nodes.size(); ++i)
        REQUIRE(loaded.nodes[i] == sys.nodes[i]);
    REQUIRE(loaded.matrix.rows() == sys.matrix.rows());
    REQUIRE(loaded.matrix.cols() == sys.matrix.cols());
    for (std::size_t i = 0; i < sys.matrix.rows(); ++i)
        for (std::size_t j = 0; j < sys.matrix.cols(); ++j)
            REQUIRE(loaded.matrix(i, j) == sys.matrix(i, j));
    // Quadrature weights and connection coefficients are deliberately not
    // serialized, so a reloaded system cannot rebuild interpolants.
    REQUIRE(loaded.weights.empty());
    REQUIRE(loaded.beta.rows() == 0);
    RhsFunction rhs;
    rhs.f = [](double) { return 1.0; };
    REQUIRE_THROWS_AS(solve_collocation(loaded, rhs), std::invalid_argument);
    std::filesystem::remove(base + ".json");
    std::filesystem::remove(base + ".csv");
}

TEST_CASE("loading from a missing base fails loudly") {
    REQUIRE_THROWS_AS(load_collocation_system("definitely_not_here_9f2c"), std::runtime_error);
}
