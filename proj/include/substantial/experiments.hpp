#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "substantial/collocation.hpp"
#include "substantial/linalg.hpp"
#include "substantial/petrov_galerkin.hpp"
#include "substantial/quadrature.hpp"
#include "substantial/special_functions.hpp"

namespace substantial {

enum class Method { pg, collocation };

// One error-decay sweep: the cross product of lambdas and N values for a
// fixed forcing and equation.
struct ExperimentSpec {
    EquationKind equation = EquationKind::advection;
    Method method = Method::pg;
    double nu = 0.5;
    double sigma = 2.0;
    std::vector<double> lambdas;
    std::vector<int> n_values;
    std::string rhs = "example1";  // example1..example4 or custom
    std::string output;            // CSV path; empty writes nothing
    RhsFunction custom;            // consulted only when rhs == "custom"
};

struct ErrorRecord {
    std::string example;
    std::string method;
    std::string equation;
    double nu = 0.0;
    double lambda = 0.0;
    double sigma = 0.0;
    int n = 0;
    double max_error = 0.0;           // NaN when the row failed
    std::optional<double> cond;       // collocation only
    double wall_time_ms = 0.0;
    std::string failure;              // empty on success
};

// Forcings with known closed-form solutions.  Examples 1 and 3 share the
// advection pair u = x^{6.3} e^{-sigma x}; example 2 solves the diffusion
// equation with u = x^{4.1} e^{-sigma x}, example 4 with u = x^{6.3} e^{-sigma x}.
inline RhsFunction builtin_rhs(const std::string& name, double nu, double sigma) {
    const double inv_gamma_nu = 1.0 / std::exp(log_gamma(nu));
    if (name == "example1" || name == "example3") {
        const double coeff = beta(7.3, nu) * inv_gamma_nu * (nu + 6.3);
        return {[coeff, nu, sigma](double x) {
                    return coeff * std::pow(x, 5.3 + nu) * std::exp(-sigma * x);
                },
                [sigma](double x) { return std::pow(x, 6.3) * std::exp(-sigma * x); }};
    }
    if (name == "example2") {
        const double coeff = beta(5.1, nu) * inv_gamma_nu * (nu + 4.1) * (nu + 3.1);
        return {[coeff, nu, sigma](double x) {
                    return coeff * std::pow(x, 2.1 + nu) * std::exp(-sigma * x);
                },
                [sigma](double x) { return std::pow(x, 4.1) * std::exp(-sigma * x); }};
    }
    if (name == "example4") {
        const double coeff = beta(7.3, nu) * inv_gamma_nu * (nu + 6.3) * (nu + 5.3);
        return {[coeff, nu, sigma](double x) {
                    return coeff * std::pow(x, 4.3 + nu) * std::exp(-sigma * x);
                },
                [sigma](double x) { return std::pow(x, 6.3) * std::exp(-sigma * x); }};
    }
    throw std::invalid_argument("builtin_rhs: unknown identifier '" + name + "'");
}

inline EquationKind builtin_equation(const std::string& name) {
    if (name == "example1" || name == "example3")
        return EquationKind::advection;
    if (name == "example2" || name == "example4")
        return EquationKind::diffusion;
    throw std::invalid_argument("builtin_equation: unknown identifier '" + name + "'");
}

namespace detail {

// Evaluation grid: the method's own nodes plus a fixed geometric ladder, so
// reported max errors do not depend on incidental quadrature choices alone.
inline std::vector<double> error_grid(std::vector<double> nodes, double sigma) {
    for (int k = 0; k <= 9; ++k)
        nodes.push_back(0.1 * std::pow(2.0, k) / sigma);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

inline double max_abs_error(const SpectralSolution& sol, const RhsFunction& rhs,
                            const std::vector<double>& grid) {
    const std::vector<double> approx = evaluate(sol, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double err = std::fabs(approx[i] - rhs.exact(grid[i]));
        if (!std::isfinite(err))
            throw std::runtime_error("max_abs_error: non-finite error sample");
        worst = std::max(worst, err);
    }
    return worst;
}

inline void append_csv_row(std::string& out, const ErrorRecord& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%g,%g,%g,%d,", r.example.c_str(),
                  r.method.c_str(), r.equation.c_str(), r.nu, r.lambda, r.sigma, r.n);
    out += buf;
    if (std::isnan(r.max_error))
        out += "nan";
    else {
        std::snprintf(buf, sizeof buf, "%.17g", r.max_error);
        out += buf;
    }
    out += ',';
    if (r.cond) {
        std::snprintf(buf, sizeof buf, "%.17g", *r.cond);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.3f\n", r.wall_time_ms);
    out += buf;
}

}  // namespace detail

inline std::string to_csv(const std::vector<ErrorRecord>& records) {
    std::string out = "example,method,equation,nu,lambda,sigma,N,max_error,cond,wall_time_ms\n";
    for (const ErrorRecord& r : records)
        detail::append_csv_row(out, r);
    return out;
}

inline std::vector<ErrorRecord> run(const ExperimentSpec& spec) {
    if (!(spec.nu > 0.0 && spec.nu < 1.0))
        throw std::invalid_argument("run: nu must lie in (0,1)");
    if (!(spec.sigma > 0.0))
        throw std::invalid_argument("run: sigma must be positive");
    if (spec.lambdas.empty() || spec.n_values.empty())
        throw std::invalid_argument("run: empty lambda or N list");
    for (const double lambda : spec.lambdas)
        if (!(lambda > 0.0 && lambda < 1.0))
            throw std::invalid_argument("run: lambdas must lie in (0,1)");
    for (const int n : spec.n_values)
        if (n < 1)
            throw std::invalid_argument("run: N values must be at least 1");

    RhsFunction rhs;
    std::string example_name = spec.rhs;
    if (spec.rhs == "custom") {
        if (!spec.custom.f)
            throw std::invalid_argument("run: custom rhs selected but no callable given");
        rhs = spec.custom;
    } else {
        rhs = builtin_rhs(spec.rhs, spec.nu, spec.sigma);
        if (builtin_equation(spec.rhs) != spec.equation)
            throw std::invalid_argument("run: '" + spec.rhs +
                                        "' belongs to the other equation kind");
    }

    const std::string method_name = spec.method == Method::pg ? "pg" : "collocation";
    const std::string equation_name =
        spec.equation == EquationKind::advection ? "advection" : "diffusion";

    std::vector<ErrorRecord> records;
    records.reserve(spec.lambdas.size() * spec.n_values.size());
    for (const double lambda : spec.lambdas)
        for (const int n : spec.n_values) {
            ErrorRecord rec;
            rec.example = example_name;
            rec.method = method_name;
            rec.equation = equation_name;
            rec.nu = spec.nu;
            rec.lambda = lambda;
            rec.sigma = spec.sigma;
            rec.n = n;
            const auto start = std::chrono::steady_clock::now();
            try {
                const BasisParams p{lambda, spec.nu, spec.sigma};
                SpectralSolution sol;
                std::vector<double> method_nodes;
                if (spec.method == Method::pg) {
                    sol = solve(n, p, spec.equation, rhs);
                    method_nodes =
                        gauss_rule(std::max(2 * n, n + 1) - 1, lambda + spec.nu - 1.0,
                                   spec.sigma)
                            .nodes;
                } else {
                    CollocationSystem sys = spec.equation == EquationKind::advection
                                                ? advection_matrix(n, p)
                                                : diffusion_matrix(n, p);
                    rec.cond = condition_number_2norm(sys.matrix);
                    CollocationSolution csol = solve_collocation(sys, rhs);
                    sol = std::move(csol.modal);
                    method_nodes = std::move(sys.nodes);
                }
                if (!rhs.exact)
                    throw std::runtime_error("no exact solution for error measurement");
                rec.max_error = detail::max_abs_error(
                    sol, rhs, detail::error_grid(std::move(method_nodes), spec.sigma));
            } catch (const std::exception& e) {
                rec.max_error = std::numeric_limits<double>::quiet_NaN();
                rec.failure = e.what();
            }
            rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
            records.push_back(std::move(rec));
        }

    if (!spec.output.empty()) {
        std::ofstream out(spec.output);
        if (!out)
            throw std::runtime_error("run: cannot write " + spec.output);
        out << to_csv(records);
        if (!out)
            throw std::runtime_error("run: write failure on " + spec.output);
    }
    return records;
}

// Least-squares slope of log(error) against log(N).  Rows at or below the
// round-off floor are excluded: everything under 1e-13 always, and when the
// smallest error is itself at floor level (<= 1e-10), everything within 3x
// of it.  Fewer than three usable points leaves the rate undefined.
inline std::optional<double> fit_rate(std::span<const ErrorRecord> records) {
    std::vector<std::pair<double, double>> points;
    double e_min = std::numeric_limits<double>::infinity();
    for (const ErrorRecord& r : records) {
        if (!std::isfinite(r.max_error) || r.max_error <= 1e-13)
            continue;
        e_min = std::min(e_min, r.max_error);
        points.emplace_back(std::log(static_cast<double>(r.n)), std::log(r.max_error));
    }
    if (e_min <= 1e-10) {
        std::erase_if(points, [e_min](const std::pair<double, double>& q) {
            return q.second <= std::log(3.0 * e_min);
        });
    }
    if (points.size() < 3)
        return std::nullopt;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace substantial
