// Command-line front end: error sweeps, derivative-identity verification,
// and quadrature rule dumps.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical
// failure (failed sweep cells, identity check over tolerance).
#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "substantial/experiments.hpp"
#include "substantial/mlf.hpp"
#include "substantial/oracle.hpp"
#include "substantial/quadrature.hpp"

using namespace substantial;

namespace {

EquationKind parse_equation(const std::string& name) {
    if (name == "advection") return EquationKind::advection;
    if (name == "diffusion") return EquationKind::diffusion;
    throw std::invalid_argument("unknown equation '" + name + "' (advection|diffusion)");
}

Method parse_method(const std::string& name) {
    if (name == "pg") return Method::pg;
    if (name == "collocation") return Method::collocation;
    throw std::invalid_argument("unknown method '" + name + "' (pg|collocation)");
}

int run_sweep(const ExperimentSpec& spec) {
    const std::vector<ErrorRecord> records = run(spec);
    std::fputs(to_csv(records).c_str(), stdout);
    int failed = 0;
    for (const ErrorRecord& r : records)
        if (!r.failure.empty()) {
            ++failed;
            std::fprintf(stderr, "cell lambda=%g N=%d failed: %s\n", r.lambda, r.n,
                         r.failure.c_str());
        }
    if (failed > 0) {
        std::fprintf(stderr, "%d of %zu sweep cells failed\n", failed, records.size());
        return 2;
    }
    return 0;
}

int verify_identities_sweep() {
    const std::vector<double> xs = {0.3, 1.0, 2.5, 5.0};
    double worst_adv = 0.0;
    double worst_diff = 0.0;
    std::printf("lambda   nu   sigma   advection      diffusion\n");
    for (double lambda : {0.1, 0.3, 0.7})
        for (double nu : {0.25, 0.5, 0.75})
            for (double sigma : {1.0, 2.0}) {
                const BasisParams p = {lambda, nu, sigma};
                double adv = 0.0;
                double diff = 0.0;
                for (int n = 0; n <= 8; ++n) {
                    adv = std::max(adv, verify_identity(n, p, EquationKind::advection, xs));
                    diff = std::max(diff, verify_identity(n, p, EquationKind::diffusion, xs));
                }
                std::printf("%6.2f %5.2f %6.2f   %-13.3g  %-13.3g\n", lambda, nu, sigma, adv,
                            diff);
                std::fflush(stdout);
                worst_adv = std::max(worst_adv, adv);
                worst_diff = std::max(worst_diff, diff);
            }
    std::printf("worst relative error: advection %.3g (tolerance 1e-8), diffusion %.3g "
                "(tolerance 1e-6)\n",
                worst_adv, worst_diff);
    if (worst_adv <= 1e-8 && worst_diff <= 1e-6) {
        std::printf("identities verified\n");
        return 0;
    }
    std::printf("identity verification FAILED\n");
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for tempered fractional equations on the half-line"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "Run an error sweep and print CSV records");
    std::string equation;
    std::string method;
    std::string rhs;
    std::string out;
    std::string config;
    double nu = 0.0;
    double sigma = 0.0;
    std::vector<double> lambdas;
    std::vector<int> n_values;
    run_cmd->add_option("--equation", equation, "advection|diffusion");
    run_cmd->add_option("--method", method, "pg|collocation");
    run_cmd->add_option("--nu", nu, "fractional index in (0,1)");
    run_cmd->add_option("--sigma", sigma, "tempering rate > 0");
    run_cmd->add_option("--lambda", lambdas, "basis indices, comma separated")->delimiter(',');
    run_cmd->add_option("--n", n_values, "mode counts, comma separated")->delimiter(',');
    run_cmd->add_option("--rhs", rhs, "forcing name: example1..example4");
    run_cmd->add_option("--out", out, "also write the CSV to this path");
    run_cmd->add_option("--config", config,
                        "JSON file with the sweep fields; explicit flags override it");

    auto* verify_cmd = app.add_subcommand(
        "verify-identities",
        "Check the closed-form basis derivatives against adaptive quadrature");

    auto* quad_cmd = app.add_subcommand("quad", "Print nodes and weights of a quadrature rule");
    int quad_n = 0;
    double quad_lambda = 0.0;
    double quad_sigma = 1.0;
    bool radau = false;
    std::string quad_out;
    quad_cmd->add_option("--n", quad_n, "rule order")->required();
    quad_cmd->add_option("--lambda", quad_lambda, "weight exponent > -1")->required();
    quad_cmd->add_option("--sigma", quad_sigma, "tempering rate > 0");
    quad_cmd->add_flag("--radau", radau, "pin a node at x = 0");
    quad_cmd->add_option("--out", quad_out, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run_cmd->parsed()) {
            ExperimentSpec spec;
            bool equation_given = run_cmd->count("--equation") > 0;
            if (!config.empty()) {
                std::ifstream in(config);
                if (!in)
                    throw std::invalid_argument("cannot open config file " + config);
                try {
                    const nlohmann::json j = nlohmann::json::parse(in);
                    if (j.contains("equation")) {
                        spec.equation = parse_equation(j.at("equation").get<std::string>());
                        equation_given = true;
                    }
                    if (j.contains("method"))
                        spec.method = parse_method(j.at("method").get<std::string>());
                    if (j.contains("nu")) spec.nu = j.at("nu").get<double>();
                    if (j.contains("sigma")) spec.sigma = j.at("sigma").get<double>();
                    if (j.contains("lambdas"))
                        spec.lambdas = j.at("lambdas").get<std::vector<double>>();
                    if (j.contains("n_values"))
                        spec.n_values = j.at("n_values").get<std::vector<int>>();
                    if (j.contains("rhs")) spec.rhs = j.at("rhs").get<std::string>();
                    if (j.contains("output")) spec.output = j.at("output").get<std::string>();
                } catch (const nlohmann::json::exception& e) {
                    throw std::invalid_argument(config + ": " + e.what());
                }
            }
            if (run_cmd->count("--equation")) spec.equation = parse_equation(equation);
            if (run_cmd->count("--method")) spec.method = parse_method(method);
            if (run_cmd->count("--nu")) spec.nu = nu;
            if (run_cmd->count("--sigma")) spec.sigma = sigma;
            if (run_cmd->count("--lambda")) spec.lambdas = lambdas;
            if (run_cmd->count("--n")) spec.n_values = n_values;
            if (run_cmd->count("--rhs")) spec.rhs = rhs;
            if (run_cmd->count("--out")) spec.output = out;
            if (!equation_given && spec.rhs != "custom")
                spec.equation = builtin_equation(spec.rhs);
            return run_sweep(spec);
        }
        if (verify_cmd->parsed()) return verify_identities_sweep();
        if (quad_cmd->parsed()) {
            const QuadratureRule rule = radau ? radau_rule(quad_n, quad_lambda, quad_sigma)
                                              : gauss_rule(quad_n, quad_lambda, quad_sigma);
            if (quad_out.empty()) {
                write_rule_csv(rule, std::cout);
            } else {
                std::ofstream file(quad_out);
                if (!file)
                    throw std::invalid_argument("cannot open output file " + quad_out);
                write_rule_csv(rule, file);
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
