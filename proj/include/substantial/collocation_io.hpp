#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "substantial/collocation.hpp"

namespace substantial {

// Writes <base>.json (parameters and nodes) and <base>.csv (matrix entries,
// "i,j,value" at 17 significant digits, row-major order).  Doubles survive
// the decimal round trip bit-identically at that precision.
inline void save_collocation_system(const CollocationSystem& sys, const std::string& base) {
    nlohmann::json header;
    header["kind"] = sys.kind == EquationKind::advection ? "advection" : "diffusion";
    header["N"] = sys.n;
    header["lambda"] = sys.params.lambda;
    header["nu"] = sys.params.nu;
    header["sigma"] = sys.params.sigma;
    header["nodes"] = sys.nodes;

    {
        std::ofstream out(base + ".json");
        if (!out)
            throw std::runtime_error("save_collocation_system: cannot write " + base + ".json");
        out << header.dump(2) << '\n';
    }

    std::ofstream out(base + ".csv");
    if (!out)
        throw std::runtime_error("save_collocation_system: cannot write " + base + ".csv");
    out << "i,j,value\n";
    char line[96];
    for (std::size_t i = 0; i < sys.matrix.rows(); ++i)
        for (std::size_t j = 0; j < sys.matrix.cols(); ++j) {
            std::snprintf(line, sizeof line, "%zu,%zu,%.17g\n", i, j, sys.matrix(i, j));
            out << line;
        }
    if (!out)
        throw std::runtime_error("save_collocation_system: write failure on " + base + ".csv");
}

// Restores the matrix, nodes, and parameters.  Quadrature weights and
// connection coefficients are not part of the format: a loaded system
// supports inspection and nodal work, not solve_collocation's modal
// reconstruction.
inline CollocationSystem load_collocation_system(const std::string& base) {
    std::ifstream header_in(base + ".json");
    if (!header_in)
        throw std::runtime_error("load_collocation_system: cannot read " + base + ".json");
    nlohmann::json header = nlohmann::json::parse(header_in);

    CollocationSystem sys;
    const std::string kind = header.at("kind").get<std::string>();
    if (kind == "advection")
        sys.kind = EquationKind::advection;
    else if (kind == "diffusion")
        sys.kind = EquationKind::diffusion;
    else
        throw std::runtime_error("load_collocation_system: unknown kind '" + kind + "'");
    sys.n = header.at("N").get<int>();
    sys.params.lambda = header.at("lambda").get<double>();
    sys.params.nu = header.at("nu").get<double>();
    sys.params.sigma = header.at("sigma").get<double>();
    sys.nodes = header.at("nodes").get<std::vector<double>>();

    const std::size_t size = sys.nodes.size();
    sys.matrix = DenseMatrix(size, size);

    std::ifstream in(base + ".csv");
    if (!in)
        throw std::runtime_error("load_collocation_system: cannot read " + base + ".csv");
    std::string line;
    if (!std::getline(in, line) || line != "i,j,value")
        throw std::runtime_error("load_collocation_system: bad CSV header in " + base + ".csv");
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::size_t i = 0, j = 0;
        double value = 0.0;
        if (std::sscanf(line.c_str(), "%zu,%zu,%lf", &i, &j, &value) != 3)
            throw std::runtime_error("load_collocation_system: bad CSV row: " + line);
        if (i >= size || j >= size)
            throw std::runtime_error("load_collocation_system: index out of range: " + line);
        sys.matrix(i, j) = value;
        ++count;
    }
    if (count != size * size)
        throw std::runtime_error("load_collocation_system: expected " +
                                 std::to_string(size * size) + " entries, got " +
                                 std::to_string(count));
    return sys;
}

}  // namespace substantial
