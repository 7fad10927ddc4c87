#pragma once

// Spectral solvers for substantial (tempered) fractional differential
// equations of orders 1-nu and 2-nu on the half line: modified Laguerre
// bases, diagonal Petrov-Galerkin schemes, explicit collocation matrices,
// and the supporting quadrature and special-function kernels.
//
// collocation_io.hpp (matrix serialization) is not pulled in here; include
// it directly where needed, it brings a JSON dependency.

#include "substantial/collocation.hpp"
#include "substantial/experiments.hpp"
#include "substantial/laguerre.hpp"
#include "substantial/linalg.hpp"
#include "substantial/mlf.hpp"
#include "substantial/oracle.hpp"
#include "substantial/petrov_galerkin.hpp"
#include "substantial/quadrature.hpp"
#include "substantial/special_functions.hpp"
