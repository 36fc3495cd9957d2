#pragma once

// Umbrella header: contour quadrature for functions of self-adjoint
// elliptic operators (fractional powers and Mittag-Leffler evolutions),
// with model problems and an experiment harness.

#include "fraccal/contour.hpp"
#include "fraccal/harness.hpp"
#include "fraccal/models.hpp"
#include "fraccal/operator.hpp"
#include "fraccal/quadrature.hpp"
#include "fraccal/special.hpp"
