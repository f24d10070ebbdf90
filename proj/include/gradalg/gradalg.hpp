#pragma once

#include "calculus.hpp"
#include "continuous.hpp"
#include "elements.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "semigroups.hpp"
#include "verify.hpp"
#include "weights.hpp"
