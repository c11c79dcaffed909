#pragma once

#include "analytic.hpp"
#include "coding.hpp"
#include "determinant.hpp"
#include "double_double.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "moebius.hpp"
#include "operator.hpp"
#include "parallel.hpp"
#include "period.hpp"
#include "verify.hpp"
#include "zeta.hpp"
