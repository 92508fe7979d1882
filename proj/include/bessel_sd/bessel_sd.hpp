#pragma once

#include "bessel_sd/asymptotics.hpp"
#include "bessel_sd/contour.hpp"
#include "bessel_sd/core_types.hpp"
#include "bessel_sd/dispatch.hpp"
#include "bessel_sd/errors.hpp"
#include "bessel_sd/evaluators.hpp"
#include "bessel_sd/log_gamma.hpp"
#include "bessel_sd/quadrature.hpp"
#include "bessel_sd/scaled_complex.hpp"
#include "bessel_sd/validation.hpp"
