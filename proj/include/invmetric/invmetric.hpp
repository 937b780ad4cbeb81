#pragma once

// Umbrella header.

#include "invmetric/applications.hpp"
#include "invmetric/complex.hpp"
#include "invmetric/densities.hpp"
#include "invmetric/domains.hpp"
#include "invmetric/errors.hpp"
#include "invmetric/geodesy.hpp"
#include "invmetric/grid.hpp"
#include "invmetric/holomaps.hpp"
#include "invmetric/io.hpp"
#include "invmetric/quadrature.hpp"
#include "invmetric/random.hpp"
#include "invmetric/verify.hpp"
