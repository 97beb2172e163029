#pragma once

// Umbrella header for the transition-region asymptotics laboratory.

#include "hirota/airy.hpp"
#include "hirota/asymptotics.hpp"
#include "hirota/errors.hpp"
#include "hirota/grid.hpp"
#include "hirota/harness.hpp"
#include "hirota/interp.hpp"
#include "hirota/io.hpp"
#include "hirota/ode.hpp"
#include "hirota/painleve2.hpp"
#include "hirota/parallel.hpp"
#include "hirota/pde.hpp"
#include "hirota/phase.hpp"
#include "hirota/quadrature.hpp"
#include "hirota/scattering.hpp"
