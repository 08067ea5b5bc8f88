#pragma once

#include "dirac_bounds/channel.hpp"
#include "dirac_bounds/comparison.hpp"
#include "dirac_bounds/dirac_solver.hpp"
#include "dirac_bounds/envelope.hpp"
#include "dirac_bounds/errors.hpp"
#include "dirac_bounds/exact_spectra.hpp"
#include "dirac_bounds/potential.hpp"
#include "dirac_bounds/radial_solver.hpp"
#include "dirac_bounds/roots.hpp"
