#pragma once

// Squeezed-vacuum propagation through a dispersive absorbing/amplifying
// slab: complex susceptibility models, Fabry-Perot transfer coefficients,
// nonequilibrium noise emission, and the output squeezing spectrum.

#include "sqslab/config.hpp"
#include "sqslab/constants.hpp"
#include "sqslab/csv.hpp"
#include "sqslab/dielectric.hpp"
#include "sqslab/emission.hpp"
#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"
#include "sqslab/parallel.hpp"
#include "sqslab/pipeline.hpp"
#include "sqslab/slab.hpp"
#include "sqslab/squeezing.hpp"
