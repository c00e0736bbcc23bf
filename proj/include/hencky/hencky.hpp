#pragma once

// Umbrella header for the numerical core. I/O and report serialization live
// in hencky/io.hpp, which additionally needs the vendored JSON parser.

#include "hencky/dexp.hpp"
#include "hencky/duality.hpp"
#include "hencky/errors.hpp"
#include "hencky/fenchel.hpp"
#include "hencky/kinematics.hpp"
#include "hencky/materials.hpp"
#include "hencky/quadrature.hpp"
#include "hencky/sampling.hpp"
#include "hencky/spectral.hpp"
#include "hencky/sweeps.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"
