// Umbrella header: the whole library in one include.

#pragma once

#include "matrix.hpp"     // IWYU pragma: export
#include "eigen.hpp"      // IWYU pragma: export
#include "numeric.hpp"    // IWYU pragma: export
#include "states.hpp"     // IWYU pragma: export
#include "entanglement.hpp"  // IWYU pragma: export
#include "teleport.hpp"   // IWYU pragma: export
#include "sweep.hpp"      // IWYU pragma: export
#include "verify.hpp"     // IWYU pragma: export
