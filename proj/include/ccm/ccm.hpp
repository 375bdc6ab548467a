#pragma once

// Umbrella header for the circumcenter-of-mass geometry library.

#include "ccm/chain.hpp"
#include "ccm/error.hpp"
#include "ccm/generators.hpp"
#include "ccm/io.hpp"
#include "ccm/linalg.hpp"
#include "ccm/random.hpp"
#include "ccm/simplex.hpp"
#include "ccm/spherical.hpp"
#include "ccm/vec.hpp"
#include "ccm/verify.hpp"
