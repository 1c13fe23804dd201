#pragma once

#include "paratile/errors.hpp"
#include "paratile/rational.hpp"
#include "paratile/lp.hpp"
#include "paratile/polytope.hpp"
#include "paratile/lattice.hpp"
#include "paratile/tiling.hpp"
#include "paratile/scaling.hpp"
#include "paratile/lifting.hpp"
#include "paratile/hypercomb.hpp"
#include "paratile/syssolve.hpp"
