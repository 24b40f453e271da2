#pragma once

#include "rauzy/covering.hpp"
#include "rauzy/dual.hpp"
#include "rauzy/fractal.hpp"
#include "rauzy/integer.hpp"
#include "rauzy/lattice.hpp"
#include "rauzy/spectral.hpp"
#include "rauzy/substitution.hpp"
#include "rauzy/svg.hpp"
#include "rauzy/union_find.hpp"
