#pragma once

#include "claims.hpp"
#include "constructions.hpp"
#include "convex_layers.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "point_set.hpp"
#include "predicates.hpp"
#include "rational.hpp"
#include "spectrum.hpp"
#include "sum2squares.hpp"
