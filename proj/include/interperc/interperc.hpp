#pragma once

#include "brownian.hpp"
#include "circle.hpp"
#include "criteria.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "interpolate.hpp"
#include "parallel.hpp"
#include "percolation.hpp"
#include "piecewise.hpp"
#include "random_set.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "svg.hpp"
#include "variation.hpp"
