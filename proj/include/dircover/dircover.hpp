#pragma once

#include "arc.hpp"
#include "continuous.hpp"
#include "cover.hpp"
#include "csv.hpp"
#include "discrete.hpp"
#include "geometry.hpp"
#include "hex_pattern.hpp"
#include "hull.hpp"
#include "instance.hpp"
#include "nelder_mead.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "rng.hpp"
