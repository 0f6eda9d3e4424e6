#pragma once

#include "nbtail/chvatal.hpp"
#include "nbtail/errors.hpp"
#include "nbtail/nbdist.hpp"
#include "nbtail/oracle.hpp"
#include "nbtail/prob_value.hpp"
#include "nbtail/quadrature.hpp"
#include "nbtail/rational.hpp"
#include "nbtail/sampler.hpp"
#include "nbtail/specfun.hpp"
#include "nbtail/summation.hpp"
