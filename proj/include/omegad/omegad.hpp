#pragma once

#include "omegad/rational.hpp"
#include "omegad/interval.hpp"
#include "omegad/linalg.hpp"
#include "omegad/multivector.hpp"
#include "omegad/lattice.hpp"
#include "omegad/subspace.hpp"
#include "omegad/ext_real.hpp"
#include "omegad/transfer.hpp"
#include "omegad/exponents.hpp"
#include "omegad/points.hpp"
