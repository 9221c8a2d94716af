#pragma once

#include "qre/bounds.hpp"
#include "qre/channels.hpp"
#include "qre/classical.hpp"
#include "qre/divergences.hpp"
#include "qre/eigen.hpp"
#include "qre/matrix.hpp"
#include "qre/montecarlo.hpp"
#include "qre/random.hpp"
#include "qre/state.hpp"
#include "qre/surrogate.hpp"
#include "qre/thermo.hpp"
#include "qre/verify.hpp"
