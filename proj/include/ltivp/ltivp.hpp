#pragma once

#include "ltivp/error.hpp"
#include "ltivp/format.hpp"
#include "ltivp/ic.hpp"
#include "ltivp/laplace.hpp"
#include "ltivp/ode.hpp"
#include "ltivp/poly.hpp"
#include "ltivp/realization.hpp"
#include "ltivp/signal.hpp"
#include "ltivp/simulate.hpp"
