#pragma once

#include "shady/errors.hpp"
#include "shady/farkas.hpp"
#include "shady/lp.hpp"
#include "shady/matrix.hpp"
#include "shady/mpoly.hpp"
#include "shady/polytope.hpp"
#include "shady/projections.hpp"
#include "shady/random.hpp"
#include "shady/rational.hpp"
#include "shady/reproduce.hpp"
#include "shady/shady_tests.hpp"
#include "shady/sos.hpp"
