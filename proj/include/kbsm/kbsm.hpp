#pragma once

#include "kbsm/error.hpp"
#include "kbsm/poly.hpp"
#include "kbsm/diagram.hpp"
#include "kbsm/moves.hpp"
#include "kbsm/skein.hpp"
#include "kbsm/lens.hpp"
#include "kbsm/lift.hpp"
#include "kbsm/congruence.hpp"
