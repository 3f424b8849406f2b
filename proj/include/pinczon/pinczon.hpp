#pragma once

#include "brackets.hpp"
#include "cohomology.hpp"
#include "linalg.hpp"
#include "multilinear.hpp"
#include "rational.hpp"
#include "shift.hpp"
#include "sign_engine.hpp"
#include "structures.hpp"
