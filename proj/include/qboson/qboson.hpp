#pragma once

#include "scalars.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "algebra.hpp"
#include "pairing.hpp"
#include "doubles.hpp"
#include "action.hpp"
#include "category_o.hpp"
#include "expr.hpp"
#include "module_io.hpp"
#include "verify.hpp"
