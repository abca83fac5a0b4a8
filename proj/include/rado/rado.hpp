#pragma once

#include "rado/cnf.hpp"
#include "rado/coloring.hpp"
#include "rado/core.hpp"
#include "rado/formula.hpp"
#include "rado/solutions.hpp"
#include "rado/solver.hpp"
#include "rado/witness.hpp"
