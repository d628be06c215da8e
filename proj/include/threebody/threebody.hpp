#pragma once

#include "threebody/calibration.hpp"
#include "threebody/config.hpp"
#include "threebody/core_model.hpp"
#include "threebody/eigensolver.hpp"
#include "threebody/errors.hpp"
#include "threebody/grid.hpp"
#include "threebody/grid_oracle.hpp"
#include "threebody/jacobi.hpp"
#include "threebody/noninteracting.hpp"
#include "threebody/one_body.hpp"
#include "threebody/oscillator_ops.hpp"
#include "threebody/solvable.hpp"
#include "threebody/symmetry.hpp"
#include "threebody/tps_dynamics.hpp"
#include "threebody/tridiagonal.hpp"
