#pragma once

#include "sl2lab/char_orbital.hpp"
#include "sl2lab/config.hpp"
#include "sl2lab/dense_matrix.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/fock_virasoro.hpp"
#include "sl2lab/matrix_core.hpp"
#include "sl2lab/modular_lift.hpp"
#include "sl2lab/qexpansion.hpp"
#include "sl2lab/quadrature.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/repn_model.hpp"
#include "sl2lab/scalar.hpp"
#include "sl2lab/suites.hpp"
#include "sl2lab/text_format.hpp"
#include "sl2lab/trace_poisson.hpp"
