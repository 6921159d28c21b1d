#pragma once

#include "chebls/chebyshev.hpp"
#include "chebls/diff_matrix.hpp"
#include "chebls/cubic.hpp"
#include "chebls/line_search.hpp"
#include "chebls/bfgs.hpp"
