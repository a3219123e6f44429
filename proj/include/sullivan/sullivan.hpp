#pragma once

// Umbrella header for the whole engine.

#include "sullivan/rational.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/graded_algebra.hpp"
#include "sullivan/cdga.hpp"
#include "sullivan/models.hpp"
#include "sullivan/reduction.hpp"
#include "sullivan/ring.hpp"
#include "sullivan/expr_io.hpp"
#include "sullivan/verify.hpp"
