#pragma once

#include "eberlein/blockmat.hpp"
#include "eberlein/driver.hpp"
#include "eberlein/error.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/matrix.hpp"
#include "eberlein/matrix_market.hpp"
#include "eberlein/partition.hpp"
#include "eberlein/pivot.hpp"
#include "eberlein/random.hpp"
#include "eberlein/report.hpp"
#include "eberlein/shear_stage.hpp"
#include "eberlein/unitary_stage.hpp"
