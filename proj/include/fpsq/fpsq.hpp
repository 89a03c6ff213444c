#pragma once

#include "fpsq/errors.hpp"
#include "fpsq/expr.hpp"
#include "fpsq/lagrange.hpp"
#include "fpsq/rational.hpp"
#include "fpsq/serialize.hpp"
#include "fpsq/series.hpp"
#include "fpsq/verify.hpp"
