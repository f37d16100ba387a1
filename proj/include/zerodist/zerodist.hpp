#pragma once

#include "zerodist/analysis.hpp"
#include "zerodist/balance.hpp"
#include "zerodist/errors.hpp"
#include "zerodist/generate.hpp"
#include "zerodist/kahan.hpp"
#include "zerodist/logmeasure.hpp"
#include "zerodist/points.hpp"
#include "zerodist/product.hpp"
#include "zerodist/quadrature.hpp"
