#pragma once

#include "exact.hpp"
#include "gfq.hpp"
#include "growth_chain.hpp"
#include "harness.hpp"
#include "limit_law.hpp"
#include "parallel.hpp"
#include "partition.hpp"
#include "pmf.hpp"
#include "prelimit.hpp"
#include "qseries.hpp"
#include "quadrature.hpp"
#include "symfunc.hpp"
