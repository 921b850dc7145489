#pragma once

#include "purity/chebyshev.hpp"
#include "purity/csv.hpp"
#include "purity/dynamics.hpp"
#include "purity/eigensolve.hpp"
#include "purity/error.hpp"
#include "purity/full_markov.hpp"
#include "purity/modular_rank.hpp"
#include "purity/montecarlo.hpp"
#include "purity/power_sum.hpp"
#include "purity/protocol.hpp"
#include "purity/reduction.hpp"
#include "purity/spectral.hpp"
