#pragma once

// Subgroups of the modular group PSL2(Z) = <a, b | a^2 = b^3 = 1> through
// their Stallings graphs: construction, silhouetting, algebraic analysis,
// uniform sampling, exhaustive oracles and Monte Carlo experiments.

#include "analysis.hpp"
#include "counting.hpp"
#include "experiment.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "sampler.hpp"
#include "serialize.hpp"
#include "silhouette.hpp"
#include "stallings.hpp"
#include "union_find.hpp"
#include "word.hpp"
