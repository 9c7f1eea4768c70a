#pragma once

#include <span>
#include <vector>

#include "tracefn/common.hpp"

namespace tracefn {

/// Worker cap shared by every parallel loop. Initialised from
/// TRACEFN_LAB_THREADS when set; results never depend on the value.
int thread_count();
void set_thread_count(int n);

/// Pairwise (tree) summation. The split points depend only on the length,
/// so the result is reproducible regardless of how the addends were produced.
cplx pairwise_sum(std::span<const cplx> xs);
double pairwise_sum(std::span<const double> xs);

}  // namespace tracefn
