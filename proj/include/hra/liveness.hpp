#pragma once

#include "hra/dataflow.hpp"

namespace hra {

// Backward fixpoint over access graphs. At Exit every global is live through
// all its fields; everything else starts empty. When not null, `passes`
// receives the number of round-robin sweeps the fixpoint needed.
DataflowGraphs explicit_liveness(const Program& prog, size_t* passes = nullptr);

// The per-block transfer function of the explicit liveness analysis, exposed
// so properties of individual flow functions can be tested directly.
VarGraphs liveness_transfer(const Program& prog, int block, const VarGraphs& out);

}  // namespace hra
