#pragma once

#include "hra/alias.hpp"

namespace hra {

// Per-point results of a path-set analysis, keyed by block id.
struct PathSetFlow {
    std::map<int, PathSet> in, out;
};

// Transfer functions of single statements, exposed for testing. The input set
// must be finite; a universal set never reaches a transfer because the
// iteration starts at the boundary block whose value is finite.
PathSet statement_avail(const Program& prog, int block, const PathSet& x,
                        const AliasSet& aliases_in);
PathSet statement_ant(const Program& prog, int block, const PathSet& x,
                      const AliasSet& aliases_out);

// Availability: forward must-analysis. A path is available at a point when it
// is guaranteed non-null there along every incoming control flow path.
// Merge is intersection; everything except In(Entry) starts universal.
PathSetFlow availability(const Program& prog, const AliasResult& aliases,
                         size_t* passes = nullptr);

// Anticipability: backward must-analysis. A path is anticipable at a point
// when every outgoing control flow path dereferences it before releasing it.
PathSetFlow anticipability(const Program& prog, const AliasResult& aliases,
                           size_t* passes = nullptr);

}  // namespace hra
