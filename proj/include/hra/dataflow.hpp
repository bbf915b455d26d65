#pragma once

#include <map>
#include <string>
#include <vector>

#include "hra/access_graph.hpp"
#include "hra/ir.hpp"

namespace hra {

// Block ids in reverse postorder of a depth-first walk from Entry. Forward
// analyses iterate this order; backward analyses iterate it reversed.
std::vector<int> reverse_postorder(const CFG& cfg);

// One access graph per root variable; absent entries mean the empty graph.
using VarGraphs = std::map<std::string, AccessGraph>;

const AccessGraph& graphs_get(const VarGraphs& m, const std::string& var);
void graphs_union(VarGraphs& into, const std::string& var, const AccessGraph& g);

struct DataflowGraphs {
    std::map<int, VarGraphs> in, out;  // keyed by block id
};

}  // namespace hra
