#include "hra/dataflow.hpp"

namespace hra {

std::vector<int> reverse_postorder(const CFG& cfg) {
    std::vector<int> post;
    std::vector<bool> seen(cfg.blocks.size(), false);
    // Iterative DFS with an explicit done marker to record postorder.
    std::vector<std::pair<int, bool>> stack{{cfg.entry, false}};
    while (!stack.empty()) {
        auto [id, done] = stack.back();
        stack.pop_back();
        if (done) {
            post.push_back(id);
            continue;
        }
        if (seen[size_t(id)]) continue;
        seen[size_t(id)] = true;
        stack.push_back({id, true});
        const auto& succs = cfg.block(id).succs;
        for (auto it = succs.rbegin(); it != succs.rend(); ++it)
            if (!seen[size_t(*it)]) stack.push_back({*it, false});
    }
    return {post.rbegin(), post.rend()};
}

const AccessGraph& graphs_get(const VarGraphs& m, const std::string& var) {
    static const AccessGraph empty;
    auto it = m.find(var);
    return it == m.end() ? empty : it->second;
}

void graphs_union(VarGraphs& into, const std::string& var, const AccessGraph& g) {
    if (g.empty()) return;
    auto it = into.find(var);
    if (it == into.end())
        into[var] = g;
    else
        it->second = AccessGraph::union_(it->second, g);
}

}  // namespace hra
