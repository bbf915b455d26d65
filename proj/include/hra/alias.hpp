#pragma once

#include "hra/dataflow.hpp"

namespace hra {

// One side of a may-alias pair: the access graph recording where the pair was
// created, the canonical spelling of that path, and a star flag marking a
// conservative "anything below this path" side.
struct AliasSide {
    AccessGraph graph;
    AccessPath path;
    bool star = false;

    auto operator<=>(const AliasSide&) const = default;
};

// A may-alias pair. `lhs` holds the shorter of the two paths (for assignment
// pairs with equal lengths, the statement's right-hand side) purely so the
// stored form is canonical; the relation itself is symmetric.
struct AliasPair {
    AliasSide lhs, rhs;
    int block = 0;  // block whose statement created the pair

    auto operator<=>(const AliasPair&) const = default;
};

using AliasSet = std::set<AliasPair>;

struct AliasResult {
    std::map<int, AliasSet> in, out;
};

// Forward may-alias analysis. Pairs are never killed; assignments with an
// access-expression right-hand side generate one pair, calls generate
// conservative star pairs over the argument and the globals. When not null,
// `passes` receives the number of round-robin sweeps the fixpoint needed.
AliasResult may_alias(const Program& prog, size_t* passes = nullptr);

// Paths that may name the same link as rho under the given alias pairs.
// Includes rho itself. Star-flagged results cover their whole cone.
std::set<PathOrStar> lna(const AccessPath& rho, const AliasSet& aliases);

// Transplants what is live under the source side onto the target side:
// target_graph joined with the source suffixes re-rooted at the target path.
AccessGraph lng(const AccessGraph& target_graph, const AccessGraph& source_graph,
                const AliasSide& source_side, const AliasSide& target_side);

// Liveness closed under aliasing: at every program point the explicit
// liveness is transplanted across the may-alias pairs holding there, and the
// result propagates through the ordinary backward transfer. When not null,
// `passes` receives the number of round-robin sweeps the fixpoint needed.
DataflowGraphs complete_liveness(const Program& prog, const AliasResult& aliases,
                                 size_t* passes = nullptr);

}  // namespace hra
