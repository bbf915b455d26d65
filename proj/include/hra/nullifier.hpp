#pragma once

#include "hra/avail_ant.hpp"

namespace hra {

// Results of all four analyses over one program, bundled because the
// insertion predicates need every one of them.
struct Analyses {
    AliasResult aliases;
    DataflowGraphs complete;  // liveness closed under aliasing
    PathSetFlow avail, ant;
};

Analyses analyze_all(const Program& prog);

// A null assignment placed at a program point: before the statement of
// `block` (at_entry) or right after it, before any branch.
struct Insertion {
    AccessPath path;
    int block = 0;
    bool at_entry = false;

    auto operator<=>(const Insertion&) const = default;
};

struct NullifyResult {
    Program modified;
    std::vector<Insertion> insertions;  // block order; In before Out
};

// A path can be nulled at a point when it is not live there and its base is
// guaranteed accessible (available or anticipable). The synthetic Entry and
// Exit blocks are never insertion sites.
bool nullable(const Program& prog, const Analyses& an, const AccessPath& rho, int block,
              bool at_entry);

// True when the statement of `block` cannot modify the link named by rho or
// by any of its prefixes.
bool transparent(const Program& prog, const Analyses& an, const AccessPath& rho, int block);

// Insertion candidates at a point: every root variable, plus one-field
// extensions of the accessible paths; shortest first, then lexicographic.
std::vector<AccessPath> candidates(const Program& prog, const Analyses& an, int block,
                                   bool at_entry);

NullifyResult insert_nulls(const Program& prog, const Analyses& an);
NullifyResult insert_nulls(const Program& prog);

}  // namespace hra
