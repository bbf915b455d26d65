#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hra/access_path.hpp"

namespace hra {

// Graph nodes are identified by their label. A Root label names the entry
// node of a per-variable graph; a Field label records the field name together
// with the block and the occurrence index within that block that created it;
// the Star label is the summary node that matches any field.
struct NodeLabel {
    enum class Kind { Root, Field, Star };
    Kind kind = Kind::Root;
    std::string name;   // variable or field name; empty for Star
    int block = 0;      // Field only
    int instance = 0;   // Field only

    static NodeLabel root(std::string var) {
        return {Kind::Root, std::move(var), 0, 0};
    }
    static NodeLabel field(std::string f, int block, int instance) {
        return {Kind::Field, std::move(f), block, instance};
    }
    static NodeLabel star() { return {Kind::Star, "", 0, 0}; }

    bool is_star() const { return kind == Kind::Star; }
    // True when an edge into this node can be taken while reading `f`.
    bool matches(const std::string& f) const {
        return kind == Kind::Star || (kind == Kind::Field && name == f);
    }

    std::string text() const;
    auto operator<=>(const NodeLabel&) const = default;
};

using Edge = std::pair<NodeLabel, NodeLabel>;

// An access path whose field occurrences have been assigned node labels.
struct LabeledPath {
    std::string root;
    std::vector<NodeLabel> nodes;  // Field labels, in path order

    AccessPath path() const;
    bool simple() const { return nodes.empty(); }
};

// Assigns occurrence indices to field names. One context is used per block,
// labeling the paths of its statement left to right, left-hand side first,
// so instance numbers are deterministic.
class LabelContext {
public:
    LabeledPath label(const AccessPath& p, int block);

private:
    std::map<std::string, int> next_;
};

// A remainder produced by factorization: the part of a graph that hangs off
// the corresponding nodes of a matched pattern. `epsilon` marks the empty
// remainder, produced when a corresponding node has no outgoing edges.
struct RemainderGraph {
    bool epsilon = false;
    std::set<NodeLabel> entries;
    std::map<NodeLabel, bool> nodes;  // label -> is final
    std::set<Edge> edges;

    auto operator<=>(const RemainderGraph&) const = default;
};

enum class PathPolicy { AllFinal, LastFinal };

// Node status handling when a graph is extended with a remainder.
//  - Preserve: every node keeps its status; a label present on both sides is
//    final if either side says so. Used by the explicit-liveness transfer,
//    where it keeps results prefix-closed.
//  - FromRemainder: the base graph's nodes are demoted to intermediate and a
//    label present in the remainder takes its status from there. Used when a
//    liveness graph is transplanted onto an alias.
enum class ExtendMode { Preserve, FromRemainder };

class AccessGraph {
public:
    AccessGraph() = default;  // the empty graph, accepts nothing

    static AccessGraph var(const std::string& v);             // root, final
    static AccessGraph var_star(const std::string& v);        // root + star
    static AccessGraph path(const LabeledPath& p, PathPolicy policy);
    static AccessGraph path_star(const LabeledPath& p);       // all final + star

    bool empty() const { return nodes_.empty(); }
    const std::string& root() const { return entry_.name; }
    const NodeLabel& entry() const { return entry_; }
    const std::map<NodeLabel, bool>& nodes() const { return nodes_; }
    const std::set<Edge>& edges() const { return edges_; }
    std::set<NodeLabel> finals() const;

    bool is_final(const NodeLabel& n) const;
    void set_final(const NodeLabel& n, bool f);
    void add_node(const NodeLabel& n, bool final_status);
    void add_edge(const NodeLabel& from, const NodeLabel& to);

    // NFA-style membership over node labels; the empty path is never a member.
    bool accepts(const AccessPath& p) const;

    // Accepted paths with at most max_len names. Star transitions expand to
    // each field of `star_alphabet`, or to the literal name "*" if it is empty.
    std::set<AccessPath> enumerate(size_t max_len,
                                   const std::vector<std::string>& star_alphabet = {}) const;

    // Pairs (n, n') such that some common word leads the graph to n and the
    // pattern to n'.
    std::set<std::pair<NodeLabel, NodeLabel>> corresponding(const AccessGraph& pattern) const;
    // Nodes of this graph corresponding to a pattern node in m.
    std::set<NodeLabel> acn(const AccessGraph& pattern, const std::set<NodeLabel>& m) const;

    // True when every walk from the entry to n spells the same word and no
    // such walk passes through a cycle.
    bool unique_access_path(const NodeLabel& n) const;

    static AccessGraph union_(const AccessGraph& a, const AccessGraph& b);

    // Deletes the last edge of rho where it is unambiguous, then cleans up.
    // Removing a simple path empties the graph (the root is redefined).
    AccessGraph remove_path(const AccessPath& rho) const;

    // Remainders of this graph with respect to a matched pattern; m selects
    // the pattern nodes at which remainders are taken.
    std::vector<RemainderGraph> factorize(const AccessGraph& pattern,
                                          const std::set<NodeLabel>& m) const;

    // Appends the remainder at every node of m.
    static AccessGraph extend(const AccessGraph& g, const std::set<NodeLabel>& m,
                              const RemainderGraph& r, ExtendMode mode);
    // Union of extensions over a remainder set; empty set yields the empty graph.
    static AccessGraph extend_all(const AccessGraph& g, const std::set<NodeLabel>& m,
                                  const std::vector<RemainderGraph>& rs, ExtendMode mode);

    // Drops nodes unreachable from the entry and intermediate nodes from
    // which no final node can be reached, iterated to a fixpoint.
    AccessGraph cleanup() const;

    // Partial order: a <= b iff b's finals are final in a, b's intermediates
    // are present in a, and b's edges are edges of a. Smaller means "accepts
    // at least as much".
    static bool leq(const AccessGraph& a, const AccessGraph& b);

    std::string canonical_text() const;
    std::string dot(const std::string& graph_name = "G") const;

    bool operator==(const AccessGraph&) const = default;
    auto operator<=>(const AccessGraph&) const = default;

private:
    NodeLabel entry_;
    std::map<NodeLabel, bool> nodes_;  // label -> is final
    std::set<Edge> edges_;

    std::set<NodeLabel> step(const std::set<NodeLabel>& from, const std::string& f) const;
};

}  // namespace hra
