#include "hra/access_graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hra {

std::string NodeLabel::text() const {
    switch (kind) {
        case Kind::Root: return name;
        case Kind::Field: return name + "@" + std::to_string(block) + "#" + std::to_string(instance);
        case Kind::Star: return "*";
    }
    return "";
}

AccessPath LabeledPath::path() const {
    AccessPath p(root);
    for (const auto& n : nodes) p.fields.push_back(n.name);
    return p;
}

LabeledPath LabelContext::label(const AccessPath& p, int block) {
    LabeledPath lp;
    lp.root = p.root;
    for (const auto& f : p.fields) lp.nodes.push_back(NodeLabel::field(f, block, next_[f]++));
    return lp;
}

AccessGraph AccessGraph::var(const std::string& v) {
    AccessGraph g;
    g.entry_ = NodeLabel::root(v);
    g.nodes_[g.entry_] = true;
    return g;
}

AccessGraph AccessGraph::var_star(const std::string& v) {
    AccessGraph g = var(v);
    NodeLabel s = NodeLabel::star();
    g.nodes_[s] = true;
    g.edges_.insert({g.entry_, s});
    g.edges_.insert({s, s});
    return g;
}

AccessGraph AccessGraph::path(const LabeledPath& p, PathPolicy policy) {
    AccessGraph g;
    g.entry_ = NodeLabel::root(p.root);
    bool all = policy == PathPolicy::AllFinal;
    g.nodes_[g.entry_] = all || p.nodes.empty();
    NodeLabel prev = g.entry_;
    for (size_t i = 0; i < p.nodes.size(); ++i) {
        const NodeLabel& n = p.nodes[i];
        g.nodes_[n] = all || i + 1 == p.nodes.size();
        g.edges_.insert({prev, n});
        prev = n;
    }
    return g;
}

AccessGraph AccessGraph::path_star(const LabeledPath& p) {
    AccessGraph g = path(p, PathPolicy::AllFinal);
    NodeLabel s = NodeLabel::star();
    NodeLabel last = p.nodes.empty() ? g.entry_ : p.nodes.back();
    g.nodes_[s] = true;
    g.edges_.insert({last, s});
    g.edges_.insert({s, s});
    return g;
}

std::set<NodeLabel> AccessGraph::finals() const {
    std::set<NodeLabel> out;
    for (const auto& [n, f] : nodes_)
        if (f) out.insert(n);
    return out;
}

bool AccessGraph::is_final(const NodeLabel& n) const {
    auto it = nodes_.find(n);
    return it != nodes_.end() && it->second;
}

void AccessGraph::set_final(const NodeLabel& n, bool f) { nodes_.at(n) = f; }

void AccessGraph::add_node(const NodeLabel& n, bool final_status) {
    auto [it, inserted] = nodes_.emplace(n, final_status);
    if (!inserted) it->second = it->second || final_status;
    if (n.kind == NodeLabel::Kind::Root && entry_.name.empty()) entry_ = n;
}

void AccessGraph::add_edge(const NodeLabel& from, const NodeLabel& to) {
    edges_.insert({from, to});
}

std::set<NodeLabel> AccessGraph::step(const std::set<NodeLabel>& from, const std::string& f) const {
    std::set<NodeLabel> out;
    for (const auto& [a, b] : edges_)
        if (from.count(a) && b.matches(f)) out.insert(b);
    return out;
}

bool AccessGraph::accepts(const AccessPath& p) const {
    if (empty() || p.empty() || p.root != entry_.name) return false;
    std::set<NodeLabel> states{entry_};
    for (const auto& f : p.fields) {
        states = step(states, f);
        if (states.empty()) return false;
    }
    return std::any_of(states.begin(), states.end(),
                       [&](const NodeLabel& n) { return is_final(n); });
}

std::set<AccessPath> AccessGraph::enumerate(size_t max_len,
                                            const std::vector<std::string>& star_alphabet) const {
    std::set<AccessPath> out;
    if (empty()) return out;
    std::vector<std::string> star = star_alphabet.empty()
                                        ? std::vector<std::string>{"*"}
                                        : star_alphabet;
    // Walk all bounded paths; duplicates collapse in the output set.
    std::vector<std::pair<NodeLabel, AccessPath>> work{{entry_, AccessPath(entry_.name)}};
    while (!work.empty()) {
        auto [n, p] = work.back();
        work.pop_back();
        if (is_final(n)) out.insert(p);
        if (p.length() >= max_len) continue;
        for (const auto& [a, b] : edges_) {
            if (!(a == n)) continue;
            if (b.is_star()) {
                for (const auto& f : star) work.push_back({b, p.extended(f)});
            } else {
                work.push_back({b, p.extended(b.name)});
            }
        }
    }
    return out;
}

std::set<std::pair<NodeLabel, NodeLabel>> AccessGraph::corresponding(
    const AccessGraph& pattern) const {
    std::set<std::pair<NodeLabel, NodeLabel>> cn;
    if (empty() || pattern.empty() || entry_.name != pattern.entry_.name) return cn;
    std::vector<std::pair<NodeLabel, NodeLabel>> work{{entry_, pattern.entry_}};
    while (!work.empty()) {
        auto pr = work.back();
        work.pop_back();
        if (!cn.insert(pr).second) continue;
        for (const auto& [a, b] : edges_) {
            if (!(a == pr.first)) continue;
            for (const auto& [a2, b2] : pattern.edges_) {
                if (!(a2 == pr.second)) continue;
                if (b.is_star() || b2.is_star() || b.name == b2.name)
                    work.push_back({b, b2});
            }
        }
    }
    return cn;
}

std::set<NodeLabel> AccessGraph::acn(const AccessGraph& pattern,
                                     const std::set<NodeLabel>& m) const {
    std::set<NodeLabel> out;
    for (const auto& [n, n2] : corresponding(pattern))
        if (m.count(n2)) out.insert(n);
    return out;
}

bool AccessGraph::unique_access_path(const NodeLabel& target) const {
    // Restrict to nodes lying on some entry-to-target walk.
    std::set<NodeLabel> fwd, bwd;
    std::vector<NodeLabel> work{entry_};
    while (!work.empty()) {
        NodeLabel n = work.back();
        work.pop_back();
        if (!fwd.insert(n).second) continue;
        for (const auto& [a, b] : edges_)
            if (a == n) work.push_back(b);
    }
    work.push_back(target);
    while (!work.empty()) {
        NodeLabel n = work.back();
        work.pop_back();
        if (!bwd.insert(n).second) continue;
        for (const auto& [a, b] : edges_)
            if (b == n) work.push_back(a);
    }
    std::set<NodeLabel> on;
    for (const auto& n : fwd)
        if (bwd.count(n)) on.insert(n);
    if (!on.count(target)) return true;  // unreachable, vacuously unique

    // Any cycle within this subgraph gives infinitely many walks.
    std::map<NodeLabel, int> color;  // 0 white, 1 gray, 2 black
    std::vector<std::pair<NodeLabel, bool>> stack{{entry_, false}};
    while (!stack.empty()) {
        auto [n, done] = stack.back();
        stack.pop_back();
        if (done) {
            color[n] = 2;
            continue;
        }
        if (color[n] == 1) continue;
        if (color[n] == 2) continue;
        color[n] = 1;
        stack.push_back({n, true});
        for (const auto& [a, b] : edges_) {
            if (!(a == n) || !on.count(b)) continue;
            if (color[b] == 1) return false;  // back edge, cycle
            if (color[b] == 0) stack.push_back({b, false});
        }
    }

    // The subgraph is a DAG; compare the spellings of all entry-to-target paths.
    std::vector<std::pair<NodeLabel, std::vector<std::string>>> walks{{entry_, {}}};
    std::vector<std::string> spelling;
    bool have = false;
    while (!walks.empty()) {
        auto [n, word] = walks.back();
        walks.pop_back();
        if (n == target) {
            if (have && word != spelling) return false;
            spelling = word;
            have = true;
            continue;
        }
        for (const auto& [a, b] : edges_) {
            if (!(a == n) || !on.count(b)) continue;
            auto w = word;
            w.push_back(b.is_star() ? "*" : b.name);
            walks.push_back({b, std::move(w)});
        }
    }
    return true;
}

AccessGraph AccessGraph::union_(const AccessGraph& a, const AccessGraph& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.entry_.name != b.entry_.name)
        throw std::logic_error("union of access graphs with different roots");
    AccessGraph r = a;
    for (const auto& [n, f] : b.nodes_) {
        auto [it, inserted] = r.nodes_.emplace(n, f);
        if (!inserted) it->second = it->second || f;  // final wins
    }
    r.edges_.insert(b.edges_.begin(), b.edges_.end());
    return r;
}

AccessGraph AccessGraph::remove_path(const AccessPath& rho) const {
    if (empty() || rho.empty()) return *this;
    if (rho.root != entry_.name) return *this;
    if (rho.simple()) return AccessGraph{};  // the root itself is redefined

    LabelContext ctx;
    AccessGraph pattern = path(ctx.label(rho.base(), 0), PathPolicy::LastFinal);
    // The pattern is a chain, so its single final node is the last one.
    std::set<NodeLabel> m = pattern.finals();
    std::set<NodeLabel> candidates = acn(pattern, m);

    AccessGraph r = *this;
    for (const auto& n : candidates) {
        if (!unique_access_path(n)) continue;
        std::erase_if(r.edges_, [&](const Edge& e) {
            return e.first == n && e.second.kind == NodeLabel::Kind::Field &&
                   e.second.name == rho.frontier();
        });
    }
    return r.cleanup();
}

std::vector<RemainderGraph> AccessGraph::factorize(const AccessGraph& pattern,
                                                   const std::set<NodeLabel>& m) const {
    std::set<RemainderGraph> out;
    for (const auto& n : acn(pattern, m)) {
        bool has_succ = std::any_of(edges_.begin(), edges_.end(),
                                    [&](const Edge& e) { return e.first == n; });
        if (!has_succ) {
            RemainderGraph eps;
            eps.epsilon = true;
            out.insert(eps);
            continue;
        }
        RemainderGraph r;
        std::vector<NodeLabel> work;
        for (const auto& [a, b] : edges_)
            if (a == n) {
                r.entries.insert(b);
                work.push_back(b);
            }
        std::set<NodeLabel> seen;
        while (!work.empty()) {
            NodeLabel cur = work.back();
            work.pop_back();
            if (!seen.insert(cur).second) continue;
            r.nodes[cur] = is_final(cur);
            for (const auto& [a, b] : edges_)
                if (a == cur) {
                    work.push_back(b);
                    r.edges.insert({a, b});
                }
        }
        out.insert(std::move(r));
    }
    return {out.begin(), out.end()};
}

AccessGraph AccessGraph::extend(const AccessGraph& g, const std::set<NodeLabel>& m,
                                const RemainderGraph& r, ExtendMode mode) {
    if (g.empty()) return g;
    AccessGraph out = g;
    if (mode == ExtendMode::FromRemainder)
        for (auto& [n, f] : out.nodes_) f = false;
    if (r.epsilon) {
        // The appended suffix is empty: accepted words end exactly at m.
        if (mode == ExtendMode::FromRemainder)
            for (const auto& n : m) out.nodes_.at(n) = true;
        return out;
    }
    for (const auto& [n, f] : r.nodes) {
        auto [it, inserted] = out.nodes_.emplace(n, f);
        if (!inserted)
            it->second = mode == ExtendMode::FromRemainder ? f : (it->second || f);
    }
    out.edges_.insert(r.edges.begin(), r.edges.end());
    for (const auto& n : m)
        for (const auto& e : r.entries) out.edges_.insert({n, e});
    return out;
}

AccessGraph AccessGraph::extend_all(const AccessGraph& g, const std::set<NodeLabel>& m,
                                    const std::vector<RemainderGraph>& rs, ExtendMode mode) {
    AccessGraph out;
    for (const auto& r : rs) out = union_(out, extend(g, m, r, mode));
    return out;
}

AccessGraph AccessGraph::cleanup() const {
    if (empty()) return *this;
    std::set<NodeLabel> reach;
    std::vector<NodeLabel> work{entry_};
    while (!work.empty()) {
        NodeLabel n = work.back();
        work.pop_back();
        if (!reach.insert(n).second) continue;
        for (const auto& [a, b] : edges_)
            if (a == n) work.push_back(b);
    }
    // Among reachable nodes, keep those that can still reach a final node.
    std::set<NodeLabel> keep;
    for (const auto& n : reach)
        if (is_final(n)) {
            keep.insert(n);
            work.push_back(n);
        }
    while (!work.empty()) {
        NodeLabel n = work.back();
        work.pop_back();
        for (const auto& [a, b] : edges_)
            if (b == n && reach.count(a) && keep.insert(a).second) work.push_back(a);
    }
    if (!keep.count(entry_)) return AccessGraph{};
    AccessGraph r;
    r.entry_ = entry_;
    for (const auto& n : keep) r.nodes_[n] = is_final(n);
    for (const auto& e : edges_)
        if (keep.count(e.first) && keep.count(e.second)) r.edges_.insert(e);
    return r;
}

bool AccessGraph::leq(const AccessGraph& a, const AccessGraph& b) {
    if (b.empty()) return true;
    if (a.empty()) return false;
    if (a.entry_.name != b.entry_.name) return false;
    for (const auto& [n, f] : b.nodes_) {
        auto it = a.nodes_.find(n);
        if (it == a.nodes_.end()) return false;
        if (f && !it->second) return false;
    }
    return std::includes(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end());
}

std::string AccessGraph::canonical_text() const {
    if (empty()) return "<empty>";
    std::ostringstream out;
    out << entry_.name << ":";
    for (const auto& [a, b] : edges_) out << " " << a.text() << "->" << b.text() << ";";
    out << " final={";
    bool first = true;
    for (const auto& [n, f] : nodes_) {
        if (!f) continue;
        out << (first ? "" : ",") << n.text();
        first = false;
    }
    out << "}";
    return out.str();
}

std::string AccessGraph::dot(const std::string& graph_name) const {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n  rankdir=LR;\n";
    for (const auto& [n, f] : nodes_) {
        out << "  \"" << n.text() << "\" [shape=" << (f ? "doublecircle" : "circle");
        if (n == entry_) out << ", style=bold";
        out << "];\n";
    }
    for (const auto& [a, b] : edges_)
        out << "  \"" << a.text() << "\" -> \"" << b.text() << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace hra
