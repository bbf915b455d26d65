#include "hra/alias.hpp"

#include <stdexcept>

#include "hra/liveness.hpp"

namespace hra {
namespace {

AliasSide exact_side(const LabeledPath& lp) {
    return {AccessGraph::path(lp, PathPolicy::LastFinal), lp.path(), false};
}

AliasSide star_side(const LabeledPath& lp) {
    return {AccessGraph::path_star(lp), lp.path(), true};
}

AliasSet alias_transfer(const Program& prog, const Block& b, AliasSet in) {
    const Statement& st = b.stmt;
    LabelContext ctx;
    switch (st.kind) {
        case StmtKind::Assign: {
            LabeledPath lx = ctx.label(st.lhs, b.id);
            if (st.rhs_kind == RhsKind::Path) {
                LabeledPath ly = ctx.label(st.rhs, b.id);
                AliasSide sx = exact_side(lx), sy = exact_side(ly);
                if (sx.path.length() < sy.path.length())
                    in.insert({std::move(sx), std::move(sy), b.id});
                else
                    in.insert({std::move(sy), std::move(sx), b.id});
            }
            break;
        }
        case StmtKind::Call: {
            LabeledPath lx = ctx.label(st.lhs, b.id);
            std::vector<AliasSide> reach{star_side(ctx.label(st.arg, b.id))};
            for (const auto& z : prog.globals())
                reach.push_back(star_side(ctx.label(AccessPath(z), b.id)));
            for (const auto& s : reach) in.insert({exact_side(lx), s, b.id});
            for (size_t i = 0; i < reach.size(); ++i)
                for (size_t j = i; j < reach.size(); ++j)
                    in.insert({reach[i], reach[j], b.id});
            break;
        }
        default:
            break;
    }
    return in;
}

}  // namespace

AliasResult may_alias(const Program& prog, size_t* passes) {
    const CFG& cfg = prog.cfg;
    AliasResult r;
    std::vector<int> order = reverse_postorder(cfg);
    size_t sweeps = 0;
    bool changed = true;
    while (changed) {
        ++sweeps;
        changed = false;
        for (int id : order) {
            AliasSet in;
            for (int p : cfg.block(id).preds) {
                const AliasSet& po = r.out[p];
                in.insert(po.begin(), po.end());
            }
            AliasSet out = alias_transfer(prog, cfg.block(id), in);
            if (in != r.in[id] || out != r.out[id]) {
                r.in[id] = std::move(in);
                r.out[id] = std::move(out);
                changed = true;
            }
        }
    }
    if (passes) *passes = sweeps;
    return r;
}

namespace {

// Paths whose target object may coincide with the target of rho. The alias
// pairs relate targets, so the pair closure applies at this level; lifting a
// node alias of the base by one field then yields a link alias.
std::set<PathOrStar> node_aliases(const AccessPath& rho, const AliasSet& aliases) {
    std::set<PathOrStar> s;
    if (rho.simple()) {
        s.insert({rho, false});
    } else {
        for (const auto& q : node_aliases(rho.base(), aliases))
            s.insert(q.star ? q : PathOrStar{q.path.extended(rho.frontier()), false});
    }
    // Close under the alias pairs, in both orientations. Only canonical side
    // paths are ever added, so the closure is finite.
    bool grew = true;
    while (grew) {
        grew = false;
        auto apply = [&](const AliasSide& from, const AliasSide& to) {
            std::set<PathOrStar> add;
            for (const auto& e : s) {
                if (from.graph.accepts(e.path))
                    add.insert({to.path, e.star || to.star});
                else if (e.star && e.path.is_prefix_of(from.path))
                    add.insert({to.path, true});
            }
            for (const auto& e : add)
                if (s.insert(e).second) grew = true;
        };
        for (const auto& p : aliases) {
            apply(p.lhs, p.rhs);
            apply(p.rhs, p.lhs);
        }
    }
    return s;
}

}  // namespace

std::set<PathOrStar> lna(const AccessPath& rho, const AliasSet& aliases) {
    if (rho.empty()) return {};
    // A root variable is a cell of its own; no other path names that link.
    if (rho.simple()) return {{rho, false}};
    std::set<PathOrStar> s;
    for (const auto& q : node_aliases(rho.base(), aliases))
        s.insert(q.star ? q : PathOrStar{q.path.extended(rho.frontier()), false});
    return s;
}

AccessGraph lng(const AccessGraph& target_graph, const AccessGraph& source_graph,
                const AliasSide& source_side, const AliasSide& target_side) {
    auto rem = source_graph.factorize(source_side.graph, source_side.graph.finals());
    std::erase_if(rem, [](const RemainderGraph& r) { return r.epsilon; });
    AccessGraph moved = AccessGraph::extend_all(target_side.graph, target_side.graph.finals(),
                                                rem, ExtendMode::FromRemainder);
    if (moved.empty()) return target_graph;
    if (target_graph.empty()) return moved;
    return AccessGraph::union_(target_graph, moved);
}

namespace {

// Propagates liveness across every alias pair until nothing grows. Pairs
// between paths of equal length (plain copies, call-generated root pairs) are
// applied in both directions. Pairs whose sides differ in length come from
// dereferencing assignments; there the shorter side is the current spelling
// and the longer side a pre-statement one, so liveness of the shorter side's
// suffixes carries over to the longer side but never the reverse: a loop pair
// like <x, x->r> would otherwise fold liveness of a later iteration back onto
// the current one.
void alias_close(VarGraphs& m, const AliasSet& aliases) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& p : aliases) {
            auto apply = [&](const AliasSide& src, const AliasSide& dst) {
                const AccessGraph& source = graphs_get(m, src.path.root);
                if (source.empty()) return;
                AccessGraph cur = graphs_get(m, dst.path.root);
                AccessGraph next = lng(cur, source, src, dst);
                if (!(next == cur)) {
                    m[dst.path.root] = next;
                    grew = true;
                }
            };
            apply(p.lhs, p.rhs);
            if (p.lhs.path.length() == p.rhs.path.length()) apply(p.rhs, p.lhs);
        }
    }
}

void merge_into(VarGraphs& into, const VarGraphs& from) {
    for (const auto& [v, g] : from) graphs_union(into, v, g);
}

}  // namespace

DataflowGraphs complete_liveness(const Program& prog, const AliasResult& aliases,
                                 size_t* passes) {
    const CFG& cfg = prog.cfg;

    // The alias contribution at each point is computed once, from explicit
    // liveness. Closing the evolving complete values instead would transplant
    // already transplanted facts a second time: a loop-carried pair bounces a
    // conservative graph from one side to the other across iterations and
    // drowns the precise answer.
    DataflowGraphs expl = explicit_liveness(prog);
    std::map<int, VarGraphs> contrib;
    for (const auto& b : cfg.blocks) {
        VarGraphs c = expl.in.at(b.id);
        alias_close(c, aliases.in.at(b.id));
        contrib[b.id] = std::move(c);
    }

    DataflowGraphs r;
    VarGraphs boundary;
    for (const auto& z : prog.globals()) boundary[z] = AccessGraph::var_star(z);
    for (const auto& z : prog.params()) boundary[z] = AccessGraph::var_star(z);
    alias_close(boundary, aliases.out.at(cfg.exit));
    r.out[cfg.exit] = boundary;
    r.in[cfg.exit] = boundary;

    std::vector<int> order = reverse_postorder(cfg);
    std::reverse(order.begin(), order.end());

    size_t max_passes = 64 * cfg.blocks.size() + 256;  // safety net, see liveness
    size_t sweeps = 0;
    bool changed = true;
    while (changed) {
        if (++sweeps > max_passes)
            throw std::runtime_error("complete liveness failed to stabilize");
        changed = false;
        for (int id : order) {
            if (id == cfg.exit) continue;
            VarGraphs out;
            for (int s : cfg.block(id).succs) merge_into(out, r.in[s]);
            VarGraphs in = liveness_transfer(prog, id, out);
            merge_into(in, contrib[id]);
            if (out != r.out[id] || in != r.in[id]) {
                r.out[id] = std::move(out);
                r.in[id] = std::move(in);
                changed = true;
            }
        }
    }
    if (passes) *passes = sweeps;
    return r;
}

}  // namespace hra
