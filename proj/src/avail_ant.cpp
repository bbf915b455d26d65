#include "hra/avail_ant.hpp"

#include <stdexcept>

namespace hra {
namespace {

// Cones of the may-link aliases of the assigned path cease to hold: writing
// the link may change what anything reached through an alias points to.
void kill_aliases(PathSet& s, const AccessPath& lhs, const AliasSet& aliases) {
    for (const auto& e : lna(lhs, aliases)) s.remove_star(e.path);
}

void add_prefix_set(PathSet& s, const AccessPath& p) {
    if (!p.empty()) s.add_prefixes(p);
}

// Members of x extending `from`, re-rooted at `to`.
std::set<AccessPath> transfer_suffixes(const PathSet& x, const AccessPath& from,
                                       const AccessPath& to) {
    std::set<AccessPath> r;
    for (const auto& q : x.paths()) {
        if (!from.is_prefix_of(q)) continue;
        r.insert(to.with_suffix(std::vector<std::string>(
            q.fields.begin() + static_cast<long>(from.fields.size()), q.fields.end())));
    }
    return r;
}

}  // namespace

PathSet statement_avail(const Program& prog, int block, const PathSet& x,
                        const AliasSet& aliases_in) {
    if (x.is_universal())
        throw std::logic_error("availability transfer applied to the universal set");
    const Statement& st = prog.cfg.block(block).stmt;
    PathSet out = x;
    switch (st.kind) {
        case StmtKind::Assign: {
            std::set<AccessPath> moved;
            if (st.rhs_kind == RhsKind::Path) moved = transfer_suffixes(x, st.rhs, st.lhs);
            kill_aliases(out, st.lhs, aliases_in);
            if (st.rhs_kind == RhsKind::New)
                add_prefix_set(out, st.lhs);
            else
                add_prefix_set(out, st.lhs.base());
            if (st.rhs_kind == RhsKind::Path) add_prefix_set(out, st.rhs.base());
            for (const auto& p : moved) out.add(p);
            break;
        }
        case StmtKind::Call:
            kill_aliases(out, st.lhs, aliases_in);
            add_prefix_set(out, st.lhs.base());
            break;
        case StmtKind::Use:
            for (const auto& u : st.uses) add_prefix_set(out, u);
            break;
        case StmtKind::Return:
            add_prefix_set(out, st.ret.base());
            break;
        default:
            break;
    }
    return out;
}

PathSet statement_ant(const Program& prog, int block, const PathSet& x,
                      const AliasSet& aliases_out) {
    if (x.is_universal())
        throw std::logic_error("anticipability transfer applied to the universal set");
    const Statement& st = prog.cfg.block(block).stmt;
    PathSet in = x;
    switch (st.kind) {
        case StmtKind::Assign: {
            std::set<AccessPath> moved;
            if (st.rhs_kind == RhsKind::Path) moved = transfer_suffixes(x, st.lhs, st.rhs);
            kill_aliases(in, st.lhs, aliases_out);
            add_prefix_set(in, st.lhs.base());
            if (st.rhs_kind == RhsKind::Path) add_prefix_set(in, st.rhs.base());
            for (const auto& p : moved) in.add(p);
            break;
        }
        case StmtKind::Call:
            kill_aliases(in, st.lhs, aliases_out);
            add_prefix_set(in, st.lhs.base());
            add_prefix_set(in, st.arg.base());
            break;
        case StmtKind::Use:
            for (const auto& u : st.uses) add_prefix_set(in, u);
            break;
        case StmtKind::Return:
            add_prefix_set(in, st.ret.base());
            break;
        default:
            break;
    }
    return in;
}

PathSetFlow availability(const Program& prog, const AliasResult& aliases, size_t* passes) {
    const CFG& cfg = prog.cfg;
    PathSetFlow r;
    for (const auto& b : cfg.blocks) {
        r.in[b.id] = PathSet::universal();
        r.out[b.id] = PathSet::universal();
    }
    r.in[cfg.entry] = PathSet{};

    std::vector<int> order = reverse_postorder(cfg);
    size_t count = 0;
    bool changed = true;
    while (changed) {
        ++count;
        changed = false;
        for (int id : order) {
            PathSet in;
            if (id == cfg.entry) {
                in = PathSet{};
            } else {
                in = PathSet::universal();
                for (int p : cfg.block(id).preds) in = PathSet::intersect(in, r.out[p]);
            }
            // All predecessors may still sit at their initial value when they
            // are only reachable through edges not yet processed this pass.
            if (in.is_universal()) continue;
            PathSet out = statement_avail(prog, id, in, aliases.in.at(id));
            if (in != r.in[id] || out != r.out[id]) {
                r.in[id] = std::move(in);
                r.out[id] = std::move(out);
                changed = true;
            }
        }
    }
    if (passes) *passes = count;
    return r;
}

PathSetFlow anticipability(const Program& prog, const AliasResult& aliases, size_t* passes) {
    const CFG& cfg = prog.cfg;
    PathSetFlow r;
    for (const auto& b : cfg.blocks) {
        r.in[b.id] = PathSet::universal();
        r.out[b.id] = PathSet::universal();
    }
    r.out[cfg.exit] = PathSet{};

    std::vector<int> order = reverse_postorder(cfg);
    std::reverse(order.begin(), order.end());
    size_t count = 0;
    bool changed = true;
    while (changed) {
        ++count;
        changed = false;
        for (int id : order) {
            PathSet out;
            if (id == cfg.exit) {
                out = PathSet{};
            } else {
                out = PathSet::universal();
                for (int s : cfg.block(id).succs) out = PathSet::intersect(out, r.in[s]);
            }
            // A block whose only successors are back edges sees the initial
            // value on the first pass; its turn comes once those stabilize.
            if (out.is_universal()) continue;
            PathSet in = statement_ant(prog, id, out, aliases.out.at(id));
            if (out != r.out[id] || in != r.in[id]) {
                r.out[id] = std::move(out);
                r.in[id] = std::move(in);
                changed = true;
            }
        }
    }
    if (passes) *passes = count;
    return r;
}

}  // namespace hra
