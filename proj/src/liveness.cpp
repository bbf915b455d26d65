#include "hra/liveness.hpp"

#include <stdexcept>

namespace hra {
namespace {

LabeledPath drop_last(const LabeledPath& p) {
    LabeledPath b = p;
    b.nodes.pop_back();
    return b;
}

void merge_into(VarGraphs& into, const VarGraphs& from) {
    for (const auto& [v, g] : from) graphs_union(into, v, g);
}

}  // namespace

VarGraphs liveness_transfer(const Program& prog, int block, const VarGraphs& out) {
    const Block& b = prog.cfg.block(block);
    const Statement& st = b.stmt;
    VarGraphs in = out;
    LabelContext ctx;

    auto kill_lhs = [&](const LabeledPath& lx) {
        const std::string& x = lx.root;
        AccessGraph killed = graphs_get(out, x).remove_path(lx.path());
        if (!lx.simple())
            killed = AccessGraph::union_(killed,
                                         AccessGraph::path(drop_last(lx), PathPolicy::AllFinal));
        if (killed.empty())
            in.erase(x);
        else
            in[x] = killed;
    };

    switch (st.kind) {
        case StmtKind::Assign: {
            LabeledPath lx = ctx.label(st.lhs, b.id);
            kill_lhs(lx);
            if (st.rhs_kind == RhsKind::Path) {
                LabeledPath ly = ctx.label(st.rhs, b.id);
                if (!ly.simple())
                    graphs_union(in, ly.root,
                                 AccessGraph::path(drop_last(ly), PathPolicy::AllFinal));
                AccessGraph gx = AccessGraph::path(lx, PathPolicy::LastFinal);
                AccessGraph gy = AccessGraph::path(ly, PathPolicy::LastFinal);
                // Transplant what is live under the assigned path onto the
                // source path, from the original out-state.
                auto rem = graphs_get(out, lx.root).factorize(gx, gx.finals());
                graphs_union(in, ly.root,
                             AccessGraph::extend_all(gy, gy.finals(), rem,
                                                     ExtendMode::Preserve));
            }
            break;
        }
        case StmtKind::Call: {
            LabeledPath lx = ctx.label(st.lhs, b.id);
            kill_lhs(lx);
            LabeledPath la = ctx.label(st.arg, b.id);
            graphs_union(in, la.root, AccessGraph::path_star(la));
            for (const auto& z : prog.globals())
                graphs_union(in, z, AccessGraph::var_star(z));
            break;
        }
        case StmtKind::Return: {
            LabeledPath lr = ctx.label(st.ret, b.id);
            graphs_union(in, lr.root, AccessGraph::path_star(lr));
            for (const auto& z : prog.globals())
                graphs_union(in, z, AccessGraph::var_star(z));
            break;
        }
        case StmtKind::Use: {
            for (const auto& u : st.uses)
                graphs_union(in, u.root,
                             AccessGraph::path(ctx.label(u, b.id), PathPolicy::AllFinal));
            break;
        }
        default:
            break;
    }
    return in;
}

DataflowGraphs explicit_liveness(const Program& prog, size_t* sweeps) {
    const CFG& cfg = prog.cfg;
    DataflowGraphs r;
    VarGraphs boundary;
    for (const auto& z : prog.globals()) boundary[z] = AccessGraph::var_star(z);
    r.out[cfg.exit] = boundary;
    r.in[cfg.exit] = boundary;

    std::vector<int> order = reverse_postorder(cfg);
    std::reverse(order.begin(), order.end());

    // Monotone over a finite label universe; the pass cap is a safety net.
    size_t labels = prog.ref_var_names().size() + 2;
    for (const auto& b : cfg.blocks) {
        const Statement& st = b.stmt;
        labels += st.lhs.fields.size() + st.rhs.fields.size() + st.arg.fields.size() +
                  st.ret.fields.size() + 4;
        for (const auto& u : st.uses) labels += u.fields.size() + 1;
    }
    size_t max_passes = cfg.blocks.size() * labels;

    bool changed = true;
    size_t passes = 0;
    while (changed) {
        if (++passes > max_passes)
            throw std::runtime_error("liveness failed to stabilize");
        changed = false;
        for (int id : order) {
            if (id == cfg.exit) continue;
            VarGraphs out;
            for (int s : cfg.block(id).succs) merge_into(out, r.in[s]);
            VarGraphs in = liveness_transfer(prog, id, out);
            if (out != r.out[id] || in != r.in[id]) {
                r.out[id] = std::move(out);
                r.in[id] = std::move(in);
                changed = true;
            }
        }
    }
    if (sweeps) *sweeps = passes;
    return r;
}

}  // namespace hra
