#include "hra/nullifier.hpp"

#include <algorithm>

#include "hra/liveness.hpp"

namespace hra {

Analyses analyze_all(const Program& prog) {
    Analyses an;
    an.aliases = may_alias(prog);
    an.complete = complete_liveness(prog, an.aliases);
    an.avail = availability(prog, an.aliases);
    an.ant = anticipability(prog, an.aliases);
    return an;
}

namespace {

bool is_site(const Program& prog, int block) {
    return block != prog.cfg.entry && block != prog.cfg.exit;
}

const PathSet& avail_at(const Analyses& an, int block, bool at_entry) {
    return at_entry ? an.avail.in.at(block) : an.avail.out.at(block);
}

const PathSet& ant_at(const Analyses& an, int block, bool at_entry) {
    return at_entry ? an.ant.in.at(block) : an.ant.out.at(block);
}

bool accessible(const Analyses& an, const AccessPath& rho, int block, bool at_entry) {
    if (rho.simple()) return true;  // a root needs no dereference
    AccessPath base = rho.base();
    return avail_at(an, block, at_entry).member(base) || ant_at(an, block, at_entry).member(base);
}

const AccessPath* stmt_lhs(const Statement& st) {
    if (st.kind == StmtKind::Assign || st.kind == StmtKind::Call) return &st.lhs;
    return nullptr;
}

}  // namespace

bool nullable(const Program& prog, const Analyses& an, const AccessPath& rho, int block,
              bool at_entry) {
    if (!is_site(prog, block)) return false;
    const VarGraphs& live = at_entry ? an.complete.in.at(block) : an.complete.out.at(block);
    if (graphs_get(live, rho.root).accepts(rho)) return false;
    return accessible(an, rho, block, at_entry);
}

bool transparent(const Program& prog, const Analyses& an, const AccessPath& rho, int block) {
    const AccessPath* lhs = stmt_lhs(prog.cfg.block(block).stmt);
    if (!lhs) return true;
    auto aliases = lna(*lhs, an.aliases.in.at(block));
    for (const auto& prefix : rho.prefixes())
        for (const auto& e : aliases)
            if (e.covers(prefix)) return false;
    return true;
}

std::vector<AccessPath> candidates(const Program& prog, const Analyses& an, int block,
                                   bool at_entry) {
    if (!is_site(prog, block)) return {};
    std::set<AccessPath> set;
    for (const auto& v : prog.ref_var_names()) set.insert(AccessPath(v));
    PathSet reach = PathSet::union_(avail_at(an, block, at_entry), ant_at(an, block, at_entry));
    for (const auto& rho : reach.paths())
        for (const auto& f : prog.out_fields(rho)) set.insert(rho.extended(f));
    std::vector<AccessPath> r(set.begin(), set.end());
    std::sort(r.begin(), r.end(), shorter_lex_less);
    return r;
}

namespace {

bool prefixes_not_nullable(const Program& prog, const Analyses& an, const AccessPath& rho,
                           int block, bool at_entry) {
    for (const auto& q : rho.prefixes(/*proper=*/true))
        if (nullable(prog, an, q, block, at_entry)) return false;
    return true;
}

bool nullify_at_entry(const Program& prog, const Analyses& an, const AccessPath& rho, int block) {
    if (!nullable(prog, an, rho, block, true)) return false;
    if (!prefixes_not_nullable(prog, an, rho, block, true)) return false;
    // Pointless right before a statement that overwrites the same path.
    const AccessPath* lhs = stmt_lhs(prog.cfg.block(block).stmt);
    if (lhs && *lhs == rho) return false;
    // Redundant when every predecessor already nulls it at its exit.
    bool all_preds = true;
    for (int j : prog.cfg.block(block).preds)
        if (!nullable(prog, an, rho, j, false)) all_preds = false;
    return !all_preds;
}

bool nullify_at_exit(const Program& prog, const Analyses& an, const AccessPath& rho, int block) {
    const Statement& st = prog.cfg.block(block).stmt;
    // Statements after a return never execute.
    if (st.kind == StmtKind::Return) return false;
    if (!nullable(prog, an, rho, block, false)) return false;
    if (!prefixes_not_nullable(prog, an, rho, block, false)) return false;
    // Redundant when the statement does not touch the link and the same
    // insertion is already valid before it.
    if (nullable(prog, an, rho, block, true) && transparent(prog, an, rho, block)) return false;
    // For an assignment x = y.sigma, the link named x.tau after the statement
    // is the link y.sigma.tau before it. When that spelling is already null
    // on entry without needing an insertion of its own, nulling the copy is
    // redundant.
    if (st.kind == StmtKind::Assign && st.rhs_kind == RhsKind::Path && st.lhs != rho &&
        st.lhs.is_prefix_of(rho)) {
        std::vector<std::string> sigma(rho.fields.begin() + long(st.lhs.fields.size()),
                                       rho.fields.end());
        AccessPath source = st.rhs.with_suffix(sigma);
        if (nullable(prog, an, source, block, true) &&
            !nullify_at_entry(prog, an, source, block))
            return false;
    }
    return true;
}

Block null_block(const AccessPath& rho) {
    Block b;
    b.stmt.kind = StmtKind::Assign;
    b.stmt.rhs_kind = RhsKind::Null;
    b.stmt.lhs = rho;
    b.origin = -1;
    return b;
}

}  // namespace

NullifyResult insert_nulls(const Program& prog, const Analyses& an) {
    const CFG& old = prog.cfg;
    NullifyResult res;
    std::map<int, std::vector<AccessPath>> at_in, at_out;
    for (int id : old.real_ids()) {
        for (const auto& rho : candidates(prog, an, id, true))
            if (nullify_at_entry(prog, an, rho, id)) {
                at_in[id].push_back(rho);
                res.insertions.push_back({rho, id, true});
            }
        for (const auto& rho : candidates(prog, an, id, false))
            if (nullify_at_exit(prog, an, rho, id)) {
                at_out[id].push_back(rho);
                res.insertions.push_back({rho, id, false});
            }
    }

    // Rebuild the control flow graph with the insertion chains spliced in.
    // Entry insertions go between a block and all of its predecessors; exit
    // insertions go between the statement and its branch, so they reach every
    // successor.
    std::map<int, int> head, body, tail;
    std::vector<Block> nb;
    for (const Block& b : old.blocks) {
        head[b.id] = int(nb.size());
        for (const auto& rho : at_in[b.id]) nb.push_back(null_block(rho));
        body[b.id] = int(nb.size());
        nb.push_back(b);
        for (const auto& rho : at_out[b.id]) nb.push_back(null_block(rho));
        tail[b.id] = int(nb.size()) - 1;
    }
    for (size_t i = 0; i < nb.size(); ++i) {
        nb[i].id = int(i);
        nb[i].preds.clear();
    }
    for (const Block& b : old.blocks) {
        int h = head[b.id], m = body[b.id], t = tail[b.id];
        for (int k = h; k < m; ++k) nb[size_t(k)].succs = {k + 1};
        if (t > m) {
            nb[size_t(t)].has_cond = nb[size_t(m)].has_cond;
            nb[size_t(t)].cond_var = nb[size_t(m)].cond_var;
            nb[size_t(m)].has_cond = false;
            nb[size_t(m)].cond_var.clear();
            for (int k = m; k < t; ++k) nb[size_t(k)].succs = {k + 1};
        }
        std::vector<int> succs;
        for (int s : b.succs) succs.push_back(head[s]);
        nb[size_t(t)].succs = std::move(succs);
    }
    for (const Block& b : nb)
        for (int s : b.succs) nb[size_t(s)].preds.push_back(b.id);

    res.modified.types = prog.types;
    res.modified.vars = prog.vars;
    res.modified.cfg.blocks = std::move(nb);
    res.modified.cfg.entry = head[old.entry];
    res.modified.cfg.exit = body[old.exit];
    return res;
}

NullifyResult insert_nulls(const Program& prog) { return insert_nulls(prog, analyze_all(prog)); }

}  // namespace hra
