#include "hra/interp.hpp"

#include <algorithm>
#include <functional>

#include "hra/avail_ant.hpp"

namespace hra {

int HeapState::reachable() const {
    std::vector<bool> seen(objects.size(), false);
    std::vector<int> work;
    for (const auto& [v, id] : roots)
        if (id >= 0 && !seen[size_t(id)]) {
            seen[size_t(id)] = true;
            work.push_back(id);
        }
    int count = 0;
    while (!work.empty()) {
        int cur = work.back();
        work.pop_back();
        ++count;
        for (const auto& [f, id] : objects[size_t(cur)].fields)
            if (id >= 0 && !seen[size_t(id)]) {
                seen[size_t(id)] = true;
                work.push_back(id);
            }
    }
    return count;
}

namespace {

struct Machine {
    const Program& prog;
    const Schedule& sched;
    const std::set<int>& probes;
    Trace t;
    size_t next_bit = 0;
    int origin = -1;  // origin of the block currently executing

    void emit(EventKind k, const AccessPath& p, int obj = -1) {
        t.events.push_back({k, p, obj, origin});
    }

    int alloc(const std::string& type) {
        HeapObject o;
        o.type = type;
        auto it = prog.types.find(type);
        if (it != prog.types.end())
            for (const auto& f : it->second.ref_fields) o.fields[f] = -1;
        t.final_state.objects.push_back(std::move(o));
        return int(t.final_state.objects.size()) - 1;
    }

    // Value of rho, dereferencing every proper prefix. Returns nothing after
    // raising: the prefix whose value is null is recorded in the Exception
    // event. `silent` suppresses the Deref events (null assignments).
    std::optional<int> read(const AccessPath& rho, bool silent) {
        if (rho.simple()) {
            auto it = t.final_state.roots.find(rho.root);
            return it == t.final_state.roots.end() ? -1 : it->second;
        }
        AccessPath base = rho.base();
        std::optional<int> b = read(base, silent);
        if (!b) return std::nullopt;
        if (*b < 0) {
            emit(EventKind::Exception, base);
            t.raised = true;
            return std::nullopt;
        }
        if (!silent) emit(EventKind::Deref, base, *b);
        auto& fields = t.final_state.objects[size_t(*b)].fields;
        auto f = fields.find(rho.frontier());
        return f == fields.end() ? -1 : f->second;
    }

    // Stores v into the link named by rho.
    void write(const AccessPath& rho, int v, bool silent) {
        if (rho.simple()) {
            t.final_state.roots[rho.root] = v;
            return;
        }
        AccessPath base = rho.base();
        std::optional<int> b = read(base, silent);
        if (!b) return;
        if (*b < 0) {
            emit(EventKind::Exception, base);
            t.raised = true;
            return;
        }
        if (!silent) emit(EventKind::Deref, base, *b);
        t.final_state.objects[size_t(*b)].fields[rho.frontier()] = v;
    }

    void step(const Statement& st) {
        switch (st.kind) {
            case StmtKind::Assign: {
                int v = -1;
                bool silent = st.rhs_kind == RhsKind::Null;
                if (st.rhs_kind == RhsKind::Path) {
                    std::optional<int> r = read(st.rhs, false);
                    if (!r) return;
                    v = *r;
                } else if (st.rhs_kind == RhsKind::New) {
                    v = alloc(st.new_type);
                }
                write(st.lhs, v, silent);
                break;
            }
            case StmtKind::Use:
                for (const auto& u : st.uses) {
                    std::optional<int> v = read(u, false);
                    if (!v) return;
                    if (*v < 0) {
                        // Reading the data of a null reference.
                        emit(EventKind::Exception, u);
                        t.raised = true;
                        return;
                    }
                    emit(EventKind::Use, u);
                }
                break;
            case StmtKind::Call: {
                // The callee is opaque: it receives the argument and yields a
                // fresh object.
                if (!read(st.arg, false)) return;
                write(st.lhs, alloc(prog.target_type(st.lhs)), false);
                break;
            }
            case StmtKind::Return:
                read(st.ret, false);
                break;
            default:
                break;
        }
    }

    void run() {
        for (const auto& v : prog.ref_var_names()) t.final_state.roots[v] = -1;
        const CFG& cfg = prog.cfg;
        size_t cap = 10000 + 100 * cfg.blocks.size();
        int cur = cfg.entry;
        for (size_t steps = 0;; ++steps) {
            if (steps > cap) {
                t.exhausted = true;
                return;
            }
            const Block& b = cfg.block(cur);
            origin = b.origin;
            if (b.origin >= 0 && cur != cfg.entry && cur != cfg.exit &&
                (probes.empty() || probes.count(b.origin)))
                emit(EventKind::Probe, AccessPath{}, t.final_state.reachable());
            step(b.stmt);
            if (t.raised) return;
            if (b.stmt.kind == StmtKind::Return) {
                cur = cfg.exit;
                continue;
            }
            if (b.succs.empty()) return;
            if (b.succs.size() == 1) {
                cur = b.succs[0];
                continue;
            }
            if (next_bit >= sched.size()) {
                t.exhausted = true;
                return;
            }
            cur = sched[next_bit++] ? b.succs[1] : b.succs[0];
        }
    }
};

}  // namespace

Trace execute(const Program& prog, const Schedule& schedule, const std::set<int>& probes) {
    Machine m{prog, schedule, probes};
    m.run();
    return std::move(m.t);
}

std::vector<Schedule> all_schedules(int bits) {
    std::vector<Schedule> r;
    for (unsigned mask = 0; mask < (1u << bits); ++mask) {
        Schedule s;
        for (int i = 0; i < bits; ++i) s.push_back((mask >> i) & 1u);
        r.push_back(std::move(s));
    }
    return r;
}

namespace {

std::vector<Event> observables(const Trace& t) {
    std::vector<Event> r;
    for (const auto& e : t.events)
        if (e.kind == EventKind::Use || e.kind == EventKind::Deref) r.push_back(e);
    return r;
}

std::vector<Event> probe_events(const Trace& t) {
    std::vector<Event> r;
    for (const auto& e : t.events)
        if (e.kind == EventKind::Probe) r.push_back(e);
    return r;
}

std::string schedule_text(const Schedule& s) {
    std::string r;
    for (bool b : s) {
        if (!r.empty()) r += ',';
        r += b ? '1' : '0';
    }
    return r.empty() ? "(empty)" : r;
}

}  // namespace

Verdict check_equivalence(const Program& original, const Program& modified,
                          const std::vector<Schedule>& schedules) {
    for (const auto& s : schedules) {
        Trace to = execute(original, s);
        Trace tm = execute(modified, s);
        auto fail = [&](const std::string& what) {
            return Verdict{false, "schedule " + schedule_text(s) + ": " + what};
        };
        std::vector<Event> eo = observables(to), em = observables(tm);
        if (tm.raised) {
            // A null assignment may only move an exception earlier, never
            // create one: the original must raise too, after an identical
            // beginning.
            if (!to.raised) return fail("modified raises where the original does not");
            if (em.size() > eo.size() || !std::equal(em.begin(), em.end(), eo.begin()))
                return fail("observable events diverge before the exception");
        } else {
            if (to.raised) return fail("original raises but modified does not");
            if (eo != em) return fail("observable event sequences differ");
        }
        std::vector<Event> po = probe_events(to), pm = probe_events(tm);
        if (!tm.raised && !to.raised && po.size() != pm.size())
            return fail("probe sequences have different lengths");
        for (size_t i = 0; i < std::min(po.size(), pm.size()); ++i) {
            if (po[i].origin != pm[i].origin) return fail("probes visit different blocks");
            if (pm[i].object > po[i].object)
                return fail("reachable count grew at block " + std::to_string(po[i].origin));
        }
    }
    return {};
}

std::optional<AccessPath> transfer_path(const Program& prog, const Statement& st,
                                        const AccessPath& rho) {
    auto global_root = [&](const AccessPath& p) {
        const Variable* v = prog.find_var(p.root);
        return v && v->kind == VarKind::Global;
    };
    switch (st.kind) {
        case StmtKind::Assign: {
            if (!st.lhs.is_prefix_of(rho)) return rho;
            if (st.rhs_kind != RhsKind::Path) return std::nullopt;  // settled here
            std::vector<std::string> sigma(rho.fields.begin() + long(st.lhs.fields.size()),
                                           rho.fields.end());
            return st.rhs.with_suffix(sigma);
        }
        case StmtKind::Call:
            if (global_root(rho)) return rho;
            if (st.lhs.is_prefix_of(rho)) return std::nullopt;
            return rho;
        case StmtKind::Return:
            // Nothing after a return executes in this procedure; only global
            // liveness survives the statement.
            if (global_root(rho)) return rho;
            return std::nullopt;
        default:
            return rho;
    }
}

namespace {

using PathBag = std::set<AccessPath>;

// All extensions of p through declared reference fields, up to max_len names.
PathBag cone(const Program& prog, const AccessPath& p, size_t max_len) {
    PathBag out;
    std::vector<AccessPath> work{p};
    while (!work.empty()) {
        AccessPath cur = work.back();
        work.pop_back();
        if (!out.insert(cur).second || cur.length() >= max_len) continue;
        for (const auto& f : prog.out_fields(cur)) work.push_back(cur.extended(f));
    }
    return out;
}

void add_prefixes(PathBag& bag, const AccessPath& p, bool proper) {
    for (const auto& q : p.prefixes(proper)) bag.insert(q);
}

// The liveness flow function at the level of explicit path sets, truncating
// generated paths at max_len names.
PathBag set_live_transfer(const Program& prog, const Statement& st, const PathBag& out,
                          size_t max_len) {
    PathBag in = out;
    auto kill = [&](const AccessPath& lhs) {
        std::erase_if(in, [&](const AccessPath& p) { return lhs.is_prefix_of(p); });
        add_prefixes(in, lhs, true);
    };
    switch (st.kind) {
        case StmtKind::Assign:
            kill(st.lhs);
            if (st.rhs_kind == RhsKind::Path) {
                add_prefixes(in, st.rhs, true);
                for (const auto& p : out) {
                    if (!st.lhs.is_prefix_of(p)) continue;
                    std::vector<std::string> suffix(p.fields.begin() + long(st.lhs.fields.size()),
                                                    p.fields.end());
                    AccessPath moved = st.rhs.with_suffix(suffix);
                    if (moved.length() <= max_len) in.insert(moved);
                }
            }
            break;
        case StmtKind::Call:
            kill(st.lhs);
            for (const auto& p : cone(prog, st.arg, max_len)) in.insert(p);
            add_prefixes(in, st.arg, false);
            for (const auto& z : prog.globals())
                for (const auto& p : cone(prog, AccessPath(z), max_len)) in.insert(p);
            break;
        case StmtKind::Return:
            for (const auto& p : cone(prog, st.ret, max_len)) in.insert(p);
            add_prefixes(in, st.ret, false);
            for (const auto& z : prog.globals())
                for (const auto& p : cone(prog, AccessPath(z), max_len)) in.insert(p);
            break;
        case StmtKind::Use:
            for (const auto& u : st.uses) add_prefixes(in, u, false);
            break;
        default:
            break;
    }
    return in;
}

// Every control flow path from Entry to Exit visiting no block more than
// `unroll` times.
std::vector<std::vector<int>> all_cfg_paths(const CFG& cfg, int unroll) {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::map<int, int> visits;
    std::function<void(int)> go = [&](int cur) {
        path.push_back(cur);
        ++visits[cur];
        if (cur == cfg.exit)
            out.push_back(path);
        else
            for (int s : cfg.block(cur).succs)
                if (visits[s] < unroll) go(s);
        --visits[cur];
        path.pop_back();
    };
    go(cfg.entry);
    return out;
}

void union_into(std::map<int, PathBag>& m, int id, const PathBag& bag) {
    m[id].insert(bag.begin(), bag.end());
}

void intersect_into(std::map<int, PathBag>& m, std::set<int>& seen, int id, const PathBag& bag) {
    if (seen.insert(id).second) {
        m[id] = bag;
        return;
    }
    std::erase_if(m[id], [&](const AccessPath& p) { return !bag.contains(p); });
}

}  // namespace

MopSets mop_liveness(const Program& prog, int unroll, size_t max_len) {
    PathBag boundary;
    for (const auto& z : prog.globals())
        for (const auto& p : cone(prog, AccessPath(z), max_len)) boundary.insert(p);
    MopSets r;
    for (const auto& path : all_cfg_paths(prog.cfg, unroll)) {
        PathBag x = boundary;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            union_into(r.out, *it, x);
            x = set_live_transfer(prog, prog.cfg.block(*it).stmt, x, max_len);
            union_into(r.in, *it, x);
        }
    }
    return r;
}

MopSets mop_availability(const Program& prog, const AliasResult& aliases, int unroll) {
    MopSets r;
    std::set<int> seen_in, seen_out;
    for (const auto& path : all_cfg_paths(prog.cfg, unroll)) {
        PathSet x;
        for (int id : path) {
            intersect_into(r.in, seen_in, id, x.paths());
            x = statement_avail(prog, id, x, aliases.in.at(id));
            intersect_into(r.out, seen_out, id, x.paths());
        }
    }
    return r;
}

MopSets mop_anticipability(const Program& prog, const AliasResult& aliases, int unroll) {
    MopSets r;
    std::set<int> seen_in, seen_out;
    for (const auto& path : all_cfg_paths(prog.cfg, unroll)) {
        PathSet x;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            intersect_into(r.out, seen_out, *it, x.paths());
            x = statement_ant(prog, *it, x, aliases.out.at(*it));
            intersect_into(r.in, seen_in, *it, x.paths());
        }
    }
    return r;
}

}  // namespace hra
