// Command line driver: analyze | nullify | run | dot over the text IR.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hra/interp.hpp"
#include "hra/liveness.hpp"
#include "hra/nullifier.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace hra;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitInternal = 2;

struct Options {
    std::string file;
    std::string out;
    std::string schedule;
    std::string point;
    std::string var;
    std::string kind = "live";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out);
    if (!out) throw std::invalid_argument("cannot write " + opt.out);
    out << text;
}

Program load(const Options& opt, bool* failed) {
    std::string text = read_file(opt.file);
    Program prog;
    try {
        prog = parse_program(text);
    } catch (const std::runtime_error& e) {
        std::cerr << opt.file << ": " << e.what() << "\n";
        *failed = true;
        return prog;
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        std::cerr << opt.file << ": warning: empty program\n";
    for (const auto& d : validate(prog)) {
        std::cerr << opt.file << ":" << d.line << ": " << d.message << "\n";
        *failed = true;
    }
    return prog;
}

// Analyses with their round-robin sweep counts, for the report.
struct Computed {
    AliasResult aliases;
    DataflowGraphs live, clive;
    PathSetFlow avail, ant;
    size_t alias_passes = 0, live_passes = 0, clive_passes = 0;
    size_t avail_passes = 0, ant_passes = 0;
};

Computed compute(const Program& prog) {
    Computed c;
    c.aliases = may_alias(prog, &c.alias_passes);
    c.live = explicit_liveness(prog, &c.live_passes);
    c.clive = complete_liveness(prog, c.aliases, &c.clive_passes);
    c.avail = availability(prog, c.aliases, &c.avail_passes);
    c.ant = anticipability(prog, c.aliases, &c.ant_passes);
    return c;
}

json graphs_json(const VarGraphs& m) {
    json j = json::object();
    for (const auto& [v, g] : m)
        if (!g.empty()) j[v] = g.canonical_text();
    return j;
}

json aliases_json(const AliasSet& s) {
    json j = json::array();
    for (const auto& p : s)
        j.push_back({p.lhs.graph.canonical_text(), p.rhs.graph.canonical_text()});
    return j;
}

json paths_json(const PathSet& s) {
    if (s.is_universal()) return "*";
    json j = json::array();
    for (const auto& p : s.paths()) j.push_back(p.text());
    return j;
}

json point_json(const Computed& c, int id, bool in) {
    auto& live = in ? c.live.in : c.live.out;
    auto& clive = in ? c.clive.in : c.clive.out;
    auto& alias = in ? c.aliases.in : c.aliases.out;
    auto& avail = in ? c.avail.in : c.avail.out;
    auto& ant = in ? c.ant.in : c.ant.out;
    return {{"live", graphs_json(live.at(id))},   {"clive", graphs_json(clive.at(id))},
            {"alias", aliases_json(alias.at(id))}, {"avail", paths_json(avail.at(id))},
            {"ant", paths_json(ant.at(id))}};
}

json insertions_json(const std::vector<Insertion>& ins) {
    json j = json::array();
    for (const auto& i : ins)
        j.push_back({{"block", i.block}, {"at", i.at_entry ? "in" : "out"}, {"path", i.path.text()}});
    return j;
}

int cmd_analyze(const Options& opt) {
    bool failed = false;
    Program prog = load(opt, &failed);
    if (failed) return kExitDiagnostics;
    Computed c = compute(prog);

    // Size statistics over every liveness access graph at every point.
    size_t max_nodes = 0, max_edges = 0, sum_nodes = 0, sum_edges = 0, count = 0;
    for (const auto* flow : {&c.live, &c.clive})
        for (const auto* side : {&flow->in, &flow->out})
            for (const auto& [id, m] : *side)
                for (const auto& [v, g] : m) {
                    if (g.empty()) continue;
                    ++count;
                    sum_nodes += g.nodes().size();
                    sum_edges += g.edges().size();
                    max_nodes = std::max(max_nodes, g.nodes().size());
                    max_edges = std::max(max_edges, g.edges().size());
                }

    NullifyResult nul = insert_nulls(prog, {c.aliases, c.clive, c.avail, c.ant});
    Verdict verdict = check_equivalence(prog, nul.modified, all_schedules(5));

    json points = json::object();
    for (int id : prog.cfg.real_ids())
        points[std::to_string(id)] = {{"in", point_json(c, id, true)},
                                      {"out", point_json(c, id, false)}};
    json report = {
        {"digest",
         {{"blocks", prog.cfg.real_ids().size()},
          {"variables", prog.ref_var_names().size()},
          {"types", prog.types.size()},
          {"hash", std::to_string(std::hash<std::string>{}(emit_program(prog)))}}},
        {"iterations",
         {{"alias", c.alias_passes},
          {"liveness", c.live_passes},
          {"complete_liveness", c.clive_passes},
          {"availability", c.avail_passes},
          {"anticipability", c.ant_passes}}},
        {"graph_stats",
         {{"graphs", count},
          {"max_nodes", max_nodes},
          {"max_edges", max_edges},
          {"avg_nodes", count ? double(sum_nodes) / double(count) : 0.0},
          {"avg_edges", count ? double(sum_edges) / double(count) : 0.0}}},
        {"points", points},
        {"insertions", insertions_json(nul.insertions)},
        {"oracle", {{"ok", verdict.ok}, {"detail", verdict.detail}, {"schedules", 32}}},
    };
    write_output(opt, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_nullify(const Options& opt) {
    bool failed = false;
    Program prog = load(opt, &failed);
    if (failed) return kExitDiagnostics;
    NullifyResult r = insert_nulls(prog);
    std::string text = emit_program(r.modified);
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        write_output(opt, text);
        std::cout << insertions_json(r.insertions).dump(2) << "\n";
    }
    return kExitOk;
}

Schedule parse_schedule(const std::string& csv) {
    Schedule s;
    for (char ch : csv) {
        if (ch == '0') s.push_back(false);
        else if (ch == '1') s.push_back(true);
        else if (ch != ',' && ch != ' ')
            throw std::invalid_argument("bad schedule entry '" + std::string(1, ch) + "'");
    }
    return s;
}

int cmd_run(const Options& opt) {
    bool failed = false;
    Program prog = load(opt, &failed);
    if (failed) return kExitDiagnostics;
    Trace t = execute(prog, parse_schedule(opt.schedule));
    std::ostringstream out;
    out << "block  reachable\n";
    for (const auto& e : t.events)
        if (e.kind == EventKind::Probe) out << e.origin << "      " << e.object << "\n";
    for (const auto& e : t.events)
        if (e.kind == EventKind::Exception)
            out << "exception: null dereference past " << e.path.text() << " at block "
                << e.origin << "\n";
    if (t.exhausted) out << "halted: schedule exhausted\n";
    if (!t.raised && !t.exhausted) out << "completed\n";
    write_output(opt, out.str());
    return kExitOk;
}

// A DOT rendering of a finite path set as a prefix tree.
std::string paths_dot(const PathSet& s, const std::string& var) {
    std::ostringstream out;
    out << "digraph G {\n  rankdir=LR;\n";
    std::set<AccessPath> nodes;
    if (!s.is_universal())
        for (const auto& p : s.paths())
            if (p.root == var)
                for (const auto& q : p.prefixes()) nodes.insert(q);
    for (const auto& n : nodes)
        out << "  \"" << n.text() << "\";\n";
    for (const auto& n : nodes)
        if (!n.simple()) out << "  \"" << n.base().text() << "\" -> \"" << n.text() << "\";\n";
    out << "}\n";
    return out.str();
}

int cmd_dot(const Options& opt) {
    bool failed = false;
    Program prog = load(opt, &failed);
    if (failed) return kExitDiagnostics;

    // --point B4:in names the entry or exit of block 4.
    std::string spec = opt.point;
    if (!spec.empty() && (spec[0] == 'B' || spec[0] == 'b')) spec.erase(0, 1);
    size_t colon = spec.find(':');
    std::string side = colon == std::string::npos ? "in" : spec.substr(colon + 1);
    int id = -1;
    try {
        id = std::stoi(spec.substr(0, colon));
    } catch (const std::exception&) {
    }
    if (id < 0 || size_t(id) >= prog.cfg.blocks.size() || (side != "in" && side != "out")) {
        std::cerr << "unknown point '" << opt.point << "'\n";
        return kExitDiagnostics;
    }
    bool in = side == "in";
    if (!opt.var.empty() && !prog.find_var(opt.var)) {
        std::cerr << "unknown variable '" << opt.var << "'\n";
        return kExitDiagnostics;
    }

    Computed c = compute(prog);
    std::string text;
    if (opt.kind == "live" || opt.kind == "clive") {
        const auto& flow = opt.kind == "live" ? c.live : c.clive;
        const VarGraphs& m = in ? flow.in.at(id) : flow.out.at(id);
        text = graphs_get(m, opt.var).dot(opt.var);
    } else if (opt.kind == "avail" || opt.kind == "ant") {
        const auto& flow = opt.kind == "avail" ? c.avail : c.ant;
        text = paths_dot(in ? flow.in.at(id) : flow.out.at(id), opt.var);
    } else if (opt.kind == "alias") {
        const AliasSet& s = in ? c.aliases.in.at(id) : c.aliases.out.at(id);
        std::ostringstream out;
        out << "digraph G {\n  node [shape=box];\n";
        int n = 0;
        for (const auto& p : s) {
            if (!opt.var.empty() && p.lhs.path.root != opt.var && p.rhs.path.root != opt.var)
                continue;
            out << "  p" << n++ << " [label=\"" << p.lhs.graph.canonical_text() << "  ~  "
                << p.rhs.graph.canonical_text() << "\"];\n";
        }
        out << "}\n";
        text = out.str();
    } else {
        std::cerr << "unknown kind '" << opt.kind << "'\n";
        return kExitDiagnostics;
    }
    write_output(opt, text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heap reference analyzer"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "text IR input")->required();
        sub->add_option("--out", opt.out, "output path (default stdout)");
    };
    CLI::App* analyze = app.add_subcommand("analyze", "write the full report as JSON");
    add_common(analyze);
    CLI::App* nullify = app.add_subcommand("nullify", "insert null assignments");
    add_common(nullify);
    CLI::App* run = app.add_subcommand("run", "execute under a schedule");
    add_common(run);
    run->add_option("--schedule", opt.schedule, "branch outcomes, e.g. 1,1,0");
    CLI::App* dot = app.add_subcommand("dot", "render one analysis value as DOT");
    add_common(dot);
    dot->add_option("--point", opt.point, "program point, e.g. B4:in")->required();
    dot->add_option("--var", opt.var, "root variable");
    dot->add_option("--kind", opt.kind, "live|clive|alias|avail|ant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitDiagnostics : kExitOk;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(opt);
        if (nullify->parsed()) return cmd_nullify(opt);
        if (run->parsed()) return cmd_run(opt);
        return cmd_dot(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitDiagnostics;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
