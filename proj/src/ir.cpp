#include "hra/ir.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hra {
namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool is_ident(const std::string& s) {
    if (s.empty() || (!std::isalpha((unsigned char)s[0]) && s[0] != '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

AccessPath parse_dotted(const std::string& s, int line) {
    AccessPath p;
    auto parts = split(trim(s), '.');
    for (auto& part : parts) {
        part = trim(part);
        if (!is_ident(part))
            throw std::runtime_error("line " + std::to_string(line) +
                                     ": bad access expression '" + s + "'");
        if (p.root.empty())
            p.root = part;
        else
            p.fields.push_back(part);
    }
    return p;
}

std::string dotted(const AccessPath& p) {
    std::string s = p.root;
    for (const auto& f : p.fields) s += "." + f;
    return s;
}

struct Item {
    std::vector<std::string> labels;
    Statement stmt;
    std::string goto_target;  // for Goto/CondBranch statements
    int line = 0;
};

}  // namespace

std::string Statement::text() const {
    switch (kind) {
        case StmtKind::Assign:
            if (rhs_kind == RhsKind::New) return dotted(lhs) + " = new " + new_type;
            if (rhs_kind == RhsKind::Null) return dotted(lhs) + " = null";
            return dotted(lhs) + " = " + dotted(rhs);
        case StmtKind::Call:
            return dotted(lhs) + " = call " + callee + "(" + dotted(arg) + ")";
        case StmtKind::Use: {
            std::string s = "use ";
            for (size_t i = 0; i < uses.size(); ++i)
                s += (i ? ", " : "") + dotted(uses[i]) + ".d";
            return s;
        }
        case StmtKind::Return:
            return "return " + dotted(ret);
        case StmtKind::CondBranch:
            return "if " + cond_var + " goto ?";
        case StmtKind::Goto:
            return "goto ?";
        case StmtKind::Other:
            return "skip";
    }
    return "";
}

std::vector<int> CFG::real_ids() const {
    std::vector<int> ids;
    for (const auto& b : blocks)
        if (b.id != entry && b.id != exit) ids.push_back(b.id);
    return ids;
}

const Variable* Program::find_var(const std::string& name) const {
    for (const auto& v : vars)
        if (v.name == name) return &v;
    return nullptr;
}

std::vector<std::string> Program::ref_var_names() const {
    std::vector<std::string> out;
    for (const auto& v : vars) out.push_back(v.name);
    return out;
}

std::vector<std::string> Program::globals() const {
    std::vector<std::string> out;
    for (const auto& v : vars)
        if (v.kind == VarKind::Global) out.push_back(v.name);
    return out;
}

std::vector<std::string> Program::params() const {
    std::vector<std::string> out;
    for (const auto& v : vars)
        if (v.kind == VarKind::Param) out.push_back(v.name);
    return out;
}

std::string Program::target_type(const AccessPath& p) const {
    const Variable* v = find_var(p.root);
    if (!v) return "";
    std::string t = v->type;
    for (const auto& f : p.fields) {
        auto it = types.find(t);
        if (it == types.end()) return "";
        auto ft = it->second.field_type.find(f);
        if (ft == it->second.field_type.end()) return "";
        t = ft->second;
    }
    return t;
}

std::vector<std::string> Program::out_fields(const AccessPath& p) const {
    std::string t = target_type(p);
    auto it = types.find(t);
    if (it == types.end()) return {};
    return it->second.ref_fields;
}

Program parse_program(const std::string& text) {
    Program prog;
    std::vector<Item> items;
    std::vector<std::string> pending_labels;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        while (!line.empty()) {
            // Labels may prefix a statement on the same line.
            if (auto colon = line.find(':'); colon != std::string::npos &&
                is_ident(trim(line.substr(0, colon)))) {
                pending_labels.push_back(trim(line.substr(0, colon)));
                line = trim(line.substr(colon + 1));
                continue;
            }
            break;
        }
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string head;
        ls >> head;

        if (head == "class") {
            std::string name, tok;
            ls >> name >> tok;
            if (!is_ident(name) || tok != "{")
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad class");
            RecordType rt;
            rt.name = name;
            while (ls >> tok && tok != "}") {
                auto colon = tok.find(':');
                std::string field = tok.substr(0, colon);
                std::string ftype = colon == std::string::npos ? name : tok.substr(colon + 1);
                if (!is_ident(field))
                    throw std::runtime_error("line " + std::to_string(lineno) + ": bad field");
                rt.ref_fields.push_back(field);
                rt.field_type[field] = ftype;
            }
            prog.types[name] = rt;
            continue;
        }
        if (head == "global" || head == "param" || head == "local") {
            std::string rest;
            std::getline(ls, rest);
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad declaration");
            Variable v;
            v.name = trim(rest.substr(0, colon));
            v.type = trim(rest.substr(colon + 1));
            v.kind = head == "global"  ? VarKind::Global
                     : head == "param" ? VarKind::Param
                                       : VarKind::Local;
            if (!is_ident(v.name))
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad variable");
            prog.vars.push_back(v);
            continue;
        }

        Item item;
        item.labels = std::move(pending_labels);
        pending_labels.clear();
        item.line = lineno;
        Statement& st = item.stmt;

        if (head == "goto") {
            st.kind = StmtKind::Goto;
            ls >> item.goto_target;
        } else if (head == "if") {
            std::string v, kw;
            ls >> v >> kw >> item.goto_target;
            if (kw != "goto")
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad branch");
            st.kind = StmtKind::CondBranch;
            st.cond_var = v;
        } else if (head == "use") {
            st.kind = StmtKind::Use;
            std::string rest;
            std::getline(ls, rest);
            for (auto& operand : split(rest, ',')) {
                AccessPath p = parse_dotted(operand, lineno);
                if (p.fields.empty())
                    throw std::runtime_error("line " + std::to_string(lineno) +
                                             ": use operand needs a data selector");
                p.fields.pop_back();  // strip the data selector
                st.uses.push_back(p);
            }
        } else if (head == "return") {
            st.kind = StmtKind::Return;
            std::string rest;
            std::getline(ls, rest);
            st.ret = parse_dotted(rest, lineno);
        } else if (head == "skip") {
            st.kind = StmtKind::Other;
        } else {
            // Assignment or call: <path> = <rhs>
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": unrecognized statement '" + line + "'");
            st.lhs = parse_dotted(line.substr(0, eq), lineno);
            std::string rhs = trim(line.substr(eq + 1));
            if (rhs.rfind("new ", 0) == 0 || rhs == "new") {
                st.kind = StmtKind::Assign;
                st.rhs_kind = RhsKind::New;
                st.new_type = trim(rhs.substr(3));
            } else if (rhs == "null") {
                st.kind = StmtKind::Assign;
                st.rhs_kind = RhsKind::Null;
            } else if (rhs.rfind("call ", 0) == 0) {
                st.kind = StmtKind::Call;
                auto open = rhs.find('(');
                auto close = rhs.rfind(')');
                if (open == std::string::npos || close == std::string::npos || close < open)
                    throw std::runtime_error("line " + std::to_string(lineno) + ": bad call");
                st.callee = trim(rhs.substr(5, open - 5));
                st.arg = parse_dotted(rhs.substr(open + 1, close - open - 1), lineno);
            } else {
                st.kind = StmtKind::Assign;
                st.rhs_kind = RhsKind::Path;
                st.rhs = parse_dotted(rhs, lineno);
            }
        }
        items.push_back(std::move(item));
    }

    // Block formation: every non-control statement becomes a block; a control
    // statement directly following a statement (no label in between) attaches
    // to that block's out-edges, otherwise it forms a block of its own.
    CFG& cfg = prog.cfg;
    Block entry_block;
    entry_block.origin = 0;
    cfg.blocks.push_back(entry_block);  // Entry, id 0
    cfg.entry = 0;

    std::map<std::string, int> label_block;
    struct PendingEdge {
        int from;
        std::string label;
        bool conditional;
    };
    std::vector<PendingEdge> pending;
    std::vector<int> fallthrough_from;  // blocks that fall through to the next block

    int prev_stmt_block = -1;  // candidate for control attachment
    for (const auto& item : items) {
        bool control = item.stmt.kind == StmtKind::Goto || item.stmt.kind == StmtKind::CondBranch;
        bool attach = control && prev_stmt_block >= 0 && item.labels.empty();
        if (attach) {
            Block& b = cfg.blocks[size_t(prev_stmt_block)];
            if (item.stmt.kind == StmtKind::Goto) {
                // Replaces the fall-through edge.
                std::erase(fallthrough_from, prev_stmt_block);
                pending.push_back({prev_stmt_block, item.goto_target, false});
            } else {
                b.has_cond = true;
                b.cond_var = item.stmt.cond_var;
                pending.push_back({prev_stmt_block, item.goto_target, true});
            }
            prev_stmt_block = -1;  // at most one control line per block
            continue;
        }
        Block b;
        b.id = int(cfg.blocks.size());
        b.stmt = item.stmt;
        b.origin = b.id;
        b.line = item.line;
        for (const auto& lab : item.labels) label_block[lab] = b.id;
        if (control) {
            if (item.stmt.kind == StmtKind::Goto) {
                pending.push_back({b.id, item.goto_target, false});
            } else {
                b.has_cond = true;
                b.cond_var = item.stmt.cond_var;
                pending.push_back({b.id, item.goto_target, true});
                fallthrough_from.push_back(b.id);
            }
            prev_stmt_block = -1;
        } else {
            if (item.stmt.kind != StmtKind::Return) fallthrough_from.push_back(b.id);
            prev_stmt_block = item.stmt.kind == StmtKind::Return ? -1 : b.id;
        }
        cfg.blocks.push_back(std::move(b));
    }

    Block exit_block;
    exit_block.id = int(cfg.blocks.size());
    exit_block.origin = exit_block.id;
    cfg.blocks.push_back(exit_block);
    cfg.exit = exit_block.id;
    for (const auto& lab : pending_labels) label_block[lab] = cfg.exit;

    // Fall-through edges go to the next block in layout order.
    for (int from : fallthrough_from) cfg.blocks[size_t(from)].succs.push_back(from + 1);
    // Return blocks and the last statement block flow to Exit.
    for (auto& b : cfg.blocks) {
        if (b.id == cfg.exit) continue;
        if (b.stmt.kind == StmtKind::Return) b.succs.push_back(cfg.exit);
    }
    cfg.blocks[0].succs.push_back(cfg.blocks.size() > 2 ? 1 : cfg.exit);

    for (const auto& pe : pending) {
        auto it = label_block.find(pe.label);
        if (it == label_block.end())
            throw std::runtime_error("unresolved label '" + pe.label + "'");
        cfg.blocks[size_t(pe.from)].succs.push_back(it->second);
    }
    for (auto& b : cfg.blocks) {
        std::vector<int> uniq;
        for (int s : b.succs)
            if (std::find(uniq.begin(), uniq.end(), s) == uniq.end()) uniq.push_back(s);
        b.succs = uniq;
    }
    for (const auto& b : cfg.blocks)
        for (int s : b.succs) cfg.blocks[size_t(s)].preds.push_back(b.id);
    return prog;
}

std::vector<Diagnostic> validate(const Program& prog) {
    std::vector<Diagnostic> diags;
    auto check_path = [&](const AccessPath& p, int line) {
        if (p.empty()) return;
        if (!prog.find_var(p.root)) {
            diags.push_back({line, "unknown variable '" + p.root + "'"});
            return;
        }
        AccessPath prefix(p.root);
        for (const auto& f : p.fields) {
            auto fields = prog.out_fields(prefix);
            if (std::find(fields.begin(), fields.end(), f) == fields.end()) {
                diags.push_back({line, "unknown field '" + f + "' on " + prefix.text()});
                return;
            }
            prefix = prefix.extended(f);
        }
    };

    for (const auto& [name, rt] : prog.types)
        for (const auto& [field, ftype] : rt.field_type)
            if (!prog.types.count(ftype))
                diags.push_back({0, "field '" + field + "' of class " + name +
                                        " has unknown type " + ftype});
    for (const auto& v : prog.vars)
        if (!prog.types.count(v.type))
            diags.push_back({0, "variable '" + v.name + "' has unknown type " + v.type});

    for (const auto& b : prog.cfg.blocks) {
        const Statement& st = b.stmt;
        switch (st.kind) {
            case StmtKind::Assign:
                check_path(st.lhs, b.line);
                if (st.rhs_kind == RhsKind::Path) check_path(st.rhs, b.line);
                if (st.rhs_kind == RhsKind::New && !prog.types.count(st.new_type))
                    diags.push_back({b.line, "unknown class '" + st.new_type + "'"});
                break;
            case StmtKind::Call:
                check_path(st.lhs, b.line);
                check_path(st.arg, b.line);
                break;
            case StmtKind::Use:
                for (const auto& u : st.uses) check_path(u, b.line);
                break;
            case StmtKind::Return:
                check_path(st.ret, b.line);
                break;
            case StmtKind::CondBranch:
                if (st.cond_var.find('.') != std::string::npos)
                    diags.push_back({b.line, "non-simple condition"});
                break;
            default:
                break;
        }
        if (b.has_cond && b.cond_var.find('.') != std::string::npos)
            diags.push_back({b.line, "non-simple condition"});
    }

    // Reachability from Entry and to Exit.
    size_t n = prog.cfg.blocks.size();
    std::vector<bool> fwd(n, false), bwd(n, false);
    std::vector<int> work{prog.cfg.entry};
    while (!work.empty()) {
        int id = work.back();
        work.pop_back();
        if (fwd[size_t(id)]) continue;
        fwd[size_t(id)] = true;
        for (int s : prog.cfg.block(id).succs) work.push_back(s);
    }
    work.push_back(prog.cfg.exit);
    while (!work.empty()) {
        int id = work.back();
        work.pop_back();
        if (bwd[size_t(id)]) continue;
        bwd[size_t(id)] = true;
        for (int p : prog.cfg.block(id).preds) work.push_back(p);
    }
    for (const auto& b : prog.cfg.blocks) {
        if (!fwd[size_t(b.id)]) diags.push_back({b.line, "unreachable statement"});
        else if (!bwd[size_t(b.id)]) diags.push_back({b.line, "statement cannot reach Exit"});
    }
    return diags;
}

std::string emit_program(const Program& prog) {
    std::ostringstream out;
    for (const auto& [name, rt] : prog.types) {
        out << "class " << name << " {";
        for (const auto& f : rt.ref_fields) {
            out << " " << f;
            if (rt.field_type.at(f) != name) out << ":" << rt.field_type.at(f);
        }
        out << " }\n";
    }
    for (const auto& v : prog.vars) {
        const char* kind = v.kind == VarKind::Global  ? "global"
                           : v.kind == VarKind::Param ? "param"
                                                      : "local";
        out << kind << " " << v.name << ": " << v.type << "\n";
    }

    const CFG& cfg = prog.cfg;
    std::set<int> needs_label;
    for (const auto& b : cfg.blocks) {
        if (b.id == cfg.entry || b.id == cfg.exit) continue;
        if (b.has_cond && b.succs.size() > 1) needs_label.insert(b.succs[1]);
        if (!b.has_cond && b.succs.size() == 1 && b.succs[0] != b.id + 1 &&
            b.stmt.kind != StmtKind::Return)
            needs_label.insert(b.succs[0]);
    }
    auto label = [](int id) { return "L" + std::to_string(id); };
    for (const auto& b : cfg.blocks) {
        if (b.id == cfg.entry) continue;
        if (b.id == cfg.exit) {
            if (needs_label.count(b.id)) out << label(b.id) << ":\n";
            continue;
        }
        if (needs_label.count(b.id)) out << label(b.id) << ":\n";
        if (b.stmt.kind != StmtKind::Other || !b.has_cond) out << b.stmt.text() << "\n";
        if (b.has_cond) out << "if " << b.cond_var << " goto " << label(b.succs[1]) << "\n";
        else if (b.succs.size() == 1 && b.succs[0] != b.id + 1 && b.stmt.kind != StmtKind::Return)
            out << "goto " << label(b.succs[0]) << "\n";
    }
    return out.str();
}

}  // namespace hra
