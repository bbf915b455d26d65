#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hra/access_path.hpp"

namespace hra {

struct RecordType {
    std::string name;
    std::vector<std::string> ref_fields;                // declaration order
    std::map<std::string, std::string> field_type;      // field -> record type
    bool has_data = true;
};

enum class VarKind { Global, Param, Local };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Local;
    std::string type;
};

enum class StmtKind { Assign, Call, Use, Return, CondBranch, Goto, Other };
enum class RhsKind { Path, New, Null };

struct Statement {
    StmtKind kind = StmtKind::Other;
    AccessPath lhs;                 // Assign, Call
    RhsKind rhs_kind = RhsKind::Path;
    AccessPath rhs;                 // Assign with an access-expression rhs
    std::string new_type;           // Assign with a New rhs
    std::string callee;             // Call
    AccessPath arg;                 // Call
    std::vector<AccessPath> uses;   // Use (the trailing data selector stripped)
    AccessPath ret;                 // Return
    std::string cond_var;           // CondBranch

    std::string text() const;
};

struct Block {
    int id = 0;                     // 0 is Entry, highest id is Exit
    Statement stmt;                 // Entry/Exit carry an Other statement
    std::vector<int> succs, preds;
    // A block with two successors consumes a branch decision. succs[0] is the
    // fall-through edge, succs[1] the taken edge.
    bool has_cond = false;
    std::string cond_var;
    int origin = -1;                // original block id; -1 for inserted blocks
    int line = 0;                   // source line, 0 if synthetic
};

struct Diagnostic {
    int line = 0;
    std::string message;
};

struct CFG {
    std::vector<Block> blocks;      // indexed by block id; layout order
    int entry = 0;
    int exit = 0;

    const Block& block(int id) const { return blocks.at(size_t(id)); }
    Block& block(int id) { return blocks.at(size_t(id)); }
    // Ids of statement blocks, excluding the synthetic Entry/Exit.
    std::vector<int> real_ids() const;
};

struct Program {
    std::map<std::string, RecordType> types;
    std::vector<Variable> vars;     // declaration order
    CFG cfg;

    const Variable* find_var(const std::string& name) const;
    std::vector<std::string> ref_var_names() const;
    std::vector<std::string> globals() const;
    std::vector<std::string> params() const;

    // Record type reached by the path, or "" if the path does not type-check.
    std::string target_type(const AccessPath& p) const;
    // Reference fields that can extend the path (empty set if untypable).
    std::vector<std::string> out_fields(const AccessPath& p) const;
};

// Parses the text IR. Throws std::runtime_error with a line-positioned
// message on syntax errors; semantic problems are reported via validate().
Program parse_program(const std::string& text);

std::vector<Diagnostic> validate(const Program& prog);

// Serializes back to the text IR format accepted by parse_program.
std::string emit_program(const Program& prog);

}  // namespace hra
