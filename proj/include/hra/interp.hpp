#pragma once

#include <optional>

#include "hra/alias.hpp"

namespace hra {

// A heap object: one reference slot per declared field, -1 meaning null.
// Data fields are opaque and not modeled.
struct HeapObject {
    std::string type;
    std::map<std::string, int> fields;
};

struct HeapState {
    std::vector<HeapObject> objects;
    std::map<std::string, int> roots;  // variable -> object id, -1 for null

    // Objects reachable from the non-null roots.
    int reachable() const;
};

enum class EventKind { Deref, Use, Exception, Probe };

// One observable step of an execution.
//  Deref(path, object): the object named by `path` was dereferenced.
//  Use(path): the data of Target(path) was read.
//  Exception(path): traversal needed to go past `path` but its value is null.
//  Probe(count): reachable-object count taken just before a block runs.
struct Event {
    EventKind kind = EventKind::Deref;
    AccessPath path;
    int object = -1;  // Deref: target id; Probe: reachable count
    int origin = -1;  // original block id of the statement that emitted it

    auto operator<=>(const Event&) const = default;
};

struct Trace {
    std::vector<Event> events;
    bool raised = false;     // ended with a null-dereference exception
    bool exhausted = false;  // schedule ran out (or the step cap was hit)
    HeapState final_state;
};

// Branch outcomes in encounter order; true takes the branch. A block with two
// successors consumes one entry; running out halts the execution.
using Schedule = std::vector<bool>;

// Runs the program under the schedule. A reachability probe fires before
// every executed statement block whose origin is in `probes` (every real
// block when `probes` is empty). Assignments of null traverse their
// left-hand side, and can raise, but emit no Deref events: an inserted null
// assignment is observable only through the exception it would cause.
Trace execute(const Program& prog, const Schedule& schedule,
              const std::set<int>& probes = {});

// All 2^bits schedules of exactly `bits` branch decisions.
std::vector<Schedule> all_schedules(int bits);

struct Verdict {
    bool ok = true;
    std::string detail;  // first divergence, empty when ok
};

// Compares the modified program against the original on every schedule.
// The observable Use/Deref sequences must match; the modified program may
// raise only where the original raises too (possibly earlier, with the
// observables so far a prefix of the original's); reachable counts at
// aligned probes must never grow.
Verdict check_equivalence(const Program& original, const Program& modified,
                          const std::vector<Schedule>& schedules);

// The backward transfer of one statement on one access path: the path whose
// liveness before the statement accounts for the liveness of `rho` after it.
// nullopt means the statement settles rho's value and nothing earlier is
// responsible for it.
std::optional<AccessPath> transfer_path(const Program& prog, const Statement& st,
                                        const AccessPath& rho);

// Exact meet-over-paths solutions by path enumeration, for comparison with
// the fixpoint analyses. A control flow path may visit each block at most
// `unroll` times; on acyclic graphs unroll = 1 is exact. Liveness sets are
// truncated at `max_len` names, so the result under-approximates the ideal
// solution and the graph-based analysis must cover it.
struct MopSets {
    std::map<int, std::set<AccessPath>> in, out;
};

MopSets mop_liveness(const Program& prog, int unroll = 1, size_t max_len = 8);
MopSets mop_availability(const Program& prog, const AliasResult& aliases, int unroll = 1);
MopSets mop_anticipability(const Program& prog, const AliasResult& aliases, int unroll = 1);

}  // namespace hra
