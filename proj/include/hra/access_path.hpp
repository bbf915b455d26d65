#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace hra {

// An access path names a chain of heap links: a root variable followed by a
// sequence of field names. The empty path (root == "") acts as the neutral
// element used by Base() of simple paths.
struct AccessPath {
    std::string root;
    std::vector<std::string> fields;

    AccessPath() = default;
    AccessPath(std::string r, std::vector<std::string> fs = {})
        : root(std::move(r)), fields(std::move(fs)) {}

    bool empty() const { return root.empty(); }
    bool simple() const { return !empty() && fields.empty(); }
    size_t length() const { return empty() ? 0 : fields.size() + 1; }

    // Path minus its last name; Base of a simple path is the empty path.
    AccessPath base() const;
    // Last name: the final field, or the root for a simple path.
    const std::string& frontier() const;

    AccessPath extended(const std::string& field) const;
    AccessPath with_suffix(const std::vector<std::string>& suffix) const;

    bool is_prefix_of(const AccessPath& other) const;

    // All non-empty prefixes, optionally excluding the path itself.
    std::vector<AccessPath> prefixes(bool proper = false) const;

    std::string text() const;  // canonical rendering: x->f->g
    static AccessPath parse(const std::string& text);

    auto operator<=>(const AccessPath&) const = default;
};

// Orders shorter paths first, then lexicographically; used wherever a
// deterministic candidate order is required.
bool shorter_lex_less(const AccessPath& a, const AccessPath& b);

// A path with an optional trailing star; the star denotes the whole cone
// {path->sigma | sigma any field sequence, including the empty one}.
struct PathOrStar {
    AccessPath path;
    bool star = false;

    bool covers(const AccessPath& p) const {
        return star ? path.is_prefix_of(p) : path == p;
    }
    std::string text() const { return star ? path.text() + "->*" : path.text(); }
    auto operator<=>(const PathOrStar&) const = default;
};

// A set of access paths, either finite or the universal set. The universal
// variant is kept symbolic: cone removals and added members are recorded
// instead of being enumerated.
class PathSet {
public:
    PathSet() = default;  // empty finite set
    static PathSet universal();
    static PathSet of(std::set<AccessPath> paths);

    bool is_universal() const { return universal_; }
    bool member(const AccessPath& p) const;
    const std::set<AccessPath>& paths() const;  // finite variant only

    void add(const AccessPath& p);
    void add_prefixes(const AccessPath& p);  // inserts all non-empty prefixes
    // Removes every path that has `p` as a prefix (the cone p->*).
    void remove_star(const AccessPath& p);

    static PathSet union_(const PathSet& a, const PathSet& b);
    static PathSet intersect(const PathSet& a, const PathSet& b);

    bool prefix_closed() const;  // trivially true for the universal variant

    bool operator==(const PathSet&) const = default;

private:
    bool universal_ = false;
    std::set<AccessPath> paths_;       // members (finite) or added-back members
    std::set<AccessPath> cone_kills_;  // removed cones, universal variant only
};

}  // namespace hra
