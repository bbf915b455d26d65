#include "hra/access_path.hpp"

#include <sstream>
#include <stdexcept>

namespace hra {

AccessPath AccessPath::base() const {
    if (empty()) throw std::invalid_argument("Base of the empty access path");
    if (fields.empty()) return {};
    AccessPath b = *this;
    b.fields.pop_back();
    return b;
}

const std::string& AccessPath::frontier() const {
    if (empty()) throw std::invalid_argument("Frontier of the empty access path");
    return fields.empty() ? root : fields.back();
}

AccessPath AccessPath::extended(const std::string& field) const {
    AccessPath e = *this;
    e.fields.push_back(field);
    return e;
}

AccessPath AccessPath::with_suffix(const std::vector<std::string>& suffix) const {
    AccessPath e = *this;
    e.fields.insert(e.fields.end(), suffix.begin(), suffix.end());
    return e;
}

bool AccessPath::is_prefix_of(const AccessPath& other) const {
    if (empty()) return true;
    if (root != other.root || fields.size() > other.fields.size()) return false;
    return std::equal(fields.begin(), fields.end(), other.fields.begin());
}

std::vector<AccessPath> AccessPath::prefixes(bool proper) const {
    std::vector<AccessPath> out;
    if (empty()) return out;
    size_t n = fields.size() + (proper ? 0 : 1);
    for (size_t k = 0; k < n; ++k)
        out.emplace_back(root, std::vector<std::string>(fields.begin(), fields.begin() + k));
    return out;
}

std::string AccessPath::text() const {
    std::string s = root;
    for (const auto& f : fields) s += "->" + f;
    return s;
}

AccessPath AccessPath::parse(const std::string& text) {
    AccessPath p;
    size_t pos = 0;
    bool first = true;
    while (pos <= text.size()) {
        size_t next = text.find("->", pos);
        std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (part.empty()) throw std::invalid_argument("bad access path: " + text);
        if (first) {
            p.root = part;
            first = false;
        } else {
            p.fields.push_back(part);
        }
        if (next == std::string::npos) break;
        pos = next + 2;
    }
    return p;
}

bool shorter_lex_less(const AccessPath& a, const AccessPath& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
}

PathSet PathSet::universal() {
    PathSet s;
    s.universal_ = true;
    return s;
}

PathSet PathSet::of(std::set<AccessPath> paths) {
    PathSet s;
    s.paths_ = std::move(paths);
    return s;
}

bool PathSet::member(const AccessPath& p) const {
    if (!universal_) return paths_.count(p) != 0;
    if (paths_.count(p)) return true;  // added back after a cone removal
    for (const auto& killed : cone_kills_)
        if (killed.is_prefix_of(p)) return false;
    return true;
}

const std::set<AccessPath>& PathSet::paths() const {
    if (universal_) throw std::logic_error("enumerating the universal path set");
    return paths_;
}

void PathSet::add(const AccessPath& p) { paths_.insert(p); }

void PathSet::add_prefixes(const AccessPath& p) {
    for (const auto& pre : p.prefixes()) paths_.insert(pre);
}

void PathSet::remove_star(const AccessPath& p) {
    std::erase_if(paths_, [&](const AccessPath& q) { return p.is_prefix_of(q); });
    if (universal_) cone_kills_.insert(p);
}

PathSet PathSet::union_(const PathSet& a, const PathSet& b) {
    if (a.universal_ || b.universal_) {
        const PathSet& u = a.universal_ ? a : b;
        const PathSet& other = a.universal_ ? b : a;
        PathSet r = u;
        if (other.universal_) {
            // Keep only cones that both operands removed; re-added members of
            // either operand survive.
            std::set<AccessPath> cones;
            for (const auto& c : u.cone_kills_)
                if (!other.member(c)) cones.insert(c);
            r.cone_kills_ = std::move(cones);
            r.paths_.insert(other.paths_.begin(), other.paths_.end());
        } else {
            r.paths_.insert(other.paths_.begin(), other.paths_.end());
        }
        return r;
    }
    PathSet r = a;
    r.paths_.insert(b.paths_.begin(), b.paths_.end());
    return r;
}

PathSet PathSet::intersect(const PathSet& a, const PathSet& b) {
    if (a.universal_ && b.universal_) {
        PathSet r = a;
        for (const auto& c : b.cone_kills_) r.remove_star(c);
        std::set<AccessPath> adds;
        for (const auto& p : a.paths_)
            if (b.member(p)) adds.insert(p);
        for (const auto& p : b.paths_)
            if (a.member(p)) adds.insert(p);
        r.paths_ = std::move(adds);
        return r;
    }
    const PathSet& fin = a.universal_ ? b : a;
    const PathSet& other = a.universal_ ? a : b;
    PathSet r;
    for (const auto& p : fin.paths_)
        if (other.member(p)) r.paths_.insert(p);
    return r;
}

bool PathSet::prefix_closed() const {
    if (universal_) return true;
    for (const auto& p : paths_)
        if (!p.simple() && !paths_.count(p.base())) return false;
    return true;
}

}  // namespace hra
