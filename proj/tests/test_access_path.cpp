#include "doctest.h"
#include "hra/access_path.hpp"

using namespace hra;

TEST_CASE("access path parse and render round-trip") {
    for (const char* s : {"x", "x->f", "x->lptr->rptr->lptr"}) {
        AccessPath p = AccessPath::parse(s);
        CHECK(p.text() == s);
    }
    CHECK_THROWS(AccessPath::parse(""));
    CHECK_THROWS(AccessPath::parse("x->"));
}

TEST_CASE("base and frontier") {
    AccessPath p = AccessPath::parse("x->f->g");
    CHECK(p.base() == AccessPath::parse("x->f"));
    CHECK(p.frontier() == "g");
    AccessPath simple("x");
    CHECK(simple.base().empty());
    CHECK(simple.frontier() == "x");
    CHECK_THROWS(AccessPath{}.base());
    CHECK_THROWS(AccessPath{}.frontier());
}

TEST_CASE("prefixes") {
    AccessPath p = AccessPath::parse("x->f->g");
    auto all = p.prefixes();
    REQUIRE(all.size() == 3);
    CHECK(all[0] == AccessPath("x"));
    CHECK(all[2] == p);
    CHECK(p.prefixes(true).size() == 2);
    // The empty path is a prefix of everything.
    CHECK(AccessPath{}.is_prefix_of(p));
    CHECK(AccessPath("x").is_prefix_of(p));
    CHECK(!AccessPath::parse("x->g").is_prefix_of(p));
    CHECK(!AccessPath("y").is_prefix_of(p));
}

TEST_CASE("shorter-then-lexicographic order") {
    CHECK(shorter_lex_less(AccessPath::parse("z"), AccessPath::parse("a->b")));
    CHECK(shorter_lex_less(AccessPath::parse("a->b"), AccessPath::parse("a->c")));
    CHECK(!shorter_lex_less(AccessPath::parse("a->c"), AccessPath::parse("a->b")));
}

TEST_CASE("path-or-star coverage") {
    PathOrStar exact{AccessPath::parse("x->f"), false};
    PathOrStar cone{AccessPath::parse("x->f"), true};
    CHECK(exact.covers(AccessPath::parse("x->f")));
    CHECK(!exact.covers(AccessPath::parse("x->f->g")));
    CHECK(cone.covers(AccessPath::parse("x->f")));
    CHECK(cone.covers(AccessPath::parse("x->f->g->h")));
    CHECK(!cone.covers(AccessPath::parse("x->g")));
}

TEST_CASE("finite path sets") {
    PathSet s = PathSet::of({AccessPath::parse("x->f"), AccessPath::parse("x->f->g")});
    CHECK(s.member(AccessPath::parse("x->f")));
    CHECK(!s.member(AccessPath("x")));
    s.add_prefixes(AccessPath::parse("x->f->g"));
    CHECK(s.member(AccessPath("x")));
    CHECK(s.prefix_closed());
    s.remove_star(AccessPath::parse("x->f"));
    CHECK(s.member(AccessPath("x")));
    CHECK(!s.member(AccessPath::parse("x->f")));
    CHECK(!s.member(AccessPath::parse("x->f->g")));
}

TEST_CASE("universal path set stays symbolic") {
    PathSet u = PathSet::universal();
    CHECK(u.is_universal());
    CHECK(u.member(AccessPath::parse("anything->at->all")));
    CHECK_THROWS(u.paths());

    u.remove_star(AccessPath::parse("x->f"));
    CHECK(u.member(AccessPath("x")));
    CHECK(!u.member(AccessPath::parse("x->f")));
    CHECK(!u.member(AccessPath::parse("x->f->g")));
    u.add(AccessPath::parse("x->f->g"));
    CHECK(u.member(AccessPath::parse("x->f->g")));
    CHECK(!u.member(AccessPath::parse("x->f")));
}

TEST_CASE("universal set intersected with a finite set becomes finite") {
    PathSet u = PathSet::universal();
    u.remove_star(AccessPath::parse("x->f"));
    PathSet fin = PathSet::of({AccessPath("x"), AccessPath::parse("x->f"),
                               AccessPath::parse("y->g")});
    PathSet r = PathSet::intersect(u, fin);
    CHECK(!r.is_universal());
    CHECK(r.paths() == std::set<AccessPath>{AccessPath("x"), AccessPath::parse("y->g")});
    // Intersection is symmetric.
    CHECK(PathSet::intersect(fin, u) == r);
}

TEST_CASE("union and intersection respect membership") {
    PathSet u = PathSet::universal();
    u.remove_star(AccessPath::parse("x->f"));
    PathSet v = PathSet::universal();
    v.remove_star(AccessPath("x"));
    v.add(AccessPath::parse("x->g"));

    std::vector<AccessPath> probes = {
        AccessPath("x"),        AccessPath::parse("x->f"), AccessPath::parse("x->g"),
        AccessPath::parse("x->f->h"), AccessPath("y"),     AccessPath::parse("y->f")};
    PathSet un = PathSet::union_(u, v);
    PathSet in = PathSet::intersect(u, v);
    for (const auto& p : probes) {
        CHECK(un.member(p) == (u.member(p) || v.member(p)));
        CHECK(in.member(p) == (u.member(p) && v.member(p)));
    }
}
