#include "doctest.h"
#include "fixtures.hpp"
#include "hra/alias.hpp"
#include "hra/liveness.hpp"

using namespace hra;
using hra::testing::load_fixture;

namespace {

bool has_pair(const AliasSet& s, const char* a, const char* b) {
    AccessPath pa = AccessPath::parse(a), pb = AccessPath::parse(b);
    for (const auto& p : s) {
        if (p.lhs.path == pa && p.rhs.path == pb) return true;
        if (p.lhs.path == pb && p.rhs.path == pa) return true;
    }
    return false;
}

bool lna_has(const std::set<PathOrStar>& s, const char* path, bool star = false) {
    return s.count({AccessPath::parse(path), star}) != 0;
}

}  // namespace

TEST_CASE("running fixture may-alias pairs") {
    Program p = load_fixture("run.ir");
    AliasResult ar = may_alias(p);

    CHECK(ar.in.at(1).empty());
    CHECK(ar.out.at(1).size() == 1);
    CHECK(has_pair(ar.out.at(1), "w", "x"));

    for (int id : {2, 3, 4}) {
        CAPTURE(id);
        CHECK(ar.in.at(id).size() == 2);
        CHECK(has_pair(ar.in.at(id), "w", "x"));
        CHECK(has_pair(ar.in.at(id), "x", "x->rptr"));
    }
    CHECK(ar.out.at(4).size() == 3);
    CHECK(has_pair(ar.out.at(4), "y", "x->lptr"));
    CHECK(ar.out.at(6).size() == 4);
    CHECK(has_pair(ar.out.at(6), "y", "y->lptr"));
    CHECK(ar.in.at(7) == ar.out.at(6));
    CHECK(ar.out.at(7) == ar.in.at(7));  // uses generate nothing

    // Pairs remember the block that created them.
    for (const auto& pr : ar.out.at(6))
        CHECK((pr.block >= 1 && pr.block <= 6));
}

TEST_CASE("calls create conservative star pairs") {
    Program p = parse_program(
        "class C { r }\n"
        "global g: C\n"
        "local x: C\n"
        "local y: C\n"
        "x = call helper(y)\n"
        "use x.d\n");
    AliasResult ar = may_alias(p);
    const AliasSet& out = ar.out.at(1);
    bool lhs_arg = false, arg_global = false, star_sides = true;
    for (const auto& pr : out) {
        if (pr.lhs.path == AccessPath("x") && pr.rhs.path == AccessPath("y")) {
            lhs_arg = true;
            CHECK(!pr.lhs.star);
            CHECK(pr.rhs.star);
        }
        if (has_pair({pr}, "y", "g")) arg_global = true;
    }
    CHECK(lhs_arg);
    CHECK(arg_global);
    CHECK(star_sides);
    // The star side accepts everything below the argument.
    for (const auto& pr : out)
        if (pr.rhs.star) CHECK(pr.rhs.graph.accepts(pr.rhs.path.extended("r").extended("r")));
}

TEST_CASE("link aliases at the last use of the running fixture") {
    Program p = load_fixture("run.ir");
    AliasResult ar = may_alias(p);
    const AliasSet& a7 = ar.in.at(7);

    auto s = lna(AccessPath::parse("x->lptr->lptr"), a7);
    CHECK(lna_has(s, "x->lptr->lptr"));
    CHECK(lna_has(s, "y->lptr"));       // y may target the x->lptr node
    CHECK(lna_has(s, "w->lptr->lptr")); // w may target the x node
    CHECK(!lna_has(s, "y"));            // a root cell is never a heap link

    // A simple path is a cell of its own; nothing else names it.
    CHECK(lna(AccessPath("y"), a7) == std::set<PathOrStar>{{AccessPath("y"), false}});
    CHECK(lna(AccessPath("x"), a7) == std::set<PathOrStar>{{AccessPath("x"), false}});

    auto sxl = lna(AccessPath::parse("x->lptr"), a7);
    CHECK(lna_has(sxl, "x->lptr"));
    CHECK(lna_has(sxl, "w->lptr"));        // via the pair from w = x
    CHECK(lna_has(sxl, "x->rptr->lptr"));  // via the loop pair from x = x.rptr
    CHECK(!lna_has(sxl, "y"));

    // z comes from an allocation and aliases nothing else.
    CHECK(lna(AccessPath("z"), a7).size() == 1);
}

TEST_CASE("lna always contains the query path") {
    Program p = load_fixture("run.ir");
    AliasResult ar = may_alias(p);
    for (const char* q : {"x", "y", "w->lptr", "x->rptr->lptr", "z->rptr"}) {
        CAPTURE(q);
        CHECK(lna_has(lna(AccessPath::parse(q), ar.in.at(7)), q));
    }
}

TEST_CASE("lng transplants only proper suffixes") {
    // Source: x with x->f and x->f->g live. Pair: <w, x> created at block 1.
    LabelContext ctx;
    AliasSide sw{AccessGraph::var("w"), AccessPath("w"), false};
    AliasSide sx{AccessGraph::var("x"), AccessPath("x"), false};
    AccessGraph live_x =
        AccessGraph::path(ctx.label(AccessPath::parse("x->f->g"), 2), PathPolicy::AllFinal);
    AccessGraph moved = lng(AccessGraph{}, live_x, sx, sw);
    CHECK(moved.accepts(AccessPath::parse("w->f")));
    CHECK(moved.accepts(AccessPath::parse("w->f->g")));
    CHECK(!moved.accepts(AccessPath("w")));  // the empty suffix is not moved

    // A live simple path alone moves nothing.
    CHECK(lng(AccessGraph{}, AccessGraph::var("x"), sx, sw).empty());
}

TEST_CASE("complete liveness extends explicit liveness") {
    for (const char* name : {"seq.ir", "loop.ir", "run.ir"}) {
        CAPTURE(name);
        Program p = load_fixture(name);
        DataflowGraphs ex = explicit_liveness(p);
        DataflowGraphs cl = complete_liveness(p, may_alias(p));
        for (const auto& [id, m] : ex.in)
            for (const auto& [v, g] : m) {
                CAPTURE(id);
                CAPTURE(v);
                CHECK(AccessGraph::leq(graphs_get(cl.in.at(id), v), g));
            }
    }
}

TEST_CASE("complete liveness on the running fixture") {
    Program p = load_fixture("run.ir");
    DataflowGraphs cl = complete_liveness(p, may_alias(p));

    // w itself stays dead even though its links are live through x.
    const AccessGraph& w2 = graphs_get(cl.in.at(2), "w");
    CHECK(!w2.accepts(AccessPath("w")));
    CHECK(w2.accepts(AccessPath::parse("w->rptr")));
    CHECK(w2.accepts(AccessPath::parse("w->lptr")));
    CHECK(graphs_get(cl.in.at(1), "w").empty());
    CHECK(!graphs_get(cl.out.at(1), "w").accepts(AccessPath("w")));

    // z never gains aliases.
    CHECK(graphs_get(cl.in.at(7), "z") == AccessGraph::var("z"));
    CHECK(graphs_get(cl.out.at(7), "z").empty());

    // Inside the loop only the rptr spine and x itself are live; the pair
    // <x, x->rptr> must not pull x's lptr liveness back onto x through the
    // reversed orientation.
    const AccessGraph& x3 = graphs_get(cl.in.at(3), "x");
    CHECK(x3.accepts(AccessPath::parse("x->rptr")));
    CHECK(x3.accepts(AccessPath::parse("x->rptr->lptr->lptr")));
    CHECK(!x3.accepts(AccessPath::parse("x->lptr")));

    // After block 6 the link x->lptr->lptr is dead: the value it used to
    // reach is now reached through y.
    const AccessGraph& x7 = graphs_get(cl.in.at(7), "x");
    CHECK(x7.accepts(AccessPath::parse("x->lptr")));
    CHECK(!x7.accepts(AccessPath::parse("x->lptr->lptr")));
    const AccessGraph& x6 = graphs_get(cl.in.at(6), "x");
    CHECK(x6.accepts(AccessPath::parse("x->lptr->lptr")));  // via <y, x->lptr>
}

TEST_CASE("a copy keeps the source's links implicitly live") {
    // pn.ir: after x = y the link y->n is the link x->n. The final block
    // writes through x.n, so y->n must be live at the blocks before it even
    // though y is never mentioned again.
    Program p = load_fixture("pn.ir");
    AliasResult as = may_alias(p);
    DataflowGraphs cl = complete_liveness(p, as);

    const AccessGraph& y7 = graphs_get(cl.out.at(7), "y");
    CHECK(y7.accepts(AccessPath::parse("y->n")));
    CHECK(!y7.accepts(AccessPath("y")));

    auto links = lna(AccessPath::parse("y->n"), as.in.at(7));
    CHECK(links.contains(PathOrStar{AccessPath::parse("x->n"), false}));
    CHECK(links.contains(PathOrStar{AccessPath::parse("y->n"), false}));
}
