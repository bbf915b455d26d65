#include "doctest.h"
#include "fixtures.hpp"
#include "hra/avail_ant.hpp"

using namespace hra;
using hra::testing::load_fixture;

namespace {

PathSet ps(std::initializer_list<const char*> items) {
    std::set<AccessPath> s;
    for (const char* it : items) s.insert(AccessPath::parse(it));
    return PathSet::of(std::move(s));
}

}  // namespace

TEST_CASE("availability on the running fixture") {
    Program p = load_fixture("run.ir");
    AliasResult ar = may_alias(p);
    PathSetFlow av = availability(p, ar);

    CHECK(av.in.at(1) == ps({}));
    CHECK(av.out.at(1) == ps({}));
    CHECK(av.in.at(2) == ps({}));  // loop entry meets the empty first pass
    CHECK(av.out.at(2) == ps({"x"}));
    CHECK(av.in.at(3) == ps({"x"}));
    CHECK(av.out.at(3) == ps({"x"}));
    CHECK(av.in.at(4) == ps({"x"}));
    CHECK(av.out.at(4) == ps({"x"}));
    CHECK(av.in.at(5) == ps({"x"}));
    CHECK(av.out.at(5) == ps({"x", "z"}));
    CHECK(av.in.at(6) == ps({"x", "z"}));
    CHECK(av.out.at(6) == ps({"x", "y", "z"}));
    CHECK(av.in.at(7) == ps({"x", "y", "z"}));
    CHECK(av.out.at(7) == ps({"x", "x->lptr", "y", "z"}));
}

TEST_CASE("anticipability on the running fixture") {
    Program p = load_fixture("run.ir");
    AliasResult ar = may_alias(p);
    PathSetFlow an = anticipability(p, ar);

    CHECK(an.in.at(1) == ps({"x"}));
    CHECK(an.out.at(1) == ps({"x"}));
    CHECK(an.in.at(2) == ps({"x"}));
    CHECK(an.out.at(2) == ps({"x"}));
    CHECK(an.in.at(3) == ps({"x", "x->rptr"}));
    CHECK(an.out.at(3) == ps({"x"}));
    CHECK(an.in.at(4) == ps({"x", "x->lptr", "x->lptr->lptr"}));
    CHECK(an.out.at(4) == ps({"x", "x->lptr", "y", "y->lptr"}));
    CHECK(an.in.at(5) == ps({"x", "x->lptr", "y", "y->lptr"}));
    CHECK(an.out.at(5) == ps({"x", "x->lptr", "y", "y->lptr", "z"}));
    CHECK(an.in.at(6) == ps({"x", "x->lptr", "y", "y->lptr", "z"}));
    CHECK(an.out.at(6) == ps({"x", "x->lptr", "y", "z"}));
    CHECK(an.in.at(7) == ps({"x", "x->lptr", "y", "z"}));
    CHECK(an.out.at(7) == ps({}));
}

TEST_CASE("availability and anticipability of the loop fixture") {
    Program p = load_fixture("loop.ir");
    AliasResult ar = may_alias(p);
    PathSetFlow av = availability(p, ar);
    PathSetFlow an = anticipability(p, ar);

    CHECK(av.in.at(1) == ps({}));
    CHECK(av.out.at(1) == ps({"x"}));
    CHECK(av.in.at(2) == ps({"x"}));
    CHECK(av.out.at(2) == ps({"x"}));

    CHECK(an.in.at(1) == ps({"x", "x->r"}));
    CHECK(an.out.at(1) == ps({"x"}));
    CHECK(an.in.at(2) == ps({"x"}));
    CHECK(an.out.at(2) == ps({}));
}

TEST_CASE("allocation makes the target itself available but not anticipable") {
    Program p = parse_program(
        "class C { r }\n"
        "local x: C\n"
        "x = new C\n"
        "use x.r.d\n");
    AliasResult ar = may_alias(p);
    PathSetFlow av = availability(p, ar);
    PathSetFlow an = anticipability(p, ar);
    CHECK(av.out.at(1) == ps({"x"}));
    CHECK(an.in.at(1) == ps({}));            // x = new reads nothing
    CHECK(an.in.at(2) == ps({"x", "x->r"}));  // the use dereferences both
}

TEST_CASE("assignment kills cones of every link alias of the target") {
    // After u = w, writing w.r also invalidates u.r and everything below it.
    Program p = parse_program(
        "class C { r }\n"
        "local u: C\n"
        "local w: C\n"
        "u = w\n"
        "use u.r.d\n"
        "use w.r.d\n"
        "w.r = null\n"
        "use u.d\n");
    AliasResult ar = may_alias(p);
    PathSetFlow av = availability(p, ar);
    // Both spellings of the link are available after the uses.
    CHECK(av.in.at(4).member(AccessPath::parse("u->r")));
    CHECK(av.in.at(4).member(AccessPath::parse("w->r")));
    // The null assignment kills both cones; the bases survive.
    CHECK(!av.out.at(4).member(AccessPath::parse("u->r")));
    CHECK(!av.out.at(4).member(AccessPath::parse("w->r")));
    CHECK(av.out.at(4).member(AccessPath("u")));
    CHECK(av.out.at(4).member(AccessPath("w")));
}

TEST_CASE("transfer moves suffixes across a copy, both directions") {
    Program p = parse_program(
        "class C { r }\n"
        "local a: C\n"
        "local b: C\n"
        "use a.r.d\n"
        "b = a\n"
        "use b.r.d\n");
    AliasResult ar = may_alias(p);
    PathSetFlow av = availability(p, ar);
    PathSetFlow an = anticipability(p, ar);
    // Availability of a->r before the copy becomes availability of b->r.
    CHECK(av.out.at(2).member(AccessPath::parse("b->r")));
    // Anticipability of b->r after the copy becomes anticipability of a->r.
    CHECK(an.in.at(2).member(AccessPath::parse("a->r")));
}

TEST_CASE("must analyses stabilize quickly on the fixtures") {
    for (const char* name : {"seq.ir", "loop.ir", "run.ir"}) {
        CAPTURE(name);
        Program p = load_fixture(name);
        AliasResult ar = may_alias(p);
        size_t pav = 0, pan = 0;
        availability(p, ar, &pav);
        anticipability(p, ar, &pan);
        CHECK(pav <= 6);
        CHECK(pan <= 6);
    }
}

TEST_CASE("a link assigned on one branch only is not accessible at the join") {
    // pn.ir: block 4 assigns x.n on one arm of the diamond; on the other arm
    // (block 3) the object x.n may not exist, so x->n must be neither
    // available nor anticipable there.
    Program p = load_fixture("pn.ir");
    AliasResult as = may_alias(p);
    PathSetFlow av = availability(p, as);
    PathSetFlow ant = anticipability(p, as);
    AccessPath xn = AccessPath::parse("x->n");
    CHECK(!av.out.at(3).member(xn));
    CHECK(!ant.out.at(3).member(xn));
    CHECK(av.out.at(4).member(xn));
}
