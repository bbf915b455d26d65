#include <random>

#include "doctest.h"
#include "hra/access_graph.hpp"

using namespace hra;

namespace {

const std::vector<std::string> kFields = {"f", "g"};

// Small random graphs rooted at x over the fields f and g, occasionally
// containing a star node.
AccessGraph random_graph(std::mt19937& rng) {
    AccessGraph g = AccessGraph::var("x");
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<NodeLabel> pool{g.entry()};
    std::uniform_int_distribution<int> nnodes(1, 4);
    int n = nnodes(rng);
    for (int i = 0; i < n; ++i) {
        NodeLabel lab = NodeLabel::field(kFields[size_t(coin(rng))], 1 + coin(rng), coin(rng));
        g.add_node(lab, coin(rng) == 1);
        pool.push_back(lab);
    }
    if (coin(rng) == 1) {
        NodeLabel s = NodeLabel::star();
        g.add_node(s, true);
        g.add_edge(s, s);
        pool.push_back(s);
    }
    g.set_final(g.entry(), coin(rng) == 1);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    int edges = int(pool.size()) + 2;
    for (int i = 0; i < edges; ++i) {
        NodeLabel from = pool[pick(rng)];
        NodeLabel to = pool[pick(rng)];
        if (to.kind == NodeLabel::Kind::Root) continue;
        g.add_edge(from, to);
    }
    return g;
}

// Every path over the f/g alphabet rooted at x, up to max_len names.
std::vector<AccessPath> all_words(size_t max_len) {
    std::vector<AccessPath> out{AccessPath("x")};
    size_t begin = 0;
    while (true) {
        size_t end = out.size();
        if (out[begin].length() >= max_len) break;
        for (size_t i = begin; i < end; ++i)
            for (const auto& f : kFields) out.push_back(out[i].extended(f));
        begin = end;
    }
    return out;
}

}  // namespace

TEST_CASE("chain graph construction and membership") {
    LabelContext ctx;
    LabeledPath lp = ctx.label(AccessPath::parse("x->r->r"), 1);
    CHECK(lp.nodes[0] == NodeLabel::field("r", 1, 0));
    CHECK(lp.nodes[1] == NodeLabel::field("r", 1, 1));
    CHECK(lp.path() == AccessPath::parse("x->r->r"));

    AccessGraph last = AccessGraph::path(lp, PathPolicy::LastFinal);
    CHECK(last.accepts(AccessPath::parse("x->r->r")));
    CHECK(!last.accepts(AccessPath::parse("x->r")));
    CHECK(!last.accepts(AccessPath("x")));

    AccessGraph all = AccessGraph::path(lp, PathPolicy::AllFinal);
    CHECK(all.accepts(AccessPath("x")));
    CHECK(all.accepts(AccessPath::parse("x->r")));
    CHECK(!all.accepts(AccessPath::parse("x->r->r->r")));

    AccessGraph star = AccessGraph::path_star(lp);
    CHECK(star.accepts(AccessPath::parse("x->r->r->f->g")));
    CHECK(star.accepts(AccessPath("x")));

    CHECK(AccessGraph::var_star("x").accepts(AccessPath::parse("x->a->b->c")));
    CHECK(!AccessGraph::var_star("x").accepts(AccessPath::parse("y->a")));
    CHECK(!AccessGraph{}.accepts(AccessPath("x")));
}

TEST_CASE("canonical rendering") {
    AccessGraph g = AccessGraph::var("x");
    g.set_final(g.entry(), false);
    NodeLabel r = NodeLabel::field("r", 1, 0);
    g.add_node(r, true);
    g.add_edge(g.entry(), r);
    g.add_edge(r, r);
    CHECK(g.canonical_text() == "x: x->r@1#0; r@1#0->r@1#0; final={r@1#0}");
    CHECK(AccessGraph{}.canonical_text() == "<empty>");
    CHECK(g.dot().find("doublecircle") != std::string::npos);
}

TEST_CASE("union laws and order bounds") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        AccessGraph a = random_graph(rng), b = random_graph(rng), c = random_graph(rng);
        AccessGraph ab = AccessGraph::union_(a, b);
        CHECK(ab == AccessGraph::union_(b, a));
        CHECK(AccessGraph::union_(a, a) == a);
        CHECK(AccessGraph::union_(AccessGraph::union_(a, b), c) ==
              AccessGraph::union_(a, AccessGraph::union_(b, c)));
        // The union is a lower bound of both operands (smaller accepts more).
        CHECK(AccessGraph::leq(ab, a));
        CHECK(AccessGraph::leq(ab, b));
        CHECK(AccessGraph::leq(a, AccessGraph{}));
    }
}

TEST_CASE("order is a partial order") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        AccessGraph a = random_graph(rng), b = random_graph(rng);
        CHECK(AccessGraph::leq(a, a));
        if (AccessGraph::leq(a, b) && AccessGraph::leq(b, a)) CHECK(a == b);
        // Order implies language containment.
        if (AccessGraph::leq(a, b))
            for (const auto& w : all_words(4))
                if (b.accepts(w)) CHECK(a.accepts(w));
    }
}

TEST_CASE("enumerate agrees with membership") {
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) {
        AccessGraph g = random_graph(rng);
        auto enumerated = g.enumerate(4, kFields);
        for (const auto& w : all_words(4))
            CHECK(g.accepts(w) == (enumerated.count(w) != 0));
    }
}

TEST_CASE("cleanup preserves the accepted language and is idempotent") {
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        AccessGraph g = random_graph(rng);
        AccessGraph c = g.cleanup();
        CHECK(c.cleanup() == c);
        for (const auto& w : all_words(4)) CHECK(g.accepts(w) == c.accepts(w));
    }
}

TEST_CASE("path removal deletes only the unambiguous last edge") {
    LabelContext ctx;
    AccessGraph chain =
        AccessGraph::path(ctx.label(AccessPath::parse("x->r->r"), 1), PathPolicy::LastFinal);
    CHECK(chain.remove_path(AccessPath::parse("x->r")).empty());

    // A self-loop makes the walk to the corresponding node ambiguous.
    AccessGraph loop = AccessGraph::var("x");
    NodeLabel r = NodeLabel::field("r", 1, 0);
    loop.add_node(r, true);
    loop.add_edge(loop.entry(), r);
    loop.add_edge(r, r);
    CHECK(loop.remove_path(AccessPath::parse("x->r->r")) == loop);

    // Star edges are never deleted.
    AccessGraph star = AccessGraph::var_star("x");
    CHECK(star.remove_path(AccessPath::parse("x->f")) == star);

    // Removing a simple path empties the graph.
    CHECK(AccessGraph::var("x").remove_path(AccessPath("x")).empty());
}

TEST_CASE("path removal is a sound kill") {
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        AccessGraph g = random_graph(rng).cleanup();
        if (g.empty()) continue;
        auto words = g.enumerate(3, kFields);
        if (words.empty()) continue;
        auto it = words.begin();
        std::advance(it, std::uniform_int_distribution<size_t>(0, words.size() - 1)(rng));
        AccessPath rho = *it;
        AccessGraph r = g.remove_path(rho);
        for (const auto& w : all_words(5)) {
            // Nothing is added, and everything dropped lies under rho.
            if (r.accepts(w)) CHECK(g.accepts(w));
            if (g.accepts(w) && !r.accepts(w)) CHECK(rho.is_prefix_of(w));
        }
    }
}

TEST_CASE("factorization inverts extension on one-step patterns") {
    std::mt19937 rng(23);
    LabelContext ctx;
    for (int i = 0; i < 100; ++i) {
        AccessGraph g = random_graph(rng).cleanup();
        if (g.empty()) continue;
        LabelContext c2;
        AccessGraph pat =
            AccessGraph::path(c2.label(AccessPath::parse("x->f"), 9), PathPolicy::LastFinal);
        auto rem = g.factorize(pat, pat.finals());
        AccessGraph ext = AccessGraph::extend_all(pat, pat.finals(), rem,
                                                  ExtendMode::FromRemainder);
        // Words with a non-empty suffix after x->f are reproduced exactly.
        for (const auto& w : all_words(5)) {
            if (w.length() < 3 || w.fields[0] != "f") continue;
            CHECK(g.accepts(w) == ext.accepts(w));
        }
    }
}

TEST_CASE("empty remainder and extension modes") {
    LabelContext ctx;
    AccessGraph g =
        AccessGraph::path(ctx.label(AccessPath::parse("x->f"), 1), PathPolicy::LastFinal);
    auto rem = g.factorize(g, g.finals());
    REQUIRE(rem.size() == 1);
    CHECK(rem[0].epsilon);

    // Preserve keeps the base statuses; FromRemainder re-derives them.
    LabelContext c2;
    AccessGraph base =
        AccessGraph::path(c2.label(AccessPath::parse("x->g"), 2), PathPolicy::AllFinal);
    AccessGraph pres = AccessGraph::extend(base, base.finals(), rem[0], ExtendMode::Preserve);
    CHECK(pres == base);
    AccessGraph from =
        AccessGraph::extend(base, {NodeLabel::field("g", 2, 0)}, rem[0],
                            ExtendMode::FromRemainder);
    CHECK(from.accepts(AccessPath::parse("x->g")));
    CHECK(!from.accepts(AccessPath("x")));  // demoted to intermediate

    // Extending over the empty remainder set yields the empty graph.
    CHECK(AccessGraph::extend_all(base, base.finals(), {}, ExtendMode::Preserve).empty());
}

TEST_CASE("unique access path detection") {
    AccessGraph g = AccessGraph::var("x");
    NodeLabel f0 = NodeLabel::field("f", 1, 0), f1 = NodeLabel::field("f", 1, 1),
              g0 = NodeLabel::field("g", 1, 0), h = NodeLabel::field("h", 1, 0);
    g.add_node(f0, false);
    g.add_node(f1, false);
    g.add_node(g0, false);
    g.add_node(h, true);
    g.add_edge(g.entry(), f0);
    g.add_edge(g.entry(), g0);
    g.add_edge(f0, h);
    g.add_edge(g0, h);
    CHECK(g.unique_access_path(f0));
    CHECK(!g.unique_access_path(h));  // reached as x->f->h and x->g->h

    AccessGraph two = AccessGraph::var("x");
    two.add_node(f0, false);
    two.add_node(f1, true);
    two.add_edge(two.entry(), f0);
    two.add_edge(two.entry(), f1);
    // Two spellings of the same word are still unique.
    CHECK(two.unique_access_path(two.entry()));
}
