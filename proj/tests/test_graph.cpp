#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "corpus.hpp"
#include "drsys/cylinder.hpp"
#include "drsys/point.hpp"
#include "drsys/system.hpp"

using namespace drsys;

TEST_CASE("parse_graph basics") {
    DirectedGraph g = parse_graph("vertex v\n");
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
    CHECK(g.sinks().size() == 1);

    DirectedGraph loop = corpus::loop_graph();
    CHECK(loop.vertex_count() == 1);
    CHECK(loop.edge_count() == 1);
    CHECK(loop.sinks().empty());

    DirectedGraph p2 = corpus::p2_graph();
    CHECK(p2.vertex_count() == 2);
    CHECK(p2.edge_count() == 1);
    REQUIRE(p2.sinks().size() == 1);
    CHECK(p2.vertex_name(p2.sinks()[0]) == "w");
}

TEST_CASE("parse_graph errors carry line numbers") {
    CHECK_THROWS_AS(parse_graph("vertex v\nvertex v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("edge e a b\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("vertex v\nedge e v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("foo bar\n"), ParseError);
    try {
        parse_graph("vertex v\nvortex w\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 2);
    }
    // comments and blank lines are fine
    CHECK_NOTHROW(parse_graph("# header\n\nvertex v # trailing\n"));
}

TEST_CASE("canonical lasso: primitive root reduction") {
    DirectedGraph g = corpus::loop_graph();
    EdgeId e = g.edge_checked("e");
    BoundaryPoint x = canonical_lasso(g, Path{0, {}}, {e, e});
    CHECK(x.cycle == std::vector<EdgeId>{e});
    CHECK(x.prefix.empty());
}

TEST_CASE("canonical lasso: prefix absorption on the 2-shift") {
    DirectedGraph g = corpus::o2_graph();
    EdgeId a = g.edge_checked("a"), b = g.edge_checked("b");
    // a.(ba)^w = (ab)^w: expand both to 10 symbols to double-check
    BoundaryPoint x = canonical_lasso(g, Path{0, {a}}, {b, a});
    BoundaryPoint ab = canonical_lasso(g, Path{0, {}}, {a, b});
    CHECK(x == ab);
    std::vector<EdgeId> raw;
    for (int i = 0; i < 10; ++i) raw.push_back(i % 2 == 0 ? a : b);
    CHECK(x.expand(10) == raw);
    // already canonical stays put
    CHECK(canonical_lasso(g, Path{0, {}}, {a, b}) == ab);
    // idempotence on the canonical form
    CHECK(canonical_lasso(g, x.prefix, x.cycle) == x);
}

TEST_CASE("canonical lasso rejects bad input") {
    DirectedGraph g = corpus::p2_graph();
    EdgeId f = g.edge_checked("f");
    CHECK_THROWS_AS(canonical_lasso(g, Path{0, {}}, {}), NotComposable);
    CHECK_THROWS_AS(canonical_lasso(g, Path{0, {}}, {f}), NotComposable);  // not closed
}

TEST_CASE("point literals round-trip") {
    DirectedGraph g = corpus::o2_graph();
    for (const char* lit : {"(a)^w", "(a.b)^w", "a.(b)^w", "b.(b.a.a)^w"}) {
        BoundaryPoint x = parse_point(g, lit);
        CHECK(format_point(x) == lit);
    }
    DirectedGraph p2 = corpus::p2_graph();
    CHECK(format_point(parse_point(p2, "@w")) == "@w");
    CHECK(format_point(parse_point(p2, "f")) == "f@w");
    CHECK(format_point(parse_point(p2, "f@w")) == "f@w");
    CHECK_THROWS_AS(parse_point(p2, "f@u"), ParseError);
    CHECK_THROWS_AS(parse_point(p2, "@z"), ParseError);
    // non-canonical literals normalise
    CHECK(format_point(parse_point(g, "a.(b.a)^w")) == "(a.b)^w");
}

TEST_CASE("cylinder partition examples") {
    DirectedGraph loop = corpus::loop_graph();
    auto parts = cylinder_partition(loop, 2);
    REQUIRE(parts.size() == 1);
    CHECK(format_cylinder(parts[0]) == "e.e");

    DirectedGraph p2 = corpus::p2_graph();
    auto parts2 = cylinder_partition(p2, 1);
    REQUIRE(parts2.size() == 2);
    CHECK(format_cylinder(parts2[0]) == "@w");
    CHECK(format_cylinder(parts2[1]) == "f");

    DirectedGraph o2 = corpus::o2_graph();
    auto parts3 = cylinder_partition(o2, 2);
    REQUIRE(parts3.size() == 4);
    std::set<std::string> names;
    for (const auto& c : parts3) names.insert(format_cylinder(c));
    CHECK(names == std::set<std::string>{"a.a", "a.b", "b.a", "b.b"});
}

TEST_CASE("membership") {
    DirectedGraph g = corpus::o2_graph();
    BoundaryPoint ab = parse_point(g, "(a.b)^w");
    CHECK(cylinder_contains(parse_cylinder(g, "a.b"), ab));
    CHECK_FALSE(cylinder_contains(parse_cylinder(g, "b.a"), ab));

    DirectedGraph p2 = corpus::p2_graph();
    BoundaryPoint f = parse_point(p2, "f");
    CHECK_FALSE(cylinder_contains(parse_cylinder(p2, "@w"), f));
    CHECK(cylinder_contains(parse_cylinder(p2, "@u"), f));
    CHECK(cylinder_contains(parse_cylinder(p2, "f"), f));
    CHECK_FALSE(cylinder_contains(parse_cylinder(p2, "f"), parse_point(p2, "@w")));
}

TEST_CASE("partition property: random points land in exactly one cylinder") {
    std::mt19937_64 rng(7);
    for (const DirectedGraph& g :
         {corpus::o2_graph(), corpus::p2_graph(), corpus::loop_graph(),
          corpus::o2split_graph(), corpus::diamond_graph(), corpus::l2_graph()}) {
        for (int depth = 0; depth <= 6; ++depth) {
            auto parts = cylinder_partition(g, depth);
            for (int trial = 0; trial < 200; ++trial) {
                BoundaryPoint x = random_boundary_point(g, rng);
                int hits = 0;
                for (const auto& c : parts) hits += cylinder_contains(c, x);
                REQUIRE(hits == 1);
            }
        }
    }
}

TEST_CASE("canonical form soundness: expansion matches the raw description") {
    std::mt19937_64 rng(11);
    DirectedGraph g = corpus::o2split_graph();
    for (int trial = 0; trial < 300; ++trial) {
        // build a raw (prefix, cycle) pair by random walking
        BoundaryPoint sample = random_boundary_point(g, rng, 3);
        if (sample.is_finite()) continue;
        // duplicate the cycle and push one rotation into the prefix to make
        // the description non-canonical
        std::vector<EdgeId> pre = sample.prefix.edges;
        std::vector<EdgeId> cyc = sample.cycle;
        std::vector<EdgeId> doubled = cyc;
        doubled.insert(doubled.end(), cyc.begin(), cyc.end());
        long n = static_cast<long>(pre.size()) + 3 * static_cast<long>(doubled.size());
        std::vector<EdgeId> raw;
        for (long i = 0; i < n; ++i)
            raw.push_back(i < static_cast<long>(pre.size())
                              ? pre[static_cast<size_t>(i)]
                              : doubled[static_cast<size_t>((i - pre.size()) % doubled.size())]);
        BoundaryPoint rebuilt =
            canonical_lasso(g, Path{sample.start_vertex(), pre}, doubled);
        CHECK(rebuilt == sample);
        CHECK(rebuilt.expand(n) == raw);
    }
}

TEST_CASE("lasso equality agrees with 50-symbol expansion equality") {
    std::mt19937_64 rng(13);
    DirectedGraph g = corpus::o2_graph();
    auto random_lasso = [&](int max_pre, int max_cyc) {
        // raw, possibly non-canonical description
        std::vector<EdgeId> pre, cyc;
        int np = static_cast<int>(rng() % (max_pre + 1));
        int nc = 1 + static_cast<int>(rng() % max_cyc);
        for (int i = 0; i < np; ++i) pre.push_back(static_cast<EdgeId>(rng() % 2));
        for (int i = 0; i < nc; ++i) cyc.push_back(static_cast<EdgeId>(rng() % 2));
        return canonical_lasso(g, Path{0, pre}, cyc);
    };
    for (int trial = 0; trial < 500; ++trial) {
        BoundaryPoint x = random_lasso(6, 6), y = random_lasso(6, 6);
        CHECK((x == y) == (x.expand(50) == y.expand(50)));
    }
}

TEST_CASE("enumerate_boundary on finite spaces") {
    CHECK(enumerate_boundary(corpus::point_graph()).size() == 1);
    CHECK(enumerate_boundary(corpus::loop_graph()).size() == 1);
    CHECK(enumerate_boundary(corpus::p2_graph()).size() == 2);
    CHECK(enumerate_boundary(corpus::p3_graph()).size() == 3);
    CHECK(enumerate_boundary(corpus::p2p2_graph()).size() == 4);
    CHECK(enumerate_boundary(corpus::diamond_graph()).size() == 5);
    CHECK(enumerate_boundary(corpus::tree3_graph()).size() == 32);
    CHECK(enumerate_boundary(corpus::l2_graph()).size() == 2);
    CHECK_THROWS(enumerate_boundary(corpus::o2_graph()));
}

TEST_CASE("refine_to_atoms covers and separates") {
    DirectedGraph g = corpus::p3_graph();
    std::vector<Cylinder> bases{parse_cylinder(g, "@u"), parse_cylinder(g, "a"),
                                parse_cylinder(g, "@w"), parse_cylinder(g, "@v")};
    auto atoms = refine_to_atoms(g, bases);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        BoundaryPoint x = random_boundary_point(g, rng);
        for (const auto& base : bases) {
            int in_base = cylinder_contains(base, x);
            int in_atoms = 0;
            for (const auto& atom : atoms)
                if (cylinder_subset(atom, base) && cylinder_contains(atom, x)) ++in_atoms;
            CHECK(in_base == in_atoms);
        }
        int total = 0;
        for (const auto& atom : atoms) total += cylinder_contains(atom, x);
        CHECK(total <= 1);
    }
}

TEST_CASE("representative_point lies in its cylinder") {
    for (const DirectedGraph& g : {corpus::o2_graph(), corpus::p3_graph(),
                                   corpus::o2split_graph(), corpus::diamond_graph()}) {
        for (int d = 0; d <= 3; ++d)
            for (const Cylinder& c : cylinder_partition(g, d))
                CHECK(cylinder_contains(c, representative_point(c)));
    }
}
