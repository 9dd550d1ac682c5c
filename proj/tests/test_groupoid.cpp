#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "maps.hpp"
#include "drsys/groupoid.hpp"

using namespace drsys;

TEST_CASE("make_element and witness minimisation") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    BoundaryPoint ab = parse_point(o2, "(a.b)^w");
    // (x, 1, 1, x) minimises to the unit
    GroupoidElement u = make_element(sys, ab, 1, 1, ab);
    CHECK(u.is_unit());
    CHECK(u.m == 0);
    CHECK(u.n == 0);

    BoundaryPoint abw = parse_point(o2, "a.(b)^w");
    BoundaryPoint bw = parse_point(o2, "(b)^w");
    GroupoidElement g = make_element(sys, abw, 1, 0, bw);
    CHECK(g.degree() == 1);

    CHECK_THROWS_AS(make_element(sys, parse_point(o2, "(a)^w"), 1, 1,
                                 parse_point(o2, "(b)^w")),
                    WitnessError);
}

TEST_CASE("composition and inversion") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    BoundaryPoint abw = parse_point(o2, "a.(b)^w");
    BoundaryPoint aabw = parse_point(o2, "a.a.(b)^w");
    BoundaryPoint bw = parse_point(o2, "(b)^w");

    GroupoidElement g = make_element(sys, abw, 1, 0, bw);
    GroupoidElement gi = inverse(sys, g);
    CHECK(compose(sys, g, gi) == unit_at(sys, abw));
    CHECK(compose(sys, gi, g) == unit_at(sys, bw));
    // unit absorption
    CHECK(compose(sys, g, unit_at(sys, bw)) == g);
    // degrees add
    GroupoidElement h = make_element(sys, aabw, 1, 0, abw);
    GroupoidElement hg = compose(sys, h, g);
    CHECK(hg.degree() == 2);
    CHECK(hg == make_element(sys, aabw, 2, 0, bw));
    CHECK_THROWS_AS(compose(sys, g, h), NotComposable);
}

TEST_CASE("f_iterated") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    IntegerFn ia = IntegerFn::indicator(parse_cylinder(o2, "a"));
    CHECK(f_iterated(sys, ia, 3, parse_point(o2, "(a.b)^w")) == 2);
    CHECK(f_iterated(sys, ia, 0, parse_point(o2, "(b)^w")) == 0);
    IntegerFn one = IntegerFn::constant(o2, 1);
    for (long k = 0; k <= 5; ++k)
        CHECK(f_iterated(sys, one, k, parse_point(o2, "(a.b)^w")) == k);
}

TEST_CASE("cocycle evaluation and canonical cocycle") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    IntegerFn one = IntegerFn::constant(o2, 1);
    IntegerFn ia = IntegerFn::indicator(parse_cylinder(o2, "a"));
    GroupoidElement g =
        make_element(sys, parse_point(o2, "a.(b)^w"), 1, 0, parse_point(o2, "(b)^w"));
    CHECK(cocycle_eval(sys, one, g) == 1);  // canonical cocycle = degree
    CHECK(cocycle_eval(sys, ia, g) == 1);
    CHECK(cocycle_eval(sys, ia, unit_at(sys, parse_point(o2, "(a)^w"))) == 0);
}

TEST_CASE("cocycle well-definedness under witness inflation") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    std::mt19937_64 rng(47);
    int done = 0;
    while (done < 200) {
        BoundaryPoint x = random_boundary_point(o2, rng);
        long extra = static_cast<long>(rng() % 3);
        long m = static_cast<long>(rng() % 3);
        if (!x.in_shift_domain(m)) continue;
        BoundaryPoint y = sys.shift(x, m);  // (x, m, 0, y) is an element
        IntegerFn f = IntegerFn::weighted_sum(
            o2, {{parse_cylinder(o2, "a"), static_cast<long long>(rng() % 5) - 2},
                 {parse_cylinder(o2, "b.a"), static_cast<long long>(rng() % 5) - 2}});
        GroupoidElement g = make_element(sys, x, m, 0, y);
        long long base = cocycle_eval(sys, f, g);
        // inflate the witness by j on both sides: value must not move
        for (long j = 1; j <= extra; ++j) {
            long long lhs = f_iterated(sys, f, g.m + j, x);
            long long rhs = f_iterated(sys, f, g.n + j, y);
            CHECK(lhs - rhs == base);
        }
        ++done;
    }
}

TEST_CASE("cocycles are homomorphisms") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    std::mt19937_64 rng(53);
    IntegerFn f = IntegerFn::weighted_sum(
        o2, {{parse_cylinder(o2, "a"), 2}, {parse_cylinder(o2, "b.b"), -1}});
    int done = 0;
    while (done < 200) {
        BoundaryPoint x = random_boundary_point(o2, rng);
        long m1 = static_cast<long>(rng() % 3), m2 = static_cast<long>(rng() % 3);
        if (!x.in_shift_domain(m1 + m2)) continue;
        BoundaryPoint y = sys.shift(x, m1);
        BoundaryPoint z = sys.shift(y, m2);
        GroupoidElement g1 = make_element(sys, x, m1, 0, y);
        GroupoidElement g2 = make_element(sys, y, m2, 0, z);
        GroupoidElement g12 = compose(sys, g1, g2);
        CHECK(cocycle_eval(sys, f, g12) ==
              cocycle_eval(sys, f, g1) + cocycle_eval(sys, f, g2));
        CHECK(cocycle_eval(sys, f, inverse(sys, g1)) == -cocycle_eval(sys, f, g1));
        ++done;
    }
}

TEST_CASE("induced isomorphism functoriality") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    auto swap = corpus::o2_swap(o2);
    InducedIsomorphism psi(swap);

    // worked image: (a.b^w, 1, b^w) -> (b.a^w, 1, a^w)
    GroupoidElement g =
        make_element(sys, parse_point(o2, "a.(b)^w"), 1, 0, parse_point(o2, "(b)^w"));
    GroupoidElement pg = psi(g);
    CHECK(pg == make_element(sys, parse_point(o2, "b.(a)^w"), 1, 0,
                             parse_point(o2, "(a)^w")));

    std::mt19937_64 rng(59);
    int done = 0;
    while (done < 100) {
        BoundaryPoint x = random_boundary_point(o2, rng);
        long m1 = static_cast<long>(rng() % 3), m2 = static_cast<long>(rng() % 3);
        if (!x.in_shift_domain(m1 + m2)) continue;
        BoundaryPoint y = sys.shift(x, m1);
        BoundaryPoint z = sys.shift(y, m2);
        GroupoidElement g1 = make_element(sys, x, m1, 0, y);
        GroupoidElement g2 = make_element(sys, y, m2, 0, z);
        CHECK(psi(compose(sys, g1, g2)) == compose(sys, psi(g1), psi(g2)));
        CHECK(psi(inverse(sys, g1)) == inverse(sys, psi(g1)));
        CHECK(psi(unit_at(sys, x)) == unit_at(sys, swap.map_point(x)));
        ++done;
    }

    // identity map gives the identity isomorphism
    auto id_map = corpus::o2_identity(o2);
    InducedIsomorphism id_psi(id_map);
    GroupoidElement same = id_psi(g);
    CHECK(same == g);

    // a non-conjugacy is rejected
    auto fls = corpus::o2_first_letter_swap(o2);
    CHECK_THROWS_AS(InducedIsomorphism bad(fls), NotConjugacy);
}

TEST_CASE("intertwine_check: conjugacies pass at depth 3") {
    DirectedGraph o2 = corpus::o2_graph();
    DirectedGraph split = corpus::o2split_graph();
    CHECK(intertwine_check(corpus::o2_swap(o2), 3).ok);
    CHECK(intertwine_check(corpus::o2_identity(o2), 3).ok);
    CHECK(intertwine_check(corpus::o2_to_split(o2, split), 3).ok);
}

TEST_CASE("intertwine_check: the eventual conjugacy fails with witness Z(a)") {
    DirectedGraph o2 = corpus::o2_graph();
    auto report = intertwine_check(corpus::o2_first_letter_swap(o2), 1);
    CHECK_FALSE(report.ok);
    CHECK(report.witness_g == "a");
}

TEST_CASE("separating_check") {
    DirectedGraph o2 = corpus::o2_graph();
    BoundaryPoint aw = parse_point(o2, "(a)^w");
    BoundaryPoint bw = parse_point(o2, "(b)^w");
    BoundaryPoint ab = parse_point(o2, "(a.b)^w");
    BoundaryPoint ba = parse_point(o2, "(b.a)^w");
    CHECK(separating_check(o2, {aw, bw}, {bw, aw}, 4));
    CHECK_FALSE(separating_check(o2, {aw, aw}, {aw}, 1));
    CHECK_FALSE(separating_check(o2, {ab}, {ba}, 2));
}

TEST_CASE("separating sums equal multiset equality on random pairs") {
    DirectedGraph o2 = corpus::o2_graph();
    std::mt19937_64 rng(61);
    auto random_multiset = [&](int max_size) {
        std::vector<BoundaryPoint> pts;
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_size));
        for (int i = 0; i < n; ++i) pts.push_back(random_boundary_point(o2, rng, 3));
        return pts;
    };
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_multiset(4);
        auto b = (rng() % 2) ? a : random_multiset(4);
        if (rng() % 4 == 0 && !a.empty()) {
            b = a;
            std::shuffle(b.begin(), b.end(), rng);  // permuted copies are equal multisets
        }
        int maxdesc = 0;
        for (const auto& p : a)
            maxdesc = std::max<int>(maxdesc, p.prefix.length() + static_cast<int>(p.cycle.size()));
        for (const auto& p : b)
            maxdesc = std::max<int>(maxdesc, p.prefix.length() + static_cast<int>(p.cycle.size()));
        auto sa = a;
        auto sb = b;
        std::sort(sa.begin(), sa.end(), PointLess{});
        std::sort(sb.begin(), sb.end(), PointLess{});
        bool equal_multisets = sa.size() == sb.size() &&
                               std::equal(sa.begin(), sa.end(), sb.begin());
        CHECK(separating_check(o2, a, b, maxdesc) == equal_multisets);
    }
}

TEST_CASE("iterated sums separate points whose shifts meet") {
    DirectedGraph o2 = corpus::o2_graph();
    DRSystem sys(o2);
    std::mt19937_64 rng(67);
    int done = 0;
    while (done < 200) {
        BoundaryPoint x = random_boundary_point(o2, rng, 3);
        long k = static_cast<long>(rng() % 3), l = static_cast<long>(rng() % 3);
        if (!x.in_shift_domain(k)) continue;
        // build x' with sigma^k x = sigma^l x'
        BoundaryPoint tail = sys.shift(x, k);
        std::vector<BoundaryPoint> lifts{tail};
        for (long i = 0; i < l; ++i) {
            auto pre = sys.preimages(lifts.back());
            if (pre.empty()) break;
            lifts.push_back(pre[rng() % pre.size()]);
        }
        if (static_cast<long>(lifts.size()) != l + 1) continue;
        BoundaryPoint xp = lifts.back();
        if (k == l && x == xp) continue;
        ++done;
        // some indicator of depth <= description length separates the sums
        int maxdesc = std::max<int>(
            x.prefix.length() + static_cast<int>(x.cycle.size()),
            xp.prefix.length() + static_cast<int>(xp.cycle.size()));
        bool separated = false;
        for (const Cylinder& c : cylinder_family(o2, maxdesc)) {
            IntegerFn f = IntegerFn::indicator(c);
            if (f_iterated(sys, f, k, x) != f_iterated(sys, f, l, xp)) {
                separated = true;
                break;
            }
        }
        CHECK(separated);
    }
}

TEST_CASE("isotropy interior triviality") {
    auto trivial = [](const DirectedGraph& g) {
        return isotropy_interior_trivial(DRSystem(g));
    };
    CHECK(trivial(corpus::o2_graph()));
    CHECK_FALSE(trivial(corpus::loop_graph()));
    CHECK(trivial(corpus::p2_graph()));
}
