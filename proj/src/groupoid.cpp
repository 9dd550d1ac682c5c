#include "drsys/groupoid.hpp"

#include <algorithm>

namespace drsys {

namespace {

void minimise_witness(const DRSystem& sys, GroupoidElement& g) {
    while (g.m >= 1 && g.n >= 1 &&
           sys.shift(g.x, g.m - 1) == sys.shift(g.y, g.n - 1)) {
        --g.m;
        --g.n;
    }
}

}  // namespace

GroupoidElement make_element(const DRSystem& sys, BoundaryPoint x, long m, long n,
                             BoundaryPoint y) {
    if (m < 0 || n < 0) throw WitnessError("witness exponents must be nonnegative");
    if (!x.in_shift_domain(m) || !y.in_shift_domain(n))
        throw WitnessError("witness exponents leave the shift domain");
    if (!(sys.shift(x, m) == sys.shift(y, n)))
        throw WitnessError("sigma^m(x) != sigma^n(y) for (" + format_point(x) + ", " +
                           std::to_string(m) + ", " + std::to_string(n) + ", " +
                           format_point(y) + ")");
    GroupoidElement g{std::move(x), std::move(y), m, n};
    minimise_witness(sys, g);
    return g;
}

GroupoidElement unit_at(const DRSystem& sys, const BoundaryPoint& x) {
    return make_element(sys, x, 0, 0, x);
}

GroupoidElement compose(const DRSystem& sys, const GroupoidElement& a,
                        const GroupoidElement& b) {
    if (!(a.y == b.x))
        throw NotComposable("source of the left factor differs from range of the right");
    return make_element(sys, a.x, a.m + b.m, a.n + b.n, b.y);
}

GroupoidElement inverse(const DRSystem& sys, const GroupoidElement& g) {
    return make_element(sys, g.y, g.n, g.m, g.x);
}

std::string format_element(const GroupoidElement& g) {
    return "(" + format_point(g.x) + ", " + std::to_string(g.degree()) + ", " +
           format_point(g.y) + "; " + std::to_string(g.m) + ", " + std::to_string(g.n) +
           ")";
}

long long f_iterated(const DRSystem& sys, const IntegerFn& f, long k,
                     const BoundaryPoint& x) {
    if (!x.in_shift_domain(k))
        throw DomainError("f_iterated: point outside dom(sigma^" + std::to_string(k) + ")");
    long long acc = 0;
    BoundaryPoint cur = x;
    for (long i = 0; i < k; ++i) {
        acc += f.evaluate(cur);
        if (i + 1 < k) cur = sys.shift(cur, 1);
    }
    return acc;
}

long long cocycle_eval(const DRSystem& sys, const IntegerFn& f,
                       const GroupoidElement& g) {
    return f_iterated(sys, f, g.m, g.x) - f_iterated(sys, f, g.n, g.y);
}

InducedIsomorphism::InducedIsomorphism(const CandidateHomeo& h) : h_(&h) {
    ConjugacyVerdict v = check_conjugacy(h);
    if (!v.is_conjugacy)
        throw NotConjugacy("induced isomorphism needs a conjugacy (failing: " +
                           to_string(v.failing_condition) + ")");
}

GroupoidElement InducedIsomorphism::operator()(const GroupoidElement& g) const {
    DRSystem cod(h_->codomain_graph());
    return make_element(cod, h_->map_point(g.x), g.m, g.n, h_->map_point(g.y));
}

IntertwineReport intertwine_check(const CandidateHomeo& h, int depth) {
    if (!h.verify().ok)
        throw UnverifiedMapError("intertwine_check needs a verified homeomorphism");
    std::unique_ptr<CandidateHomeo> inv = h.inverse_view();
    if (!uniform_eventual_bound(h) || !uniform_eventual_bound(*inv))
        throw Error("intertwine_check needs eventual-conjugacy legs (finite defect)");

    const DirectedGraph& E = h.domain_graph();
    const DirectedGraph& F = h.codomain_graph();
    DRSystem sysE(E), sysF(F);

    IntertwineReport report;
    report.depth = depth;
    report.ok = true;

    for (const Cylinder& gc : cylinder_family(F, depth)) {
        IntegerFn g = IntegerFn::indicator(gc);
        for (const Cylinder& xc : cylinder_family(E, depth)) {
            BoundaryPoint x = representative_point(xc);
            if (!x.in_shift_domain(1)) continue;
            BoundaryPoint hx = h.map_point(x);
            BoundaryPoint hsx = h.map_point(sysE.shift(x, 1));
            long long lhs = g.evaluate(hx);  // c_{g o h}(x, 1, sigma x)
            long k = eventual_k(h, x);
            GroupoidElement psi_gen = make_element(sysF, hx, k + 1, k, hsx);
            long long rhs = cocycle_eval(sysF, g, psi_gen);
            if (lhs != rhs) {
                report.ok = false;
                report.witness_g = format_cylinder(gc);
                report.witness_x = format_cylinder(xc);
                return report;
            }
        }
    }
    return report;
}

bool separating_check(const DirectedGraph& g,
                      const std::vector<BoundaryPoint>& a,
                      const std::vector<BoundaryPoint>& b, int depth) {
    for (const Cylinder& c : cylinder_family(g, depth)) {
        long ca = 0, cb = 0;
        for (const BoundaryPoint& p : a) ca += cylinder_contains(c, p);
        for (const BoundaryPoint& p : b) cb += cylinder_contains(c, p);
        if (ca != cb) return false;
    }
    return true;
}

bool isotropy_interior_trivial(const DRSystem& sys) {
    return sys.is_topologically_free();
}

}  // namespace drsys
