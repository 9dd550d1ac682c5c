#ifndef DRSYS_GROUPOID_HPP
#define DRSYS_GROUPOID_HPP

#include "drsys/locally_constant.hpp"

namespace drsys {

// An element (x, m-n, y) of the boundary groupoid, stored with the minimal
// witness pair: sigma^m(x) = sigma^n(y) with m, n least for the degree.
// Equality of elements is equality of (x, degree, y).
struct GroupoidElement {
    BoundaryPoint x;  // range
    BoundaryPoint y;  // source
    long m = 0;
    long n = 0;

    long degree() const { return m - n; }
    bool is_unit() const { return degree() == 0 && x == y; }

    friend bool operator==(const GroupoidElement& a, const GroupoidElement& b) {
        return a.x == b.x && a.y == b.y && a.degree() == b.degree();
    }
};

// Validates sigma^m(x) = sigma^n(y) and minimises the witness pair.
// Throws WitnessError when the defining relation fails.
GroupoidElement make_element(const DRSystem& sys, BoundaryPoint x, long m, long n,
                             BoundaryPoint y);

GroupoidElement unit_at(const DRSystem& sys, const BoundaryPoint& x);

// (x,p,y)(y,q,z) = (x,p+q,z); throws NotComposable unless s(a) = r(b).
GroupoidElement compose(const DRSystem& sys, const GroupoidElement& a,
                        const GroupoidElement& b);
GroupoidElement inverse(const DRSystem& sys, const GroupoidElement& g);

std::string format_element(const GroupoidElement& g);

// f^(k)(x) = f(x) + f(sigma x) + ... + f(sigma^{k-1} x); f^(0) = 0.
long long f_iterated(const DRSystem& sys, const IntegerFn& f, long k,
                     const BoundaryPoint& x);

// The cocycle induced by f: c_f(x, m-n, y) = f^(m)(x) - f^(n)(y); with
// f constant one this is the canonical cocycle (the degree).
long long cocycle_eval(const DRSystem& sys, const IntegerFn& f,
                       const GroupoidElement& g);

// psi(x, p, y) = (h(x), p, h(y)) for a verified conjugacy h; construction
// revalidates the witness relation on every application.
class InducedIsomorphism {
public:
    explicit InducedIsomorphism(const CandidateHomeo& h);

    GroupoidElement operator()(const GroupoidElement& g) const;

    const CandidateHomeo& map() const { return *h_; }

private:
    const CandidateHomeo* h_;
};

struct IntertwineReport {
    bool ok = false;
    int depth = 0;
    std::string witness_g;  // violating cylinder indicator on the codomain
    std::string witness_x;  // input cylinder where the generator violates
};

// The cocycle-intertwining condition c_{g o h} = c_g o psi, checked on the
// generators (x, 1, sigma x) with x running over cylinder representatives
// of depth <= depth and g over codomain cylinder indicators of depth <=
// depth.  The right-hand side is evaluated through the minimal witness
// (defect+1, defect).  Requires h to be a verified homeomorphism whose
// legs have finite uniform defect in both directions.
IntertwineReport intertwine_check(const CandidateHomeo& h, int depth);

// Whether every integer cylinder indicator of depth <= depth sums equally
// over the two multisets.
bool separating_check(const DirectedGraph& g,
                      const std::vector<BoundaryPoint>& a,
                      const std::vector<BoundaryPoint>& b, int depth);

// Interior of the isotropy is trivial exactly when the system is
// topologically free (condition L).
bool isotropy_interior_trivial(const DRSystem& sys);

}  // namespace drsys

#endif
