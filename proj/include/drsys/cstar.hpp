#ifndef DRSYS_CSTAR_HPP
#define DRSYS_CSTAR_HPP

#include <complex>
#include <map>

#include "drsys/groupoid.hpp"

namespace drsys {

// The fully enumerated boundary groupoid of an acyclic graph: one element
// per ordered pair of points ending at the same sink (the groupoid is
// principal, with one orbit per sink).
class FiniteGroupoid {
public:
    explicit FiniteGroupoid(DRSystem sys);  // throws NotAcyclic

    const DRSystem& system() const { return sys_; }
    const std::vector<BoundaryPoint>& points() const { return points_; }
    const std::vector<GroupoidElement>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }

    int point_index(const BoundaryPoint& x) const;
    int element_index(int xi, int yi) const;  // -1 when not in one orbit
    int element_index(const GroupoidElement& g) const;

    int range_point(int elt) const { return range_[static_cast<size_t>(elt)]; }
    int source_point(int elt) const { return source_[static_cast<size_t>(elt)]; }

    // Composition/inverse through the index tables; -1 when not composable.
    int compose_index(int a, int b) const;
    int inverse_index(int a) const;

    const std::vector<int>& unit_indices() const { return units_; }
    int orbit_of(int point) const { return orbit_of_[static_cast<size_t>(point)]; }
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }

    // sum of squared orbit sizes = linear dimension of the algebra
    long long algebra_dimension() const;

private:
    DRSystem sys_;
    std::vector<BoundaryPoint> points_;
    std::vector<GroupoidElement> elements_;
    std::vector<int> range_, source_;
    std::map<std::pair<int, int>, int> pair_index_;
    std::vector<int> orbit_of_;
    std::vector<std::vector<int>> orbits_;
    std::vector<int> units_;
};

// An element of the convolution *-algebra: a complex coefficient per
// groupoid element.
class ConvElement {
public:
    explicit ConvElement(const FiniteGroupoid& g)
        : g_(&g), coef_(static_cast<size_t>(g.size()), {0.0, 0.0}) {}

    static ConvElement delta(const FiniteGroupoid& g, int elt);

    const FiniteGroupoid& groupoid() const { return *g_; }
    std::complex<double>& operator[](int i) { return coef_[static_cast<size_t>(i)]; }
    const std::complex<double>& operator[](int i) const {
        return coef_[static_cast<size_t>(i)];
    }

    friend ConvElement operator+(const ConvElement& a, const ConvElement& b);
    friend ConvElement operator-(const ConvElement& a, const ConvElement& b);
    ConvElement scaled(std::complex<double> s) const;
    double sup_norm() const;

private:
    const FiniteGroupoid* g_;
    std::vector<std::complex<double>> coef_;
};

// (xi * eta)(gamma) = sum over factorisations gamma = gamma1 gamma2.
ConvElement convolve(const ConvElement& a, const ConvElement& b);
// xi*(gamma) = conj(xi(gamma^{-1})).
ConvElement star(const ConvElement& a);

// integer power of a unimodular number (negative exponents via conjugate)
std::complex<double> unit_power(std::complex<double> z, long long k);

// gamma^{X,f}_z xi (gamma) = z^{c_f(gamma)} xi(gamma); |z| must be 1.
ConvElement weighted_action(const FiniteGroupoid& g, const IntegerFn& f,
                            std::complex<double> z, const ConvElement& xi);

struct OrbitBlock {
    std::vector<int> point_indices;  // matrix units e_{xy} = delta_{(x,p,y)}
};

// One matrix block per orbit; the matrix-unit relations are re-verified.
std::vector<OrbitBlock> block_decomposition(const FiniteGroupoid& g);

// cocycle value table: one integer per (weight, element)
std::vector<std::vector<long long>> cocycle_table(const FiniteGroupoid& g,
                                                  const std::vector<IntegerFn>& weights);

struct FixedPointReport {
    std::vector<int> fixed_basis;  // element ids spanning the fixed subspace
    bool is_diagonal = false;
    double max_residual = 0.0;  // under the sampled actions
};

// The joint fixed-point subspace of the weighted actions: the span of the
// delta functions whose cocycle values vanish for every listed weight;
// is_diagonal says it equals the span of the units.  The residual tests
// invariance of the claimed basis under the sampled circle values.
FixedPointReport fixed_point_intersection(const FiniteGroupoid& g,
                                          const std::vector<IntegerFn>& weights,
                                          const std::vector<std::complex<double>>& zs);

// The 8th roots of unity plus two seeded unimodular samples.
std::vector<std::complex<double>> standard_circle_samples(std::uint64_t seed);

// The permutation of basis elements induced by mapping both legs through h
// with the degree forced by the acyclic structure.  For a conjugacy this is
// the groupoid isomorphism psi; the flag gates the conjugacy requirement so
// tests can drive the construction from a bare homeomorphism.
std::vector<int> leg_permutation(const CandidateHomeo& h, const FiniteGroupoid& ge,
                                 const FiniteGroupoid& gf, bool require_conjugacy);

// phi(xi) = xi o psi^{-1} as a linear map through the permutation.
ConvElement apply_permutation(const std::vector<int>& perm, const FiniteGroupoid& gf,
                              const ConvElement& xi);

struct StarIsoReport {
    bool multiplicative = false;
    bool star_preserving = false;
    bool diagonal_preserved = false;
    double max_residual = 0.0;
};

// *-isomorphism axioms for phi on all basis pairs, to the given tolerance.
StarIsoReport verify_star_isomorphism(const std::vector<int>& perm,
                                      const FiniteGroupoid& ge, const FiniteGroupoid& gf,
                                      double tol = 1e-9);

struct IntertwiningReport {
    bool ok = false;
    double max_residual = 0.0;
    std::string witness;  // weight and sample where intertwining breaks
};

// phi o gamma^{E, g o h}_z = gamma^{F, g}_z o phi over the cylinder
// indicator family of the given depth and the sampled circle values.
IntertwiningReport verify_intertwining(const CandidateHomeo& h,
                                       const std::vector<int>& perm,
                                       const FiniteGroupoid& ge, const FiniteGroupoid& gf,
                                       int depth,
                                       const std::vector<std::complex<double>>& zs,
                                       double tol = 1e-9);

}  // namespace drsys

#endif
