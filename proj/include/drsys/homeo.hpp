#ifndef DRSYS_HOMEO_HPP
#define DRSYS_HOMEO_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drsys/system.hpp"
#include "drsys/transducer.hpp"

namespace drsys {

struct HomeoCertificate {
    bool ok = false;
    long reachable_configs = 0;   // product states visited by the check
    std::string offending;        // first offending composite transition
};

// Outcome of comparing sigma(h(x)) against h(sigma(x)) over all of
// dom(sigma).  `uniform_defect` is the least K bounding the eventual-
// conjugacy defect everywhere (0 exactly when h intertwines the shifts);
// absent when the defect is unbounded.  `eventual` says every point has a
// finite defect.
struct CommuteAnalysis {
    bool commutes = false;
    bool eventual = false;
    std::optional<long> uniform_defect;
    std::optional<Cylinder> violation;  // input cylinder witnessing a defect
};

// A candidate homeomorphism h between boundary-path spaces, bundled with
// its declared inverse.  Images of cylinders and the commute analysis are
// only available once verify() has succeeded.
class CandidateHomeo {
public:
    virtual ~CandidateHomeo() = default;

    virtual const DirectedGraph& domain_graph() const = 0;
    virtual const DirectedGraph& codomain_graph() const = 0;

    virtual BoundaryPoint map_point(const BoundaryPoint& x) const = 0;
    virtual BoundaryPoint unmap_point(const BoundaryPoint& y) const = 0;

    // Mutual-inverse check; cached.  ok means h is a homeomorphism.
    const HomeoCertificate& verify() const;

    bool is_verified() const { return cert_ && cert_->ok; }

    // h(Z(base)) and h^{-1}(Z(base)) as disjoint cylinder unions.
    virtual std::vector<Cylinder> image_cylinder(const Cylinder& base) const = 0;
    virtual std::vector<Cylinder> preimage_cylinder(const Cylinder& base) const = 0;

    virtual CommuteAnalysis analyze_commute() const = 0;

    // The same data with the roles of h and h^{-1} swapped.
    virtual std::unique_ptr<CandidateHomeo> inverse_view() const = 0;

    // Search bound for the per-point defect at x (machine-size dependent).
    virtual long defect_search_bound(const BoundaryPoint& x) const = 0;

protected:
    virtual HomeoCertificate run_verification() const = 0;
    void require_verified() const;

private:
    mutable std::optional<HomeoCertificate> cert_;
};

// h given by a pair of mutually inverse sequential machines.
class TransducerHomeo final : public CandidateHomeo {
public:
    TransducerHomeo(Transducer forward, Transducer backward);

    const DirectedGraph& domain_graph() const override { return fwd_.input_graph(); }
    const DirectedGraph& codomain_graph() const override { return fwd_.output_graph(); }
    BoundaryPoint map_point(const BoundaryPoint& x) const override { return fwd_.apply(x); }
    BoundaryPoint unmap_point(const BoundaryPoint& y) const override { return bwd_.apply(y); }
    std::vector<Cylinder> image_cylinder(const Cylinder& base) const override;
    std::vector<Cylinder> preimage_cylinder(const Cylinder& base) const override;
    CommuteAnalysis analyze_commute() const override;
    std::unique_ptr<CandidateHomeo> inverse_view() const override;
    long defect_search_bound(const BoundaryPoint& x) const override;

    const Transducer& forward() const { return fwd_; }
    const Transducer& backward() const { return bwd_; }

protected:
    HomeoCertificate run_verification() const override;

private:
    Transducer fwd_;
    Transducer bwd_;
};

// h given by an explicit point bijection; only available when both
// boundary spaces are finite.  Houses maps (such as the unique bijection
// between two singleton spaces) that no rate-one machine realises.
class TableHomeo final : public CandidateHomeo {
public:
    TableHomeo(const DirectedGraph& dom, const DirectedGraph& cod,
               std::vector<std::pair<BoundaryPoint, BoundaryPoint>> pairs);

    const DirectedGraph& domain_graph() const override { return *dom_; }
    const DirectedGraph& codomain_graph() const override { return *cod_; }
    BoundaryPoint map_point(const BoundaryPoint& x) const override;
    BoundaryPoint unmap_point(const BoundaryPoint& y) const override;
    std::vector<Cylinder> image_cylinder(const Cylinder& base) const override;
    std::vector<Cylinder> preimage_cylinder(const Cylinder& base) const override;
    CommuteAnalysis analyze_commute() const override;
    std::unique_ptr<CandidateHomeo> inverse_view() const override;
    long defect_search_bound(const BoundaryPoint& x) const override;

protected:
    HomeoCertificate run_verification() const override;

private:
    const DirectedGraph* dom_;
    const DirectedGraph* cod_;
    std::vector<std::pair<BoundaryPoint, BoundaryPoint>> pairs_;
};

enum class FailingCondition { None, Dom, Commute, PreimageSetEquality };

std::string to_string(FailingCondition c);

struct ConjugacyVerdict {
    bool is_homeomorphism = false;
    bool is_conjugacy = false;
    FailingCondition failing_condition = FailingCondition::None;
    std::string witness;                   // point or cylinder literal
    std::optional<long> eventual_k_bound;  // uniform defect when finite
    // the two independent routes, for reporting
    bool dom_condition = false;
    bool commute_condition = false;
    bool preimage_route = false;
    int preimage_depth = 0;
    long product_states = 0;
};

struct ConjugacyOptions {
    int preimage_depth = 2;  // cylinder depth for the preimage-set route
    int samples = 50;        // random lasso samples per direction
    std::uint64_t seed = 0;
};

// Verification plus the conjugacy decision: the domain condition
// h(dom sigma_E) = dom sigma_F together with the commuting condition, each
// evaluated exactly by automaton analysis, cross-validated against the
// preimage-set route evaluated on samples and on cylinders up to a depth.
// A disagreement between the two routes throws std::logic_error.
ConjugacyVerdict check_conjugacy(const CandidateHomeo& h,
                                 const ConjugacyOptions& opts = {});

// Least k with sigma^{k+1}(h(x)) = sigma^k(h(sigma(x))), searched up to the
// representation-dependent bound; throws NotEventuallyConjugate.
long eventual_k(const CandidateHomeo& h, const BoundaryPoint& x);

// Least K bounding eventual_k over all of dom(sigma); absent when
// unbounded or undefined somewhere.
std::optional<long> uniform_eventual_bound(const CandidateHomeo& h);

// Equality of two clopen sets presented as cylinder unions.
bool clopen_equal(const DirectedGraph& g, const std::vector<Cylinder>& a,
                  const std::vector<Cylinder>& b);

}  // namespace drsys

#endif
