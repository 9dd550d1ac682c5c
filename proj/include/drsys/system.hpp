#ifndef DRSYS_SYSTEM_HPP
#define DRSYS_SYSTEM_HPP

#include <optional>
#include <random>
#include <utility>

#include "drsys/cylinder.hpp"
#include "drsys/point.hpp"

namespace drsys {

struct PeriodicityReport {
    enum class Kind { Aperiodic, Periodic, EventuallyPeriodic };
    Kind kind = Kind::Aperiodic;
    long preperiod = 0;  // minimal n with sigma^n(x) periodic
    long period = 0;     // minimal p

    friend bool operator==(const PeriodicityReport&, const PeriodicityReport&) = default;
};

// The Deaconu-Renault system (boundary space, partial shift).  The shift
// drops the leading edge; bare sink points lie outside dom(sigma).
class DRSystem {
public:
    explicit DRSystem(const DirectedGraph& g) : graph_(&g) {}
    explicit DRSystem(DirectedGraph&&) = delete;  // the graph must outlive the system

    const DirectedGraph& graph() const { return *graph_; }

    // sigma^k(x); throws DomainError when the expansion of x has fewer than
    // k edges.
    BoundaryPoint shift(const BoundaryPoint& x, long k = 1) const;

    // sigma^{-1}(x) = { e.x : dst(e) = start of x }, canonicalised.
    std::vector<BoundaryPoint> preimages(const BoundaryPoint& x) const;

    // Least lexicographic (k, l) with sigma^k(x) = sigma^l(y), searched up
    // to the lasso-conclusive bound (description lengths plus edge count).
    std::optional<std::pair<long, long>> same_orbit(const BoundaryPoint& x,
                                                    const BoundaryPoint& y) const;

    PeriodicityReport periodicity(const BoundaryPoint& x) const;

    // Condition L (every cycle has an exit), the graph-side criterion for
    // density of the non-periodic points.
    bool is_topologically_free() const;

    // Number of points with x = sigma^p(x): the trace of the p-th power of
    // the adjacency matrix.
    long long periodic_count(int p) const;

    bool in_domain(const BoundaryPoint& x) const { return x.in_shift_domain(1); }

private:
    const DirectedGraph* graph_;
};

// Brute-force oracle for periodic_count: enumerates closed paths of length p
// by depth-first walks (used by tests and cross-checks).
long long count_closed_paths_brute(const DirectedGraph& g, int p);

// Random eventually periodic point: a random walk prefix (length <=
// max_prefix) followed by a cycle if one can be closed, otherwise the walk
// is completed to a finite point.  Deterministic in the generator state.
BoundaryPoint random_boundary_point(const DirectedGraph& g, std::mt19937_64& rng,
                                    int max_prefix = 4);

}  // namespace drsys

#endif
