#ifndef DRSYS_POINT_HPP
#define DRSYS_POINT_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "drsys/graph.hpp"

namespace drsys {

// A point of the boundary-path space in canonical form.
//
// Finite variant (cycle empty): `prefix` ends at a sink; the point is the
// path itself, a bare sink when the prefix has length zero.
//
// Lasso variant (cycle nonempty): prefix.(cycle)^infinity with the cycle
// primitive and the prefix shortest (the prefix never ends with the last
// cycle edge, otherwise the cycle could be rotated into it).  Equality of
// canonical forms is equality of points.
struct BoundaryPoint {
    const DirectedGraph* graph = nullptr;
    Path prefix;
    std::vector<EdgeId> cycle;

    bool is_finite() const { return cycle.empty(); }
    VertexId start_vertex() const { return prefix.start; }

    // Number of edge symbols; -1 stands for infinite.
    long length() const { return is_finite() ? prefix.length() : -1; }
    bool in_shift_domain(long k) const {
        return is_finite() ? prefix.length() >= k : true;
    }

    // i-th edge of the expansion (0-based); i must be in range.
    EdgeId symbol(long i) const;
    std::vector<EdgeId> expand(long n) const;

    friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.graph == b.graph && paths_equal(a.prefix, b.prefix) && a.cycle == b.cycle;
    }
};

// Total order usable for std::map / sorting (within one graph).
bool point_less(const BoundaryPoint& a, const BoundaryPoint& b);

struct PointLess {
    bool operator()(const BoundaryPoint& a, const BoundaryPoint& b) const {
        return point_less(a, b);
    }
};

// Finite point: the path must end at a sink.
BoundaryPoint make_finite_point(const DirectedGraph& g, Path path);
BoundaryPoint make_sink_point(const DirectedGraph& g, VertexId sink);

// Lasso point prefix.(cycle)^infinity, canonicalised: the cycle is replaced
// by its primitive root and prefix edges equal to the rotated-in cycle edge
// are absorbed.  The cycle must be closed, nonempty and composable with the
// prefix.
BoundaryPoint canonical_lasso(const DirectedGraph& g, Path prefix,
                              std::vector<EdgeId> cycle);

// Prepends a composable edge sequence (used by preimages and transducers).
BoundaryPoint prepend_path(const BoundaryPoint& x, const std::vector<EdgeId>& edges);

// Point literals:  bare sink "@v", finite "e1.e2" or "e1.e2@v",
// lasso "e1.(c1.c2)^w"  (the ^w suffix marks infinite repetition).
BoundaryPoint parse_point(const DirectedGraph& g, const std::string& literal);
std::string format_point(const BoundaryPoint& x);

// Path literal: "@v" for a bare vertex, otherwise "e1.e2.e3" with an
// optional "@v" terminal marker.
Path parse_path(const DirectedGraph& g, const std::string& literal);

}  // namespace drsys

#endif
