#ifndef DRSYS_CYLINDER_HPP
#define DRSYS_CYLINDER_HPP

#include <string>
#include <vector>

#include "drsys/point.hpp"

namespace drsys {

// The cylinder Z(mu): all boundary points whose expansion extends the base
// path mu.  A base ending at a sink denotes the singleton of that finite
// point; a length-zero base Z(v) collects every point starting at v.
struct Cylinder {
    const DirectedGraph* graph = nullptr;
    Path base;

    int depth() const { return base.length(); }

    friend bool operator==(const Cylinder& a, const Cylinder& b) {
        return a.graph == b.graph && paths_equal(a.base, b.base);
    }
};

struct CylinderLess {
    bool operator()(const Cylinder& a, const Cylinder& b) const {
        return path_less(a.base, b.base);
    }
};

Cylinder make_cylinder(const DirectedGraph& g, Path base);
Cylinder parse_cylinder(const DirectedGraph& g, const std::string& literal);
std::string format_cylinder(const Cylinder& c);

// Exact membership x in Z(base).
bool cylinder_contains(const Cylinder& c, const BoundaryPoint& x);

// Nesting test: Z(inner) subseteq Z(outer) holds iff inner extends outer.
bool cylinder_subset(const Cylinder& inner, const Cylinder& outer);

// Splits Z(base) one level: the union of Z(base.e) over edges leaving the
// terminal vertex, plus the singleton {base} when the terminal is a sink.
std::vector<Cylinder> split_cylinder(const Cylinder& c);

// The canonical depth-d partition of the boundary space: cylinders of all
// depth-d paths together with singletons of shorter finite boundary paths.
std::vector<Cylinder> cylinder_partition(const DirectedGraph& g, int depth);

// Refines an arbitrary family of cylinders into pairwise-disjoint atoms:
// every input cylinder becomes a union of output atoms, and distinct atoms
// are disjoint.  The result is sorted and duplicate-free.
std::vector<Cylinder> refine_to_atoms(const DirectedGraph& g,
                                      std::vector<Cylinder> bases);

// A representative point of a nonempty cylinder: the base extended along
// least-index edges until a vertex repeats (closing a lasso) or a sink is
// reached.
BoundaryPoint representative_point(const Cylinder& c);

// All paths of exactly the given length (grouped lexicographically).
std::vector<Path> all_paths_of_length(const DirectedGraph& g, int length);

// All paths of length <= max ending at a sink (finite boundary points).
std::vector<Path> sink_paths_up_to(const DirectedGraph& g, int max_length);

// Enumerates the whole boundary-path space when it is finite (no cycle of
// the graph has an exit); sorted by point_less.
std::vector<BoundaryPoint> enumerate_boundary(const DirectedGraph& g);

// Base of a cylinder containing exactly {x}; only defined on graphs with
// finite boundary (prefix plus one full turn of the cycle pins the point).
Cylinder singleton_cylinder(const BoundaryPoint& x);

}  // namespace drsys

#endif
