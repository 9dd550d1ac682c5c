#include "drsys/cylinder.hpp"

#include <algorithm>
#include <set>

namespace drsys {

Cylinder make_cylinder(const DirectedGraph& g, Path base) {
    make_path(g, base.start, base.edges);  // validate
    return Cylinder{&g, std::move(base)};
}

Cylinder parse_cylinder(const DirectedGraph& g, const std::string& literal) {
    return Cylinder{&g, parse_path(g, literal)};
}

std::string format_cylinder(const Cylinder& c) {
    return format_path(*c.graph, c.base);
}

bool cylinder_contains(const Cylinder& c, const BoundaryPoint& x) {
    if (c.graph != x.graph) throw Error("cylinder and point live over different graphs");
    if (x.start_vertex() != c.base.start) return false;
    long n = c.base.length();
    if (x.is_finite() && x.length() < n) return false;
    for (long i = 0; i < n; ++i)
        if (x.symbol(i) != c.base.edges[static_cast<size_t>(i)]) return false;
    return true;
}

bool cylinder_subset(const Cylinder& inner, const Cylinder& outer) {
    if (inner.base.start != outer.base.start) return false;
    if (inner.depth() < outer.depth()) return false;
    return std::equal(outer.base.edges.begin(), outer.base.edges.end(),
                      inner.base.edges.begin());
}

std::vector<Cylinder> split_cylinder(const Cylinder& c) {
    const DirectedGraph& g = *c.graph;
    VertexId t = path_terminal(g, c.base);
    std::vector<Cylinder> parts;
    if (g.is_sink(t)) {
        parts.push_back(c);  // already a singleton
        return parts;
    }
    for (EdgeId e : g.out_edges(t)) {
        Path p = c.base;
        p.edges.push_back(e);
        parts.push_back(Cylinder{&g, std::move(p)});
    }
    return parts;
}

std::vector<Cylinder> cylinder_partition(const DirectedGraph& g, int depth) {
    std::vector<Cylinder> parts;
    for (Path& p : all_paths_of_length(g, depth)) parts.push_back(Cylinder{&g, std::move(p)});
    for (Path& p : sink_paths_up_to(g, depth - 1)) parts.push_back(Cylinder{&g, std::move(p)});
    std::sort(parts.begin(), parts.end(), CylinderLess{});
    return parts;
}

std::vector<Cylinder> refine_to_atoms(const DirectedGraph& g,
                                      std::vector<Cylinder> bases) {
    // Cylinders are nested or disjoint, so pushing every base down to the
    // maximal depth of the family yields pairwise-disjoint atoms: depth-D
    // paths plus shorter paths that already ended at a sink.
    int max_depth = 0;
    for (const Cylinder& c : bases) max_depth = std::max(max_depth, c.depth());
    std::set<Cylinder, CylinderLess> atoms;
    for (Cylinder& c : bases) {
        std::vector<Cylinder> frontier{std::move(c)};
        while (!frontier.empty()) {
            Cylinder cur = std::move(frontier.back());
            frontier.pop_back();
            VertexId t = path_terminal(g, cur.base);
            if (cur.depth() >= max_depth || g.is_sink(t)) {
                atoms.insert(std::move(cur));
                continue;
            }
            for (Cylinder& part : split_cylinder(cur)) frontier.push_back(std::move(part));
        }
    }
    return std::vector<Cylinder>(atoms.begin(), atoms.end());
}

BoundaryPoint representative_point(const Cylinder& c) {
    const DirectedGraph& g = *c.graph;
    Path p = c.base;
    VertexId at = path_terminal(g, p);
    std::vector<long> seen(static_cast<size_t>(g.vertex_count()), -1);
    long pos = p.length();
    std::vector<EdgeId> tail;
    while (true) {
        if (g.is_sink(at)) {
            Path full = p;
            full.edges.insert(full.edges.end(), tail.begin(), tail.end());
            return make_finite_point(g, std::move(full));
        }
        if (seen[static_cast<size_t>(at)] >= 0) {
            long first = seen[static_cast<size_t>(at)];
            long base_len = p.length();
            std::vector<EdgeId> pre(p.edges);
            pre.insert(pre.end(), tail.begin(), tail.begin() + (first - base_len));
            std::vector<EdgeId> cyc(tail.begin() + (first - base_len), tail.end());
            return canonical_lasso(g, Path{p.start, std::move(pre)}, std::move(cyc));
        }
        seen[static_cast<size_t>(at)] = pos;
        EdgeId e = g.out_edges(at)[0];
        tail.push_back(e);
        at = g.dst(e);
        ++pos;
    }
}

std::vector<Path> all_paths_of_length(const DirectedGraph& g, int length) {
    std::vector<Path> acc;
    for (VertexId v = 0; v < g.vertex_count(); ++v) acc.push_back(Path{v, {}});
    for (int step = 0; step < length; ++step) {
        std::vector<Path> next;
        for (const Path& p : acc) {
            VertexId t = path_terminal(g, p);
            for (EdgeId e : g.out_edges(t)) {
                Path q = p;
                q.edges.push_back(e);
                next.push_back(std::move(q));
            }
        }
        acc.swap(next);
    }
    std::sort(acc.begin(), acc.end(), path_less);
    return acc;
}

std::vector<Path> sink_paths_up_to(const DirectedGraph& g, int max_length) {
    std::vector<Path> out;
    for (int len = 0; len <= max_length; ++len)
        for (Path& p : all_paths_of_length(g, len))
            if (g.is_sink(path_terminal(g, p))) out.push_back(std::move(p));
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

std::vector<BoundaryPoint> enumerate_boundary(const DirectedGraph& g) {
    if (!g.has_finite_boundary())
        throw Error("boundary-path space is infinite; cannot enumerate");
    std::vector<BoundaryPoint> points;
    // Depth-first over paths; branches die at sinks or close no-exit cycles
    // within |V| steps, so the recursion is finite.
    struct Walker {
        const DirectedGraph& g;
        std::vector<BoundaryPoint>& points;
        void walk(Path p, std::vector<int>& visited_at) {
            VertexId at = path_terminal(g, p);
            if (g.is_sink(at)) {
                points.push_back(make_finite_point(g, std::move(p)));
                return;
            }
            if (visited_at[static_cast<size_t>(at)] >= 0) {
                int cut = visited_at[static_cast<size_t>(at)];
                std::vector<EdgeId> pre(p.edges.begin(), p.edges.begin() + cut);
                std::vector<EdgeId> cyc(p.edges.begin() + cut, p.edges.end());
                points.push_back(canonical_lasso(g, Path{p.start, std::move(pre)}, std::move(cyc)));
                return;
            }
            visited_at[static_cast<size_t>(at)] = p.length();
            for (EdgeId e : g.out_edges(at)) {
                Path q = p;
                q.edges.push_back(e);
                walk(std::move(q), visited_at);
            }
            visited_at[static_cast<size_t>(at)] = -1;
        }
    } walker{g, points};
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> visited(static_cast<size_t>(g.vertex_count()), -1);
        walker.walk(Path{v, {}}, visited);
    }
    std::sort(points.begin(), points.end(), PointLess{});
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

Cylinder singleton_cylinder(const BoundaryPoint& x) {
    const DirectedGraph& g = *x.graph;
    if (x.is_finite()) return Cylinder{&g, x.prefix};
    Path base = x.prefix;
    base.edges.insert(base.edges.end(), x.cycle.begin(), x.cycle.end());
    return Cylinder{&g, std::move(base)};
}

}  // namespace drsys
