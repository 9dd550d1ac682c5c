#ifndef DRSYS_GRAPH_HPP
#define DRSYS_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "drsys/errors.hpp"

namespace drsys {

using VertexId = int;
using EdgeId = int;

// A finite directed graph with named vertices and edges.  Names share one
// identifier space ([A-Za-z0-9_]+) so that path/point literals stay
// unambiguous.  Vertices and edges are addressed by dense indices after
// construction; all other types in the library hold indices, not names.
class DirectedGraph {
public:
    struct Edge {
        std::string name;
        VertexId src;
        VertexId dst;
    };

    VertexId add_vertex(const std::string& name);
    EdgeId add_edge(const std::string& name, const std::string& src,
                    const std::string& dst);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    const std::string& edge_name(EdgeId e) const { return edges_[e].name; }
    VertexId src(EdgeId e) const { return edges_[e].src; }
    VertexId dst(EdgeId e) const { return edges_[e].dst; }

    // Indices of edges leaving / entering v, in insertion order.
    const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
    const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }
    int out_degree(VertexId v) const { return static_cast<int>(out_[v].size()); }

    bool is_sink(VertexId v) const { return out_[v].empty(); }
    std::vector<VertexId> sinks() const;

    // Lookup by name; -1 if absent.
    VertexId find_vertex(const std::string& name) const;
    EdgeId find_edge(const std::string& name) const;

    VertexId vertex_checked(const std::string& name) const;
    EdgeId edge_checked(const std::string& name) const;

    bool is_acyclic() const;

    // Condition L: every cycle has an edge leaving one of its vertices that
    // is not the next cycle edge.  Fails exactly when some cycle runs through
    // out-degree-one vertices only.
    bool every_cycle_has_exit() const;

    // True when the boundary-path space is finite, i.e. no cycle of the
    // graph has an exit.
    bool has_finite_boundary() const;

    // Number of closed paths of length p (trace of the p-th power of the
    // vertex adjacency matrix).
    long long closed_path_count(int p) const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    std::map<std::string, VertexId> vertex_index_;
    std::map<std::string, EdgeId> edge_index_;
};

// Parses the line-based graph format:
//   # comment
//   vertex <id>
//   edge <id> <src> <dst>
DirectedGraph parse_graph(const std::string& text);
DirectedGraph load_graph_file(const std::string& path);

// A finite path: a start vertex plus a composable edge sequence.  A bare
// vertex is the length-zero path at that vertex.
struct Path {
    VertexId start = -1;
    std::vector<EdgeId> edges;

    int length() const { return static_cast<int>(edges.size()); }
    bool empty() const { return edges.empty(); }
};

// Validates composability against g and returns the path.
Path make_path(const DirectedGraph& g, VertexId start,
               std::vector<EdgeId> edges);
Path make_path(const DirectedGraph& g, const std::vector<EdgeId>& edges);

VertexId path_terminal(const DirectedGraph& g, const Path& p);
bool paths_equal(const Path& a, const Path& b);
bool path_less(const Path& a, const Path& b);

std::string format_path(const DirectedGraph& g, const Path& p);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace drsys

#endif
