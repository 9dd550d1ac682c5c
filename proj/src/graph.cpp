#include "drsys/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace drsys {

namespace {

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

}  // namespace

VertexId DirectedGraph::add_vertex(const std::string& name) {
    if (!valid_id(name)) throw ParseError("bad vertex id '" + name + "'");
    if (vertex_index_.count(name) || edge_index_.count(name))
        throw ParseError("duplicate id '" + name + "'");
    VertexId v = vertex_count();
    vertex_names_.push_back(name);
    out_.emplace_back();
    in_.emplace_back();
    vertex_index_[name] = v;
    return v;
}

EdgeId DirectedGraph::add_edge(const std::string& name, const std::string& src,
                               const std::string& dst) {
    if (!valid_id(name)) throw ParseError("bad edge id '" + name + "'");
    if (vertex_index_.count(name) || edge_index_.count(name))
        throw ParseError("duplicate id '" + name + "'");
    auto s = vertex_index_.find(src);
    if (s == vertex_index_.end())
        throw ParseError("edge '" + name + "' refers to unknown vertex '" + src + "'");
    auto d = vertex_index_.find(dst);
    if (d == vertex_index_.end())
        throw ParseError("edge '" + name + "' refers to unknown vertex '" + dst + "'");
    EdgeId e = edge_count();
    edges_.push_back(Edge{name, s->second, d->second});
    out_[s->second].push_back(e);
    in_[d->second].push_back(e);
    edge_index_[name] = e;
    return e;
}

std::vector<VertexId> DirectedGraph::sinks() const {
    std::vector<VertexId> r;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (is_sink(v)) r.push_back(v);
    return r;
}

VertexId DirectedGraph::find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    return it == vertex_index_.end() ? -1 : it->second;
}

EdgeId DirectedGraph::find_edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    return it == edge_index_.end() ? -1 : it->second;
}

VertexId DirectedGraph::vertex_checked(const std::string& name) const {
    VertexId v = find_vertex(name);
    if (v < 0) throw ParseError("unknown vertex '" + name + "'");
    return v;
}

EdgeId DirectedGraph::edge_checked(const std::string& name) const {
    EdgeId e = find_edge(name);
    if (e < 0) throw ParseError("unknown edge '" + name + "'");
    return e;
}

bool DirectedGraph::is_acyclic() const {
    // Kahn peeling on vertices.
    std::vector<int> outdeg(vertex_count());
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        outdeg[v] = out_degree(v);
        if (outdeg[v] == 0) stack.push_back(v);
    }
    int removed = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++removed;
        for (EdgeId e : in_edges(v))
            if (--outdeg[src(e)] == 0) stack.push_back(src(e));
    }
    return removed == vertex_count();
}

bool DirectedGraph::every_cycle_has_exit() const {
    // A cycle without an exit consists of out-degree-one vertices only, so
    // follow the unique successors inside that vertex set.
    std::vector<bool> deg1(vertex_count());
    for (VertexId v = 0; v < vertex_count(); ++v) deg1[v] = out_degree(v) == 1;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (!deg1[v]) continue;
        VertexId cur = v;
        for (int step = 0; step <= vertex_count(); ++step) {
            if (!deg1[cur]) break;
            cur = dst(out_edges(cur)[0]);
            if (cur == v) return false;  // closed a degree-one cycle
        }
    }
    return true;
}

bool DirectedGraph::has_finite_boundary() const {
    // Infinitely many boundary paths exist exactly when some cycle passes
    // through a vertex with out-degree >= 2, i.e. when a branching vertex
    // reaches itself.
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (out_degree(v) < 2) continue;
        std::vector<bool> seen(vertex_count());
        std::vector<VertexId> stack{v};
        while (!stack.empty()) {
            VertexId cur = stack.back();
            stack.pop_back();
            for (EdgeId e : out_edges(cur)) {
                VertexId w = dst(e);
                if (w == v) return false;
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return true;
}

long long DirectedGraph::closed_path_count(int p) const {
    int n = vertex_count();
    std::vector<long long> a(static_cast<size_t>(n) * n, 0);
    for (const Edge& e : edges_) a[static_cast<size_t>(e.src) * n + e.dst] += 1;
    std::vector<long long> acc(a);
    for (int k = 1; k < p; ++k) {
        std::vector<long long> next(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long x = acc[static_cast<size_t>(i) * n + j];
                if (x == 0) continue;
                for (int l = 0; l < n; ++l)
                    next[static_cast<size_t>(i) * n + l] += x * a[static_cast<size_t>(j) * n + l];
            }
        acc.swap(next);
    }
    long long tr = 0;
    for (int i = 0; i < n; ++i) tr += acc[static_cast<size_t>(i) * n + i];
    return tr;
}

DirectedGraph parse_graph(const std::string& text) {
    DirectedGraph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        try {
            if (kw == "vertex") {
                std::string id;
                if (!(ls >> id)) throw ParseError("vertex needs an id");
                g.add_vertex(id);
            } else if (kw == "edge") {
                std::string id, s, d;
                if (!(ls >> id >> s >> d)) throw ParseError("edge needs <id> <src> <dst>");
                g.add_edge(id, s, d);
            } else {
                throw ParseError("unknown directive '" + kw + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
    }
    return g;
}

DirectedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

Path make_path(const DirectedGraph& g, VertexId start, std::vector<EdgeId> edges) {
    if (start < 0 || start >= g.vertex_count()) throw NotComposable("path start is not a vertex");
    VertexId at = start;
    for (EdgeId e : edges) {
        if (e < 0 || e >= g.edge_count()) throw NotComposable("path uses an unknown edge");
        if (g.src(e) != at)
            throw NotComposable("edge '" + g.edge_name(e) + "' does not continue the path");
        at = g.dst(e);
    }
    return Path{start, std::move(edges)};
}

Path make_path(const DirectedGraph& g, const std::vector<EdgeId>& edges) {
    if (edges.empty()) throw NotComposable("cannot infer the start of an empty path");
    return make_path(g, g.src(edges.front()), edges);
}

VertexId path_terminal(const DirectedGraph& g, const Path& p) {
    return p.edges.empty() ? p.start : g.dst(p.edges.back());
}

bool paths_equal(const Path& a, const Path& b) {
    return a.start == b.start && a.edges == b.edges;
}

bool path_less(const Path& a, const Path& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    if (a.start != b.start) return a.start < b.start;
    return a.edges < b.edges;
}

std::string format_path(const DirectedGraph& g, const Path& p) {
    if (p.edges.empty()) return "@" + g.vertex_name(p.start);
    std::string s;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        if (i) s += '.';
        s += g.edge_name(p.edges[i]);
    }
    return s;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace drsys
