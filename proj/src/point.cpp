#include "drsys/point.hpp"

#include <algorithm>

namespace drsys {

EdgeId BoundaryPoint::symbol(long i) const {
    long p = prefix.length();
    if (i < p) return prefix.edges[static_cast<size_t>(i)];
    if (is_finite()) throw DomainError("expansion index past the end of a finite point");
    return cycle[static_cast<size_t>((i - p) % static_cast<long>(cycle.size()))];
}

std::vector<EdgeId> BoundaryPoint::expand(long n) const {
    if (is_finite()) n = std::min(n, static_cast<long>(prefix.length()));
    std::vector<EdgeId> out;
    out.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) out.push_back(symbol(i));
    return out;
}

bool point_less(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.is_finite() != b.is_finite()) return a.is_finite();
    if (!paths_equal(a.prefix, b.prefix)) return path_less(a.prefix, b.prefix);
    return a.cycle < b.cycle;
}

BoundaryPoint make_finite_point(const DirectedGraph& g, Path path) {
    VertexId t = path_terminal(g, path);
    if (!g.is_sink(t))
        throw DomainError("finite boundary point must end at a sink, got vertex '" +
                          g.vertex_name(t) + "'");
    return BoundaryPoint{&g, std::move(path), {}};
}

BoundaryPoint make_sink_point(const DirectedGraph& g, VertexId sink) {
    return make_finite_point(g, Path{sink, {}});
}

namespace {

// Smallest period of the word w (the primitive root length divides |w|,
// otherwise |w| itself).
size_t primitive_root_length(const std::vector<EdgeId>& w) {
    for (size_t d = 1; d < w.size(); ++d) {
        if (w.size() % d != 0) continue;
        bool ok = true;
        for (size_t i = d; i < w.size() && ok; ++i) ok = w[i] == w[i - d];
        if (ok) return d;
    }
    return w.size();
}

}  // namespace

BoundaryPoint canonical_lasso(const DirectedGraph& g, Path prefix,
                              std::vector<EdgeId> cycle) {
    if (cycle.empty()) throw NotComposable("lasso cycle must be nonempty");
    VertexId junction = path_terminal(g, prefix);
    // composability of prefix.cycle and closedness of the cycle
    VertexId at = junction;
    for (EdgeId e : cycle) {
        if (e < 0 || e >= g.edge_count() || g.src(e) != at)
            throw NotComposable("cycle does not compose after the prefix");
        at = g.dst(e);
    }
    if (at != junction) throw NotComposable("cycle is not closed");

    size_t root = primitive_root_length(cycle);
    cycle.resize(root);

    // Absorb prefix edges into the cycle:  q.e.(c1..ck)^w = q.(e.c1..c(k-1))^w
    // whenever e equals ck.
    while (!prefix.edges.empty() && prefix.edges.back() == cycle.back()) {
        prefix.edges.pop_back();
        EdgeId last = cycle.back();
        cycle.pop_back();
        cycle.insert(cycle.begin(), last);
    }
    return BoundaryPoint{&g, std::move(prefix), std::move(cycle)};
}

BoundaryPoint prepend_path(const BoundaryPoint& x, const std::vector<EdgeId>& edges) {
    if (edges.empty()) return x;
    const DirectedGraph& g = *x.graph;
    std::vector<EdgeId> joined(edges);
    joined.insert(joined.end(), x.prefix.edges.begin(), x.prefix.edges.end());
    Path p = make_path(g, g.src(edges.front()), std::move(joined));
    if (x.prefix.empty() && path_terminal(g, p) != x.start_vertex())
        throw NotComposable("prepended path does not reach the point's start vertex");
    if (x.is_finite()) return make_finite_point(g, std::move(p));
    return canonical_lasso(g, std::move(p), x.cycle);
}

namespace {

std::vector<std::string> split_dots(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<EdgeId> parse_edge_list(const DirectedGraph& g, const std::string& s) {
    std::vector<EdgeId> edges;
    if (s.empty()) return edges;
    for (const std::string& tok : split_dots(s)) {
        if (tok.empty()) throw ParseError("empty edge name in literal '" + s + "'");
        edges.push_back(g.edge_checked(tok));
    }
    return edges;
}

}  // namespace

BoundaryPoint parse_point(const DirectedGraph& g, const std::string& literal) {
    if (literal.empty()) throw ParseError("empty point literal");
    auto open = literal.find('(');
    if (open != std::string::npos) {
        auto close = literal.find(')', open);
        if (close == std::string::npos || literal.substr(close + 1) != "^w")
            throw ParseError("lasso literal must end with '(...)^w': '" + literal + "'");
        std::string head = literal.substr(0, open);
        if (!head.empty() && head.back() == '.') head.pop_back();
        std::vector<EdgeId> pre = parse_edge_list(g, head);
        std::vector<EdgeId> cyc = parse_edge_list(g, literal.substr(open + 1, close - open - 1));
        if (cyc.empty()) throw ParseError("lasso literal has an empty cycle");
        VertexId start = pre.empty() ? g.src(cyc.front()) : g.src(pre.front());
        Path prefix = make_path(g, start, std::move(pre));
        return canonical_lasso(g, std::move(prefix), std::move(cyc));
    }
    auto at = literal.find('@');
    std::string edge_part = literal.substr(0, at == std::string::npos ? literal.size() : at);
    if (edge_part.empty()) {
        if (at == std::string::npos || at != 0)
            throw ParseError("bad point literal '" + literal + "'");
        VertexId v = g.vertex_checked(literal.substr(1));
        return make_sink_point(g, v);
    }
    std::vector<EdgeId> edges = parse_edge_list(g, edge_part);
    VertexId start = g.src(edges.front());
    Path p = make_path(g, start, std::move(edges));
    if (at != std::string::npos) {
        VertexId v = g.vertex_checked(literal.substr(at + 1));
        if (path_terminal(g, p) != v)
            throw ParseError("terminal marker '@" + g.vertex_name(v) +
                             "' does not match the path in '" + literal + "'");
    }
    return make_finite_point(g, std::move(p));
}

std::string format_point(const BoundaryPoint& x) {
    const DirectedGraph& g = *x.graph;
    if (x.is_finite()) {
        if (x.prefix.empty()) return "@" + g.vertex_name(x.prefix.start);
        std::string s;
        for (size_t i = 0; i < x.prefix.edges.size(); ++i) {
            if (i) s += '.';
            s += g.edge_name(x.prefix.edges[i]);
        }
        return s + "@" + g.vertex_name(path_terminal(g, x.prefix));
    }
    std::string s;
    for (EdgeId e : x.prefix.edges) {
        s += g.edge_name(e);
        s += '.';
    }
    s += '(';
    for (size_t i = 0; i < x.cycle.size(); ++i) {
        if (i) s += '.';
        s += g.edge_name(x.cycle[i]);
    }
    s += ")^w";
    return s;
}

Path parse_path(const DirectedGraph& g, const std::string& literal) {
    if (literal.empty()) throw ParseError("empty path literal");
    if (literal[0] == '@') return Path{g.vertex_checked(literal.substr(1)), {}};
    auto at = literal.find('@');
    std::vector<EdgeId> edges =
        parse_edge_list(g, literal.substr(0, at == std::string::npos ? literal.size() : at));
    VertexId start = g.src(edges.front());
    Path p = make_path(g, start, std::move(edges));
    if (at != std::string::npos &&
        path_terminal(g, p) != g.vertex_checked(literal.substr(at + 1)))
        throw ParseError("terminal marker mismatch in '" + literal + "'");
    return p;
}

}  // namespace drsys
