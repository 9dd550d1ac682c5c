#include "drsys/system.hpp"

#include <algorithm>

namespace drsys {

BoundaryPoint DRSystem::shift(const BoundaryPoint& x, long k) const {
    if (k < 0) throw DomainError("negative shift exponent");
    if (!x.in_shift_domain(k))
        throw DomainError("point " + format_point(x) + " is outside dom(sigma^" +
                          std::to_string(k) + ")");
    if (k == 0) return x;
    const DirectedGraph& g = *x.graph;
    long p = x.prefix.length();
    if (x.is_finite()) {
        std::vector<EdgeId> rest(x.prefix.edges.begin() + k, x.prefix.edges.end());
        VertexId start = rest.empty() ? path_terminal(g, x.prefix)
                                      : g.src(rest.front());
        return make_finite_point(g, Path{start, std::move(rest)});
    }
    if (k <= p) {
        std::vector<EdgeId> rest(x.prefix.edges.begin() + k, x.prefix.edges.end());
        VertexId start = rest.empty() ? g.src(x.cycle.front()) : g.src(rest.front());
        return canonical_lasso(g, Path{start, std::move(rest)}, x.cycle);
    }
    long r = (k - p) % static_cast<long>(x.cycle.size());
    std::vector<EdgeId> rotated(x.cycle.begin() + r, x.cycle.end());
    rotated.insert(rotated.end(), x.cycle.begin(), x.cycle.begin() + r);
    VertexId start = g.src(rotated.front());
    return canonical_lasso(g, Path{start, {}}, std::move(rotated));
}

std::vector<BoundaryPoint> DRSystem::preimages(const BoundaryPoint& x) const {
    const DirectedGraph& g = *x.graph;
    std::vector<BoundaryPoint> out;
    for (EdgeId e : g.in_edges(x.start_vertex())) out.push_back(prepend_path(x, {e}));
    std::sort(out.begin(), out.end(), PointLess{});
    return out;
}

std::optional<std::pair<long, long>> DRSystem::same_orbit(
    const BoundaryPoint& x, const BoundaryPoint& y) const {
    auto desc = [](const BoundaryPoint& z) {
        return static_cast<long>(z.prefix.length() + z.cycle.size());
    };
    long bound = desc(x) + desc(y) + graph_->edge_count();
    for (long k = 0; k <= bound; ++k) {
        if (!x.in_shift_domain(k)) break;
        BoundaryPoint sx = shift(x, k);
        for (long l = 0; l <= bound; ++l) {
            if (!y.in_shift_domain(l)) break;
            if (sx == shift(y, l)) return std::make_pair(k, l);
        }
    }
    return std::nullopt;
}

PeriodicityReport DRSystem::periodicity(const BoundaryPoint& x) const {
    if (x.is_finite()) return {PeriodicityReport::Kind::Aperiodic, 0, 0};
    long p = x.prefix.length();
    long c = static_cast<long>(x.cycle.size());
    if (p == 0) return {PeriodicityReport::Kind::Periodic, 0, c};
    return {PeriodicityReport::Kind::EventuallyPeriodic, p, c};
}

bool DRSystem::is_topologically_free() const {
    return graph_->every_cycle_has_exit();
}

long long DRSystem::periodic_count(int p) const {
    if (p < 1) throw Error("periodic_count needs p >= 1");
    return graph_->closed_path_count(p);
}

long long count_closed_paths_brute(const DirectedGraph& g, int p) {
    long long count = 0;
    struct Walker {
        const DirectedGraph& g;
        int target;
        long long& count;
        VertexId origin;
        void walk(VertexId at, int len) {
            if (len == target) {
                if (at == origin) ++count;
                return;
            }
            for (EdgeId e : g.out_edges(at)) walk(g.dst(e), len + 1);
        }
    } walker{g, p, count, 0};
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        walker.origin = v;
        walker.walk(v, 0);
    }
    return count;
}

BoundaryPoint random_boundary_point(const DirectedGraph& g, std::mt19937_64& rng,
                                    int max_prefix) {
    VertexId v = static_cast<VertexId>(rng() % static_cast<unsigned>(g.vertex_count()));
    Path walk{v, {}};
    int prefix_len = static_cast<int>(rng() % static_cast<unsigned>(max_prefix + 1));
    VertexId at = v;
    for (int i = 0; i < prefix_len && !g.is_sink(at); ++i) {
        const auto& outs = g.out_edges(at);
        EdgeId e = outs[rng() % outs.size()];
        walk.edges.push_back(e);
        at = g.dst(e);
    }
    // try to close a cycle with a further random walk
    std::vector<int> seen(static_cast<size_t>(g.vertex_count()), -1);
    seen[static_cast<size_t>(at)] = walk.length();
    std::vector<EdgeId> tail;
    while (!g.is_sink(at)) {
        const auto& outs = g.out_edges(at);
        EdgeId e = outs[rng() % outs.size()];
        tail.push_back(e);
        at = g.dst(e);
        int pos = walk.length() + static_cast<int>(tail.size());
        if (seen[static_cast<size_t>(at)] >= 0) {
            int cut = seen[static_cast<size_t>(at)];
            std::vector<EdgeId> pre(walk.edges);
            pre.insert(pre.end(), tail.begin(), tail.begin() + (cut - walk.length()));
            std::vector<EdgeId> cyc(tail.begin() + (cut - walk.length()), tail.end());
            return canonical_lasso(g, Path{v, std::move(pre)}, std::move(cyc));
        }
        seen[static_cast<size_t>(at)] = pos;
    }
    Path full{v, walk.edges};
    full.edges.insert(full.edges.end(), tail.begin(), tail.end());
    return make_finite_point(g, std::move(full));
}

}  // namespace drsys
