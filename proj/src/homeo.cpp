#include "drsys/homeo.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace drsys {

const HomeoCertificate& CandidateHomeo::verify() const {
    if (!cert_) cert_ = run_verification();
    return *cert_;
}

void CandidateHomeo::require_verified() const {
    if (!is_verified())
        throw UnverifiedMapError("candidate map has not been verified as a homeomorphism");
}

namespace {

// Least t with sigma^t(p) = sigma^t(q); absent when the two points never
// merge.  Both points are eventually periodic, so merging (if it happens at
// all) happens within the summed description lengths.
std::optional<long> eventual_agreement_offset(const DRSystem& sys,
                                              const BoundaryPoint& p,
                                              const BoundaryPoint& q) {
    auto desc = [](const BoundaryPoint& z) {
        return static_cast<long>(z.prefix.length() + z.cycle.size());
    };
    long bound = desc(p) + desc(q) + 2;
    for (long t = 0; t <= bound; ++t) {
        if (!p.in_shift_domain(t) || !q.in_shift_domain(t)) return std::nullopt;
        if (sys.shift(p, t) == sys.shift(q, t)) return t;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Composite identity check: is second(first(x)) = x for every x?

struct CompositeOutcome {
    bool ok = true;
    long configs = 0;
    std::string offending;
};

CompositeOutcome composite_is_identity(const Transducer& first,
                                       const Transducer& second) {
    const DirectedGraph& E = first.input_graph();
    CompositeOutcome outcome;

    struct Node {
        int s1, s2;
        VertexId v;
        std::vector<EdgeId> queue;  // inputs consumed but not re-emitted yet
        std::vector<EdgeId> path;   // for the offending report
    };
    std::set<std::tuple<int, int, VertexId, std::vector<EdgeId>>> seen;
    std::deque<Node> work;
    for (VertexId v = 0; v < E.vertex_count(); ++v) {
        Node n{first.initial_state(), second.initial_state(), v, {}, {}};
        seen.insert({n.s1, n.s2, n.v, n.queue});
        work.push_back(std::move(n));
    }
    auto describe = [&](const Node& n, EdgeId e) {
        std::string s = "at (" + first.state_name(n.s1) + "," + second.state_name(n.s2) + ")";
        if (!n.path.empty()) {
            s += " after input ";
            s += format_path(E, Path{E.src(n.path.front()), n.path});
        }
        if (e >= 0) s += " reading " + E.edge_name(e);
        return s;
    };

    while (!work.empty() && outcome.ok) {
        Node n = std::move(work.front());
        work.pop_front();
        ++outcome.configs;
        if (E.is_sink(n.v)) {
            const BoundaryPoint& tail = first.sink_value(n.s1, n.v);
            BoundaryPoint rest = second.apply_from(n.s2, tail);
            VertexId start = n.queue.empty() ? n.v : E.src(n.queue.front());
            BoundaryPoint expected = make_finite_point(E, Path{start, n.queue});
            if (!(rest == expected)) {
                outcome.ok = false;
                outcome.offending = describe(n, -1) + ": sink flush gives " +
                                    format_point(rest) + ", expected " +
                                    format_point(expected);
            }
            continue;
        }
        for (EdgeId e : E.out_edges(n.v)) {
            Node next{n.s1, n.s2, E.dst(e), n.queue, n.path};
            next.queue.push_back(e);
            next.path.push_back(e);
            const Transducer::Step& st1 = first.step(n.s1, e);
            next.s1 = st1.next;
            if (st1.emit != Transducer::kSilent) {
                if (!second.has_step(n.s2, st1.emit)) {
                    outcome.ok = false;
                    outcome.offending = describe(n, e) + ": inverse machine cannot read " +
                                        first.output_graph().edge_name(st1.emit);
                    break;
                }
                const Transducer::Step& st2 = second.step(n.s2, st1.emit);
                next.s2 = st2.next;
                if (st2.emit != Transducer::kSilent) {
                    if (next.queue.front() != st2.emit) {
                        outcome.ok = false;
                        outcome.offending = describe(n, e) + ": composite emits " +
                                            E.edge_name(st2.emit) + ", expected " +
                                            E.edge_name(next.queue.front());
                        break;
                    }
                    next.queue.erase(next.queue.begin());
                }
            }
            if (static_cast<int>(next.queue.size()) >
                first.max_lag() + second.max_lag() + 1)
                throw ValidityError("composite lag exceeded its bound");
            auto key = std::make_tuple(next.s1, next.s2, next.v, next.queue);
            if (seen.insert(key).second) work.push_back(std::move(next));
        }
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// Pair analysis of sigma(h(x)) against h(sigma(x)) over all x in dom(sigma).
//
// Two runs of the same machine are driven by one input stream: run A has
// already consumed the leading edge, run B starts fresh.  Stream one is
// run A's emissions with the first discarded; stream two is run B's
// emissions.  Mismatching comparisons and diverging sink flushes are the
// defect events; their positions bound the eventual-conjugacy defect.

struct PairEvent {
    long position_plus_one = 0;  // contribution to the uniform defect
    bool never_agrees = false;
    Cylinder where;
};

struct PairGraph {
    struct Edge {
        int to;
        int weight;  // comparisons performed in this step (0 or 1)
        bool mismatch;
        EdgeId input;
    };
    std::vector<std::vector<Edge>> adj;
    std::vector<std::optional<long>> sink_d;  // agreement offset at sink nodes
    std::vector<bool> sink_never;
    std::vector<bool> is_start;
    std::vector<std::vector<EdgeId>> first_path;  // one witness path per node
};

CommuteAnalysis analyze_pair_machine(const Transducer& T) {
    const DirectedGraph& E = T.input_graph();
    DRSystem cod(T.output_graph());
    CommuteAnalysis res;

    struct Key {
        int a, b;
        VertexId v;
        bool dropped;
        std::vector<EdgeId> pa, pb;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, int> index;
    std::vector<Key> keys;
    PairGraph pg;
    std::deque<int> work;

    auto intern = [&](const Key& k, std::vector<EdgeId> path) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(keys.size());
        index.emplace(k, id);
        keys.push_back(k);
        pg.adj.emplace_back();
        pg.sink_d.emplace_back();
        pg.sink_never.push_back(false);
        pg.is_start.push_back(false);
        pg.first_path.push_back(std::move(path));
        work.push_back(id);
        return id;
    };

    // start configurations: one per leading edge
    for (EdgeId e0 = 0; e0 < E.edge_count(); ++e0) {
        const Transducer::Step& st = T.step(T.initial_state(), e0);
        Key k{st.next, T.initial_state(), E.dst(e0),
              st.emit != Transducer::kSilent, {}, {}};
        int id = intern(k, {e0});
        pg.is_start[static_cast<size_t>(id)] = true;
    }

    bool any_mismatch = false;
    while (!work.empty()) {
        int id = work.front();
        work.pop_front();
        Key k = keys[static_cast<size_t>(id)];
        if (E.is_sink(k.v)) {
            const BoundaryPoint& tail_a = T.sink_value(k.a, k.v);
            const BoundaryPoint& tail_b = T.sink_value(k.b, k.v);
            std::optional<BoundaryPoint> s1rest;
            if (!k.dropped) {
                // run A never emitted: stream one is sigma(tail of A)
                if (tail_a.in_shift_domain(1)) s1rest = cod.shift(tail_a, 1);
            } else {
                s1rest = prepend_path(tail_a, k.pa);
            }
            BoundaryPoint s2rest = prepend_path(tail_b, k.pb);
            if (!s1rest) {
                pg.sink_never[static_cast<size_t>(id)] = true;  // h(x) outside dom(sigma)
                continue;
            }
            auto d = eventual_agreement_offset(cod, *s1rest, s2rest);
            if (!d) pg.sink_never[static_cast<size_t>(id)] = true;
            else pg.sink_d[static_cast<size_t>(id)] = *d;
            continue;
        }
        for (EdgeId e : E.out_edges(k.v)) {
            const Transducer::Step& sa = T.step(k.a, e);
            const Transducer::Step& sb = T.step(k.b, e);
            Key nk{sa.next, sb.next, E.dst(e), k.dropped, k.pa, k.pb};
            if (sa.emit != Transducer::kSilent) {
                if (!nk.dropped) nk.dropped = true;
                else nk.pa.push_back(sa.emit);
            }
            if (sb.emit != Transducer::kSilent) nk.pb.push_back(sb.emit);
            int weight = 0;
            bool mismatch = false;
            if (!nk.pa.empty() && !nk.pb.empty()) {
                weight = 1;
                mismatch = nk.pa.front() != nk.pb.front();
                nk.pa.erase(nk.pa.begin());
                nk.pb.erase(nk.pb.begin());
            }
            if (static_cast<int>(nk.pa.size() + nk.pb.size()) > 2 * T.max_lag() + 2)
                throw ValidityError("pair analysis lag exceeded its bound");
            std::vector<EdgeId> path = pg.first_path[static_cast<size_t>(id)];
            path.push_back(e);
            int to = intern(nk, std::move(path));
            pg.adj[static_cast<size_t>(id)].push_back({to, weight, mismatch, e});
            any_mismatch = any_mismatch || mismatch;
        }
    }

    const int n = static_cast<int>(pg.adj.size());

    // witness: the first defect found along a breadth-first sweep
    auto witness_cylinder = [&](int node, EdgeId input) -> Cylinder {
        std::vector<EdgeId> path = pg.first_path[static_cast<size_t>(node)];
        if (input >= 0) path.push_back(input);
        return Cylinder{&E, Path{E.src(path.front()), path}};
    };

    bool any_bad_sink = false;
    for (int i = 0; i < n && !any_bad_sink; ++i)
        if (pg.sink_never[static_cast<size_t>(i)] ||
            (pg.sink_d[static_cast<size_t>(i)] && *pg.sink_d[static_cast<size_t>(i)] > 0))
            any_bad_sink = true;

    res.commutes = !any_mismatch && !any_bad_sink;
    if (res.commutes) {
        res.eventual = true;
        res.uniform_defect = 0;
        return res;
    }
    for (int i = 0; i < n && !res.violation; ++i) {
        for (const auto& ed : pg.adj[static_cast<size_t>(i)])
            if (ed.mismatch) {
                res.violation = witness_cylinder(i, ed.input);
                break;
            }
        if (!res.violation && (pg.sink_never[static_cast<size_t>(i)] ||
                               (pg.sink_d[static_cast<size_t>(i)] &&
                                *pg.sink_d[static_cast<size_t>(i)] > 0)))
            res.violation = witness_cylinder(i, -1);
    }

    // strongly connected components (Kosaraju) to find nodes on cycles
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    {
        std::vector<int> state(static_cast<size_t>(n), 0);
        for (int root = 0; root < n; ++root) {
            if (state[static_cast<size_t>(root)]) continue;
            std::vector<std::pair<int, size_t>> stack{{root, 0}};
            state[static_cast<size_t>(root)] = 1;
            while (!stack.empty()) {
                auto& [u, idx] = stack.back();
                if (idx < pg.adj[static_cast<size_t>(u)].size()) {
                    int w = pg.adj[static_cast<size_t>(u)][idx++].to;
                    if (!state[static_cast<size_t>(w)]) {
                        state[static_cast<size_t>(w)] = 1;
                        stack.push_back({w, 0});
                    }
                } else {
                    order.push_back(u);
                    stack.pop_back();
                }
            }
        }
    }
    std::vector<std::vector<int>> radj(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u)
        for (const auto& ed : pg.adj[static_cast<size_t>(u)])
            radj[static_cast<size_t>(ed.to)].push_back(u);
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int ncomp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[static_cast<size_t>(*it)] >= 0) continue;
        std::vector<int> stack{*it};
        comp[static_cast<size_t>(*it)] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : radj[static_cast<size_t>(u)])
                if (comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    std::vector<int> comp_size(static_cast<size_t>(ncomp), 0);
    std::vector<bool> comp_cyclic(static_cast<size_t>(ncomp), false);
    for (int u = 0; u < n; ++u) ++comp_size[static_cast<size_t>(comp[static_cast<size_t>(u)])];
    for (int u = 0; u < n; ++u)
        for (const auto& ed : pg.adj[static_cast<size_t>(u)])
            if (ed.to == u) comp_cyclic[static_cast<size_t>(comp[static_cast<size_t>(u)])] = true;
    for (int c = 0; c < ncomp; ++c)
        if (comp_size[static_cast<size_t>(c)] >= 2) comp_cyclic[static_cast<size_t>(c)] = true;
    auto on_cycle = [&](int u) { return comp_cyclic[static_cast<size_t>(comp[static_cast<size_t>(u)])]; };

    // eventual conjugacy fails when a mismatch sits on a cycle (one lasso
    // input collects infinitely many mismatches) or a sink never agrees
    bool eventual = true;
    for (int u = 0; u < n && eventual; ++u) {
        if (pg.sink_never[static_cast<size_t>(u)]) eventual = false;
        for (const auto& ed : pg.adj[static_cast<size_t>(u)])
            if (ed.mismatch && comp[static_cast<size_t>(u)] == comp[static_cast<size_t>(ed.to)] &&
                on_cycle(u)) {
                eventual = false;
                break;
            }
    }
    res.eventual = eventual;
    if (!eventual) return res;

    // tainted = reachable from a cycle: defects there occur at unbounded depth
    std::vector<bool> tainted(static_cast<size_t>(n), false);
    {
        std::deque<int> q;
        for (int u = 0; u < n; ++u)
            if (on_cycle(u)) {
                tainted[static_cast<size_t>(u)] = true;
                q.push_back(u);
            }
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (const auto& ed : pg.adj[static_cast<size_t>(u)])
                if (!tainted[static_cast<size_t>(ed.to)]) {
                    tainted[static_cast<size_t>(ed.to)] = true;
                    q.push_back(ed.to);
                }
        }
    }
    std::vector<bool> is_event(static_cast<size_t>(n), false);
    for (int u = 0; u < n; ++u) {
        if (pg.sink_d[static_cast<size_t>(u)] && *pg.sink_d[static_cast<size_t>(u)] > 0)
            is_event[static_cast<size_t>(u)] = true;
        for (const auto& ed : pg.adj[static_cast<size_t>(u)])
            if (ed.mismatch) is_event[static_cast<size_t>(u)] = true;
    }
    for (int u = 0; u < n; ++u)
        if (is_event[static_cast<size_t>(u)] && tainted[static_cast<size_t>(u)]) {
            res.uniform_defect = std::nullopt;  // defects at unbounded positions
            return res;
        }

    // longest comparison count from a start to each node that can reach an
    // event; this region is acyclic once tainted nodes are excluded
    std::vector<bool> canreach(static_cast<size_t>(n), false);
    {
        std::deque<int> q;
        for (int u = 0; u < n; ++u)
            if (is_event[static_cast<size_t>(u)]) {
                canreach[static_cast<size_t>(u)] = true;
                q.push_back(u);
            }
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int w : radj[static_cast<size_t>(u)])
                if (!canreach[static_cast<size_t>(w)]) {
                    canreach[static_cast<size_t>(w)] = true;
                    q.push_back(w);
                }
        }
    }
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        if (!canreach[static_cast<size_t>(u)]) continue;
        for (const auto& ed : pg.adj[static_cast<size_t>(u)])
            if (canreach[static_cast<size_t>(ed.to)]) ++indeg[static_cast<size_t>(ed.to)];
    }
    std::vector<long> dist(static_cast<size_t>(n), -1);
    std::deque<int> topo;
    for (int u = 0; u < n; ++u)
        if (canreach[static_cast<size_t>(u)] && indeg[static_cast<size_t>(u)] == 0) {
            topo.push_back(u);
        }
    for (int u = 0; u < n; ++u)
        if (canreach[static_cast<size_t>(u)] && pg.is_start[static_cast<size_t>(u)])
            dist[static_cast<size_t>(u)] = 0;
    long best = 0;
    while (!topo.empty()) {
        int u = topo.front();
        topo.pop_front();
        long du = dist[static_cast<size_t>(u)];
        if (du >= 0) {
            for (const auto& ed : pg.adj[static_cast<size_t>(u)]) {
                if (ed.mismatch) best = std::max(best, du + 1);
            }
            if (pg.sink_d[static_cast<size_t>(u)] && *pg.sink_d[static_cast<size_t>(u)] > 0)
                best = std::max(best, du + *pg.sink_d[static_cast<size_t>(u)]);
        }
        for (const auto& ed : pg.adj[static_cast<size_t>(u)]) {
            if (!canreach[static_cast<size_t>(ed.to)]) continue;
            if (du >= 0)
                dist[static_cast<size_t>(ed.to)] =
                    std::max(dist[static_cast<size_t>(ed.to)], du + ed.weight);
            if (--indeg[static_cast<size_t>(ed.to)] == 0) topo.push_back(ed.to);
        }
    }
    res.uniform_defect = best;
    return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// TransducerHomeo

TransducerHomeo::TransducerHomeo(Transducer forward, Transducer backward)
    : fwd_(std::move(forward)), bwd_(std::move(backward)) {
    if (&fwd_.input_graph() != &bwd_.output_graph() ||
        &fwd_.output_graph() != &bwd_.input_graph())
        throw ValidityError("forward and backward machines disagree on the graphs");
}

HomeoCertificate TransducerHomeo::run_verification() const {
    HomeoCertificate cert;
    CompositeOutcome there = composite_is_identity(fwd_, bwd_);
    CompositeOutcome back = composite_is_identity(bwd_, fwd_);
    cert.reachable_configs = there.configs + back.configs;
    cert.ok = there.ok && back.ok;
    if (!there.ok) cert.offending = "backward.forward: " + there.offending;
    else if (!back.ok) cert.offending = "forward.backward: " + back.offending;
    return cert;
}

std::vector<Cylinder> TransducerHomeo::image_cylinder(const Cylinder& base) const {
    require_verified();
    return bwd_.preimage_cylinder(base);
}

std::vector<Cylinder> TransducerHomeo::preimage_cylinder(const Cylinder& base) const {
    require_verified();
    return fwd_.preimage_cylinder(base);
}

CommuteAnalysis TransducerHomeo::analyze_commute() const {
    require_verified();
    return analyze_pair_machine(fwd_);
}

std::unique_ptr<CandidateHomeo> TransducerHomeo::inverse_view() const {
    return std::make_unique<TransducerHomeo>(bwd_, fwd_);
}

long TransducerHomeo::defect_search_bound(const BoundaryPoint& x) const {
    long desc = x.prefix.length() + static_cast<long>(x.cycle.size());
    return fwd_.state_count() * (desc + 1) + fwd_.input_graph().edge_count();
}

// ---------------------------------------------------------------------------
// TableHomeo

TableHomeo::TableHomeo(const DirectedGraph& dom, const DirectedGraph& cod,
                       std::vector<std::pair<BoundaryPoint, BoundaryPoint>> pairs)
    : dom_(&dom), cod_(&cod), pairs_(std::move(pairs)) {
    if (!dom.has_finite_boundary() || !cod.has_finite_boundary())
        throw ValidityError("table map needs finite boundary spaces");
    for (const auto& [x, y] : pairs_) {
        if (x.graph != dom_ || y.graph != cod_)
            throw ValidityError("table entry lives over the wrong graph");
    }
}

BoundaryPoint TableHomeo::map_point(const BoundaryPoint& x) const {
    for (const auto& [a, b] : pairs_)
        if (a == x) return b;
    throw DomainError("point " + format_point(x) + " missing from the table");
}

BoundaryPoint TableHomeo::unmap_point(const BoundaryPoint& y) const {
    for (const auto& [a, b] : pairs_)
        if (b == y) return a;
    throw DomainError("point " + format_point(y) + " missing from the table");
}

HomeoCertificate TableHomeo::run_verification() const {
    HomeoCertificate cert;
    std::vector<BoundaryPoint> dom_pts = enumerate_boundary(*dom_);
    std::vector<BoundaryPoint> cod_pts = enumerate_boundary(*cod_);
    cert.reachable_configs = static_cast<long>(dom_pts.size() + cod_pts.size());
    if (pairs_.size() != dom_pts.size() || pairs_.size() != cod_pts.size()) {
        cert.offending = "table size does not match the boundary spaces";
        return cert;
    }
    std::vector<BoundaryPoint> lhs, rhs;
    for (const auto& [a, b] : pairs_) {
        lhs.push_back(a);
        rhs.push_back(b);
    }
    std::sort(lhs.begin(), lhs.end(), PointLess{});
    std::sort(rhs.begin(), rhs.end(), PointLess{});
    if (!std::equal(lhs.begin(), lhs.end(), dom_pts.begin())) {
        cert.offending = "table domain is not the whole boundary space";
        return cert;
    }
    if (!std::equal(rhs.begin(), rhs.end(), cod_pts.begin())) {
        cert.offending = "table image is not the whole boundary space";
        return cert;
    }
    cert.ok = true;
    return cert;
}

std::vector<Cylinder> TableHomeo::image_cylinder(const Cylinder& base) const {
    require_verified();
    std::vector<Cylinder> out;
    for (const auto& [x, y] : pairs_)
        if (cylinder_contains(base, x)) out.push_back(singleton_cylinder(y));
    std::sort(out.begin(), out.end(), CylinderLess{});
    return out;
}

std::vector<Cylinder> TableHomeo::preimage_cylinder(const Cylinder& base) const {
    require_verified();
    std::vector<Cylinder> out;
    for (const auto& [x, y] : pairs_)
        if (cylinder_contains(base, y)) out.push_back(singleton_cylinder(x));
    std::sort(out.begin(), out.end(), CylinderLess{});
    return out;
}

CommuteAnalysis TableHomeo::analyze_commute() const {
    require_verified();
    DRSystem dom_sys(*dom_), cod_sys(*cod_);
    CommuteAnalysis res;
    res.commutes = true;
    res.eventual = true;
    long best = 0;
    for (const auto& [x, y] : pairs_) {
        if (!x.in_shift_domain(1)) continue;
        BoundaryPoint hsx = map_point(dom_sys.shift(x, 1));
        if (!y.in_shift_domain(1)) {
            res.commutes = false;
            res.eventual = false;
            res.uniform_defect = std::nullopt;
            if (!res.violation) res.violation = singleton_cylinder(x);
            continue;
        }
        auto d = eventual_agreement_offset(cod_sys, cod_sys.shift(y, 1), hsx);
        if (!d) {
            res.commutes = false;
            res.eventual = false;
            res.uniform_defect = std::nullopt;
            if (!res.violation) res.violation = singleton_cylinder(x);
        } else if (*d > 0) {
            res.commutes = false;
            best = std::max(best, *d);
            if (!res.violation) res.violation = singleton_cylinder(x);
        }
    }
    if (res.eventual && !res.uniform_defect) res.uniform_defect = best;
    if (!res.eventual) res.uniform_defect = std::nullopt;
    return res;
}

std::unique_ptr<CandidateHomeo> TableHomeo::inverse_view() const {
    std::vector<std::pair<BoundaryPoint, BoundaryPoint>> flipped;
    for (const auto& [a, b] : pairs_) flipped.emplace_back(b, a);
    return std::make_unique<TableHomeo>(*cod_, *dom_, std::move(flipped));
}

long TableHomeo::defect_search_bound(const BoundaryPoint& x) const {
    long desc = x.prefix.length() + static_cast<long>(x.cycle.size());
    return static_cast<long>(pairs_.size()) + desc + dom_->edge_count();
}

// ---------------------------------------------------------------------------

std::string to_string(FailingCondition c) {
    switch (c) {
        case FailingCondition::None: return "None";
        case FailingCondition::Dom: return "Dom";
        case FailingCondition::Commute: return "Commute";
        case FailingCondition::PreimageSetEquality: return "PreimageSetEquality";
    }
    return "?";
}

bool clopen_equal(const DirectedGraph& g, const std::vector<Cylinder>& a,
                  const std::vector<Cylinder>& b) {
    std::vector<Cylinder> all(a);
    all.insert(all.end(), b.begin(), b.end());
    if (all.empty()) return true;
    std::vector<Cylinder> atoms = refine_to_atoms(g, all);
    for (const Cylinder& t : atoms) {
        bool in_a = std::any_of(a.begin(), a.end(),
                                [&](const Cylinder& c) { return cylinder_subset(t, c); });
        bool in_b = std::any_of(b.begin(), b.end(),
                                [&](const Cylinder& c) { return cylinder_subset(t, c); });
        if (in_a != in_b) return false;
    }
    return true;
}

namespace {

// Preimage-set route: the equalities h(sigma^{-1}(A)) = sigma^{-1}(h(A)) and
// their mirror, checked on cylinders up to a depth and on random lassos.
bool preimage_route_holds(const CandidateHomeo& h, int depth, int samples,
                          std::uint64_t seed) {
    const DirectedGraph& E = h.domain_graph();
    const DirectedGraph& F = h.codomain_graph();
    DRSystem sysE(E), sysF(F);
    std::unique_ptr<CandidateHomeo> inv = h.inverse_view();
    inv->verify();

    auto sigma_preimage = [](const DirectedGraph& g, const std::vector<Cylinder>& cs) {
        std::vector<Cylinder> out;
        for (const Cylinder& c : cs) {
            for (EdgeId e : g.in_edges(c.base.start)) {
                Path p{g.src(e), {e}};
                p.edges.insert(p.edges.end(), c.base.edges.begin(), c.base.edges.end());
                out.push_back(Cylinder{&g, std::move(p)});
            }
        }
        return out;
    };

    auto cylinder_side = [&](const CandidateHomeo& map, const DirectedGraph& from,
                             const DirectedGraph& to) {
        for (int d = 0; d <= depth; ++d) {
            for (Path& p : all_paths_of_length(from, d)) {
                Cylinder c{&from, std::move(p)};
                std::vector<Cylinder> lhs;  // h(sigma^{-1}(Z(c)))
                for (const Cylinder& pre : sigma_preimage(from, {c}))
                    for (Cylinder& im : map.image_cylinder(pre)) lhs.push_back(std::move(im));
                std::vector<Cylinder> rhs = sigma_preimage(to, map.image_cylinder(c));
                if (!clopen_equal(to, lhs, rhs)) return false;
            }
        }
        return true;
    };
    if (!cylinder_side(h, E, F)) return false;
    if (!cylinder_side(*inv, F, E)) return false;

    auto sample_side = [&](const CandidateHomeo& map, const DRSystem& sfrom,
                           const DRSystem& sto, std::uint64_t s) {
        std::mt19937_64 rng(s);
        for (int i = 0; i < samples; ++i) {
            BoundaryPoint x = random_boundary_point(sfrom.graph(), rng);
            std::vector<BoundaryPoint> lhs;
            for (const BoundaryPoint& z : sfrom.preimages(x)) lhs.push_back(map.map_point(z));
            std::sort(lhs.begin(), lhs.end(), PointLess{});
            std::vector<BoundaryPoint> rhs = sto.preimages(map.map_point(x));
            if (lhs.size() != rhs.size() ||
                !std::equal(lhs.begin(), lhs.end(), rhs.begin()))
                return false;
        }
        return true;
    };
    if (!sample_side(h, sysE, sysF, seed * 2 + 1)) return false;
    if (!sample_side(*inv, sysF, sysE, seed * 2 + 2)) return false;
    return true;
}

}  // namespace

ConjugacyVerdict check_conjugacy(const CandidateHomeo& h, const ConjugacyOptions& opts) {
    ConjugacyVerdict verdict;
    const HomeoCertificate& cert = h.verify();
    verdict.product_states = cert.reachable_configs;
    if (!cert.ok) {
        verdict.witness = cert.offending;
        return verdict;
    }
    verdict.is_homeomorphism = true;

    const DirectedGraph& E = h.domain_graph();
    const DirectedGraph& F = h.codomain_graph();

    // domain condition: h carries the complement of dom(sigma_E) (the bare
    // sinks) onto the complement of dom(sigma_F).
    std::string dom_witness;
    bool dom_ok = true;
    std::vector<BoundaryPoint> sink_images;
    for (VertexId v : E.sinks()) {
        BoundaryPoint y = h.map_point(make_sink_point(E, v));
        if (!(y.is_finite() && y.prefix.empty())) {
            dom_ok = false;
            dom_witness = format_point(make_sink_point(E, v));
            break;
        }
        sink_images.push_back(y);
    }
    if (dom_ok) {
        std::sort(sink_images.begin(), sink_images.end(), PointLess{});
        std::vector<BoundaryPoint> cod_sinks;
        for (VertexId w : F.sinks()) cod_sinks.push_back(make_sink_point(F, w));
        if (sink_images.size() != cod_sinks.size() ||
            !std::equal(sink_images.begin(), sink_images.end(), cod_sinks.begin())) {
            dom_ok = false;
            dom_witness = "sink points of the two spaces do not correspond";
        }
    }
    verdict.dom_condition = dom_ok;

    // commuting condition, decided by the pair analysis.
    CommuteAnalysis ca = h.analyze_commute();
    verdict.commute_condition = ca.commutes;
    verdict.eventual_k_bound = ca.uniform_defect;

    // preimage-set route, evaluated independently.
    verdict.preimage_depth = opts.preimage_depth;
    verdict.preimage_route =
        preimage_route_holds(h, opts.preimage_depth, opts.samples, opts.seed);

    if ((dom_ok && ca.commutes) != verdict.preimage_route)
        throw std::logic_error(
            "conjugacy routes disagree: the dom/commute analysis gives " +
            std::string(dom_ok && ca.commutes ? "true" : "false") +
            " but the preimage-set route gives " +
            std::string(verdict.preimage_route ? "true" : "false"));

    verdict.is_conjugacy = dom_ok && ca.commutes;
    if (!verdict.is_conjugacy) {
        if (!dom_ok) {
            verdict.failing_condition = FailingCondition::Dom;
            verdict.witness = dom_witness;
        } else {
            verdict.failing_condition = FailingCondition::Commute;
            if (ca.violation) verdict.witness = format_cylinder(*ca.violation);
        }
    }
    return verdict;
}

long eventual_k(const CandidateHomeo& h, const BoundaryPoint& x) {
    if (!h.verify().ok)
        throw UnverifiedMapError("eventual_k needs a verified homeomorphism");
    if (!x.in_shift_domain(1))
        throw DomainError("eventual_k expects a point of dom(sigma)");
    DRSystem dom_sys(h.domain_graph()), cod_sys(h.codomain_graph());
    BoundaryPoint hx = h.map_point(x);
    BoundaryPoint hsx = h.map_point(dom_sys.shift(x, 1));
    long bound = h.defect_search_bound(x);
    if (!hx.in_shift_domain(1)) throw NotEventuallyConjugate(format_point(x), bound);
    BoundaryPoint p1 = cod_sys.shift(hx, 1);
    for (long k = 0; k <= bound; ++k) {
        if (!p1.in_shift_domain(k) || !hsx.in_shift_domain(k)) break;
        if (cod_sys.shift(p1, k) == cod_sys.shift(hsx, k)) return k;
    }
    throw NotEventuallyConjugate(format_point(x), bound);
}

std::optional<long> uniform_eventual_bound(const CandidateHomeo& h) {
    if (!h.verify().ok)
        throw UnverifiedMapError("uniform_eventual_bound needs a verified homeomorphism");
    return h.analyze_commute().uniform_defect;
}

}  // namespace drsys
