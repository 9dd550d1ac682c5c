#include "drsys/transducer.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace drsys {

Transducer::Transducer(const DirectedGraph& input, const DirectedGraph& output,
                       std::vector<std::string> state_names, int initial,
                       std::map<std::pair<int, EdgeId>, Step> steps,
                       std::map<std::pair<int, VertexId>, BoundaryPoint> sink_out)
    : input_(&input),
      output_(&output),
      state_names_(std::move(state_names)),
      initial_(initial),
      steps_(std::move(steps)),
      sink_out_(std::move(sink_out)) {
    if (state_names_.empty()) throw ValidityError("transducer needs at least one state");
    if (initial_ < 0 || initial_ >= state_count())
        throw ValidityError("initial state out of range");
    validate();
}

const Transducer::Step& Transducer::step(int state, EdgeId e) const {
    auto it = steps_.find({state, e});
    if (it == steps_.end())
        throw ValidityError("missing transition (" + state_names_[state] + ", " +
                            input_->edge_name(e) + ")");
    return it->second;
}

const BoundaryPoint& Transducer::sink_value(int state, VertexId v) const {
    auto it = sink_out_.find({state, v});
    if (it == sink_out_.end())
        throw ValidityError("missing sink entry (" + state_names_[state] + ", " +
                            input_->vertex_name(v) + ")");
    return it->second;
}

void Transducer::validate() {
    const DirectedGraph& in = *input_;
    const DirectedGraph& out = *output_;

    for (const auto& [key, value] : sink_out_) {
        if (!in.is_sink(key.second))
            throw ValidityError("sinkmap entry at non-sink vertex '" +
                                in.vertex_name(key.second) + "'");
        if (value.graph != output_)
            throw ValidityError("sinkmap value lives over the wrong graph");
    }

    lag_.assign(state_names_.size(), -1);
    lag_[static_cast<size_t>(initial_)] = 0;

    // Reachability over (state, input vertex, output continuation vertex);
    // -2 marks an output position not yet pinned by any emission.
    std::set<std::tuple<int, VertexId, VertexId>> seen;
    std::vector<std::tuple<int, VertexId, VertexId>> stack;
    for (VertexId v = 0; v < in.vertex_count(); ++v) {
        stack.emplace_back(initial_, v, -2);
        seen.insert(stack.back());
    }
    while (!stack.empty()) {
        auto [s, v, ow] = stack.back();
        stack.pop_back();
        if (in.is_sink(v)) {
            const BoundaryPoint& tail = sink_value(s, v);  // throws if missing
            if (ow != -2 && tail.start_vertex() != ow)
                throw ValidityError("sink tail at (" + state_names_[s] + ", " +
                                    in.vertex_name(v) + ") does not continue the output path");
            continue;
        }
        for (EdgeId e : in.out_edges(v)) {
            const Step& st = step(s, e);  // throws if missing
            if (st.next < 0 || st.next >= state_count())
                throw ValidityError("transition target out of range");
            VertexId next_ow = ow;
            if (st.emit != kSilent) {
                if (st.emit < 0 || st.emit >= out.edge_count())
                    throw ValidityError("emitted edge out of range");
                if (ow != -2 && out.src(st.emit) != ow)
                    throw ValidityError("emitted edge '" + out.edge_name(st.emit) +
                                        "' does not continue the output path");
                next_ow = out.dst(st.emit);
            }
            int next_lag = lag_[static_cast<size_t>(s)] + 1 - (st.emit != kSilent ? 1 : 0);
            if (next_lag < 0)
                throw ValidityError("state '" + state_names_[st.next] +
                                    "' would emit ahead of its input");
            int& slot = lag_[static_cast<size_t>(st.next)];
            if (slot == -1) slot = next_lag;
            else if (slot != next_lag)
                throw ValidityError("inconsistent lag at state '" +
                                    state_names_[st.next] + "'");
            auto key = std::make_tuple(st.next, in.dst(e), next_ow);
            if (seen.insert(key).second) stack.push_back(key);
        }
    }
    for (int s = 0; s < state_count(); ++s)
        max_lag_ = std::max(max_lag_, lag_[static_cast<size_t>(s)] < 0
                                          ? 0
                                          : lag_[static_cast<size_t>(s)]);
}

BoundaryPoint Transducer::apply_from(int state, const BoundaryPoint& x) const {
    const DirectedGraph& out = *output_;
    if (x.graph != input_) throw Error("transducer applied to a point over the wrong graph");

    std::vector<EdgeId> emitted;
    int s = state;
    for (EdgeId e : x.prefix.edges) {
        const Step& st = step(s, e);
        if (st.emit != kSilent) emitted.push_back(st.emit);
        s = st.next;
    }
    if (x.is_finite()) {
        VertexId sink = path_terminal(*input_, x.prefix);
        const BoundaryPoint& tail = sink_value(s, sink);
        if (emitted.empty()) return tail;
        return prepend_path(tail, emitted);
    }
    // Drive the cycle until the machine state repeats at the same cycle
    // phase; the emissions between repeats close the output lasso.
    std::vector<int> seen_at(state_names_.size(), -1);
    std::vector<size_t> emitted_count_at(state_names_.size(), 0);
    int round = 0;
    while (seen_at[static_cast<size_t>(s)] < 0) {
        seen_at[static_cast<size_t>(s)] = round;
        emitted_count_at[static_cast<size_t>(s)] = emitted.size();
        for (EdgeId e : x.cycle) {
            const Step& st = step(s, e);
            if (st.emit != kSilent) emitted.push_back(st.emit);
            s = st.next;
        }
        ++round;
    }
    size_t cycle_from = emitted_count_at[static_cast<size_t>(s)];
    std::vector<EdgeId> pre(emitted.begin(), emitted.begin() + cycle_from);
    std::vector<EdgeId> cyc(emitted.begin() + cycle_from, emitted.end());
    if (cyc.empty())
        throw ValidityError("machine emitted nothing along a cycle");  // lag rules this out
    VertexId start = pre.empty() ? out.src(cyc.front()) : out.src(pre.front());
    return canonical_lasso(out, Path{start, std::move(pre)}, std::move(cyc));
}

std::vector<Cylinder> Transducer::preimage_cylinder(const Cylinder& base) const {
    const DirectedGraph& in = *input_;
    if (base.graph != output_)
        throw Error("preimage_cylinder expects a cylinder over the output graph");
    const Path& mu = base.base;
    int want = mu.length();

    struct Node {
        int s;
        VertexId v;
        int matched;
        bool started;  // first output symbol emitted (start vertex settled)
        Path rho;
    };
    std::vector<Cylinder> result;
    std::vector<Node> stack;
    for (VertexId v = 0; v < in.vertex_count(); ++v)
        stack.push_back(Node{initial_, v, 0, false, Path{v, {}}});

    auto tail_matches_rest = [&](const BoundaryPoint& tail, int matched,
                                 bool started) -> bool {
        if (want == 0 && !started) return tail.start_vertex() == mu.start;
        long need = want - matched;
        if (tail.is_finite() && tail.length() < need) return false;
        for (long i = 0; i < need; ++i)
            if (tail.symbol(i) != mu.edges[static_cast<size_t>(matched + i)]) return false;
        return true;
    };

    int depth_cap = want + max_lag_ + 2;
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        bool accepted = n.started ? (n.matched == want)
                                  : false;  // unstarted output: undecided
        if (accepted) {
            result.push_back(Cylinder{input_, n.rho});
            continue;
        }
        if (in.is_sink(n.v)) {
            const BoundaryPoint& tail = sink_value(n.s, n.v);
            if (tail_matches_rest(tail, n.matched, n.started))
                result.push_back(Cylinder{input_, n.rho});
            continue;
        }
        if (n.rho.length() > depth_cap)
            throw ValidityError("preimage search exceeded the lag bound");
        for (EdgeId e : in.out_edges(n.v)) {
            const Step& st = step(n.s, e);
            Node next{st.next, in.dst(e), n.matched, n.started, n.rho};
            next.rho.edges.push_back(e);
            if (st.emit != kSilent) {
                if (!next.started) {
                    next.started = true;
                    if (want == 0) {
                        if (output_->src(st.emit) == mu.start)
                            result.push_back(Cylinder{input_, next.rho});
                        continue;
                    }
                }
                if (next.matched < want) {
                    if (st.emit != mu.edges[static_cast<size_t>(next.matched)]) continue;
                    ++next.matched;
                }
            }
            stack.push_back(std::move(next));
        }
    }
    std::sort(result.begin(), result.end(), CylinderLess{});
    return result;
}

Transducer parse_transducer(const DirectedGraph& input, const DirectedGraph& output,
                            const std::string& text) {
    std::vector<std::string> names;
    std::map<std::string, int> index;
    int initial = -1;
    struct RawStep {
        std::string state, edge, out, next;
        int line;
    };
    struct RawSink {
        std::string state, vertex, point;
        int line;
    };
    std::vector<RawStep> raw_steps;
    std::vector<RawSink> raw_sinks;

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
        if (kw == "state") {
            std::string id, flag;
            if (!(ls >> id)) throw ParseError("state needs an id", lineno);
            if (index.count(id)) throw ParseError("duplicate state '" + id + "'", lineno);
            index[id] = static_cast<int>(names.size());
            names.push_back(id);
            if (ls >> flag) {
                if (flag != "initial") throw ParseError("unexpected token '" + flag + "'", lineno);
                if (initial >= 0) throw ParseError("two initial states", lineno);
                initial = index[id];
            }
        } else if (kw == "map") {
            RawStep r;
            r.line = lineno;
            if (!(ls >> r.state >> r.edge >> r.out >> r.next))
                throw ParseError("map needs <state> <edge> <out|-> <next>", lineno);
            raw_steps.push_back(r);
        } else if (kw == "sinkmap") {
            RawSink r;
            r.line = lineno;
            if (!(ls >> r.state >> r.vertex >> r.point))
                throw ParseError("sinkmap needs <state> <vertex> <point>", lineno);
            raw_sinks.push_back(r);
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno);
        }
    }
    if (initial < 0) throw ParseError("no initial state declared");

    std::map<std::pair<int, EdgeId>, Transducer::Step> steps;
    for (const RawStep& r : raw_steps) {
        auto si = index.find(r.state);
        auto ni = index.find(r.next);
        if (si == index.end() || ni == index.end())
            throw ParseError("map refers to unknown state", r.line);
        EdgeId e = input.find_edge(r.edge);
        if (e < 0) throw ParseError("unknown input edge '" + r.edge + "'", r.line);
        EdgeId o = Transducer::kSilent;
        if (r.out != "-") {
            o = output.find_edge(r.out);
            if (o < 0) throw ParseError("unknown output edge '" + r.out + "'", r.line);
        }
        if (!steps.emplace(std::make_pair(si->second, e),
                           Transducer::Step{ni->second, o}).second)
            throw ParseError("duplicate map entry", r.line);
    }
    std::map<std::pair<int, VertexId>, BoundaryPoint> sinks;
    for (const RawSink& r : raw_sinks) {
        auto si = index.find(r.state);
        if (si == index.end()) throw ParseError("sinkmap refers to unknown state", r.line);
        VertexId v = input.find_vertex(r.vertex);
        if (v < 0) throw ParseError("unknown vertex '" + r.vertex + "'", r.line);
        BoundaryPoint p = parse_point(output, r.point);
        if (!sinks.emplace(std::make_pair(si->second, v), std::move(p)).second)
            throw ParseError("duplicate sinkmap entry", r.line);
    }
    return Transducer(input, output, std::move(names), initial, std::move(steps),
                      std::move(sinks));
}

Transducer load_transducer_file(const DirectedGraph& input,
                                const DirectedGraph& output,
                                const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open transducer file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_transducer(input, output, buf.str());
}

Transducer one_block_code(const DirectedGraph& input, const DirectedGraph& output,
                          const std::map<std::string, std::string>& edge_map,
                          const std::map<std::string, std::string>& sink_map) {
    std::map<std::pair<int, EdgeId>, Transducer::Step> steps;
    for (const auto& [from, to] : edge_map)
        steps[{0, input.edge_checked(from)}] =
            Transducer::Step{0, output.edge_checked(to)};
    std::map<std::pair<int, VertexId>, BoundaryPoint> sinks;
    for (const auto& [from, to] : sink_map)
        sinks.emplace(std::make_pair(0, input.vertex_checked(from)),
                      parse_point(output, to));
    return Transducer(input, output, {"s"}, 0, std::move(steps), std::move(sinks));
}

}  // namespace drsys
