#ifndef DRSYS_TRANSDUCER_HPP
#define DRSYS_TRANSDUCER_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drsys/cylinder.hpp"
#include "drsys/point.hpp"

namespace drsys {

// A sequential machine realising a candidate map of boundary-path spaces
// (input graph E, output graph F).  Reading one E-edge emits zero or one
// F-edge; the number of symbols a state is behind by (its lag) must be the
// same along every run, which keeps every machine rate-one with a bounded
// buffer.  Silent steps let block codes with anticipation buffer their
// lookahead; a strictly letter-to-letter machine has lag zero everywhere.
// When the input ends at a sink, the sink table supplies the remaining
// output (flushing any buffered lookahead).
//
// File format, one directive per line ('#' comments):
//   state <id> [initial]
//   map <state> <E-edge> <F-edge-or-'-'> <next-state>
//   sinkmap <state> <E-sink-vertex> <F-point-literal>
class Transducer {
public:
    static constexpr EdgeId kSilent = -1;

    struct Step {
        int next = -1;
        EdgeId emit = kSilent;
    };

    // Builds and validates the machine: transitions must be total over the
    // reachable (state, vertex) configurations, emitted edges must
    // concatenate to valid F-paths, per-state lags must be consistent, and
    // sink entries must exist and compose.  Throws ValidityError.
    Transducer(const DirectedGraph& input, const DirectedGraph& output,
               std::vector<std::string> state_names, int initial,
               std::map<std::pair<int, EdgeId>, Step> steps,
               std::map<std::pair<int, VertexId>, BoundaryPoint> sink_out);

    const DirectedGraph& input_graph() const { return *input_; }
    const DirectedGraph& output_graph() const { return *output_; }
    int state_count() const { return static_cast<int>(state_names_.size()); }
    int initial_state() const { return initial_; }
    const std::string& state_name(int s) const { return state_names_[s]; }
    int max_lag() const { return max_lag_; }
    int lag(int s) const { return lag_[s]; }

    const Step& step(int state, EdgeId e) const;
    const BoundaryPoint& sink_value(int state, VertexId v) const;
    bool has_step(int state, EdgeId e) const {
        return steps_.count({state, e}) != 0;
    }

    // The image of x under the machine run from `state` (canonical form).
    BoundaryPoint apply_from(int state, const BoundaryPoint& x) const;
    BoundaryPoint apply(const BoundaryPoint& x) const { return apply_from(initial_, x); }

    // Disjoint cylinders covering { x : T(x) extends `base` }.
    std::vector<Cylinder> preimage_cylinder(const Cylinder& base) const;

private:
    void validate();

    const DirectedGraph* input_;
    const DirectedGraph* output_;
    std::vector<std::string> state_names_;
    int initial_;
    std::map<std::pair<int, EdgeId>, Step> steps_;
    std::map<std::pair<int, VertexId>, BoundaryPoint> sink_out_;
    std::vector<int> lag_;
    int max_lag_ = 0;
};

Transducer parse_transducer(const DirectedGraph& input, const DirectedGraph& output,
                            const std::string& text);
Transducer load_transducer_file(const DirectedGraph& input,
                                const DirectedGraph& output,
                                const std::string& path);

// Convenience: the one-state letter-to-letter code e -> relabel(e), with
// sinks mapped by sink_map (may be empty when the input graph has no sinks).
Transducer one_block_code(const DirectedGraph& input, const DirectedGraph& output,
                          const std::map<std::string, std::string>& edge_map,
                          const std::map<std::string, std::string>& sink_map = {});

}  // namespace drsys

#endif
