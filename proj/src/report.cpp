#include "drsys/report.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drsys/cstar.hpp"

namespace drsys {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Json input_digest(const std::string& path, const std::string& contents) {
    return Json{{"path", path}, {"fnv64", hex64(fnv1a64(contents))}};
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Json report_skeleton(const std::string& command, const CommonOptions& common) {
    Json j;
    j["schema"] = "drsys.report.v1";
    j["command"] = command;
    j["seed"] = common.seed;
    j["inputs"] = Json::object();
    j["params"] = Json::object();
    j["result"] = Json::object();
    return j;
}

CommandResult parse_failure(Json j, const std::string& what) {
    j["result"]["error"] = what;
    j["exit_code"] = 2;
    CommandResult r;
    r.exit_code = 2;
    r.report = std::move(j);
    return r;
}

void finalize(CommandResult& r, Json& j, int code, const Timer& timer) {
    j["exit_code"] = code;
    j["timing_ms"] = timer.ms();
    r.exit_code = code;
    r.report = std::move(j);
}

int longest_path_length(const DirectedGraph& g) {
    int best = 0;
    for (int d = 1; d <= g.vertex_count(); ++d)
        if (!all_paths_of_length(g, d).empty()) best = d;
    return best;
}

std::vector<IntegerFn> full_indicator_family(const DirectedGraph& g, int depth) {
    std::vector<IntegerFn> ws{IntegerFn::constant(g, 1)};
    for (const Cylinder& c : cylinder_family(g, depth))
        ws.push_back(IntegerFn::indicator(c));
    return ws;
}

}  // namespace

CommandResult cmd_invariants(const std::string& graph_path, int max_period,
                             const CommonOptions& common) {
    Timer timer;
    Json j = report_skeleton("invariants", common);
    CommandResult r;
    std::string text;
    try {
        text = read_file(graph_path);
        j["inputs"]["graph"] = input_digest(graph_path, text);
        j["params"]["max_period"] = max_period;
        DirectedGraph g = parse_graph(text);
        DRSystem sys(g);
        j["result"]["vertices"] = g.vertex_count();
        j["result"]["edges"] = g.edge_count();
        Json sinks = Json::array();
        for (VertexId v : g.sinks()) sinks.push_back(g.vertex_name(v));
        j["result"]["sinks"] = sinks;
        j["result"]["condition_L"] = sys.is_topologically_free();
        j["result"]["topologically_free"] = sys.is_topologically_free();
        j["result"]["acyclic"] = g.is_acyclic();
        Json counts = Json::array();
        for (int p = 1; p <= max_period; ++p) counts.push_back(sys.periodic_count(p));
        j["result"]["periodic_counts"] = counts;
        Json dom = Json::array();
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            dom.push_back("Z(" + g.edge_name(e) + ")");
        j["result"]["dom_sigma_cylinders"] = dom;
        Json ran = Json::array();
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (!g.in_edges(v).empty()) ran.push_back("Z(" + g.vertex_name(v) + ")");
        j["result"]["ran_sigma_cylinders"] = ran;
        finalize(r, j, 0, timer);
        return r;
    } catch (const ParseError& e) {
        return parse_failure(std::move(j), e.what());
    }
}

CommandResult cmd_check_conjugacy(const std::string& graph_e_path,
                                  const std::string& graph_f_path,
                                  const std::string& map_path,
                                  const std::string& inverse_path, int depth,
                                  const CommonOptions& common) {
    Timer timer;
    Json j = report_skeleton("check-conjugacy", common);
    CommandResult r;
    try {
        std::string text_e = read_file(graph_e_path);
        std::string text_f = read_file(graph_f_path);
        j["inputs"]["graph_e"] = input_digest(graph_e_path, text_e);
        j["inputs"]["graph_f"] = input_digest(graph_f_path, text_f);
        j["params"]["depth"] = depth;
        DirectedGraph ge = parse_graph(text_e);
        DirectedGraph gf = parse_graph(text_f);
        DRSystem se(ge), sf(gf);

        if (map_path.empty()) {
            // no candidate map: decide through conjugacy invariants
            j["params"]["mode"] = "invariants";
            int max_p = std::max(1, ge.vertex_count() + gf.vertex_count() + 2);
            j["params"]["max_period"] = max_p;
            if (ge.sinks().size() != gf.sinks().size()) {
                j["result"]["is_conjugacy"] = false;
                j["result"]["failing_condition"] = "Dom";
                j["result"]["witness"] =
                    "sink point counts " + std::to_string(ge.sinks().size()) + " vs " +
                    std::to_string(gf.sinks().size());
                finalize(r, j, 1, timer);
                return r;
            }
            for (int p = 1; p <= max_p; ++p) {
                if (se.periodic_count(p) != sf.periodic_count(p)) {
                    j["result"]["is_conjugacy"] = false;
                    j["result"]["failing_condition"] = "PeriodicCounts";
                    j["result"]["witness"] =
                        "periodic counts at p=" + std::to_string(p) + ": " +
                        std::to_string(se.periodic_count(p)) + " vs " +
                        std::to_string(sf.periodic_count(p));
                    finalize(r, j, 1, timer);
                    return r;
                }
            }
            j["result"]["is_conjugacy"] = nullptr;
            j["result"]["note"] = "invariants agree; no candidate map supplied";
            finalize(r, j, 3, timer);
            return r;
        }

        j["params"]["mode"] = "map";
        std::string text_t = read_file(map_path);
        std::string text_ti = read_file(inverse_path);
        j["inputs"]["map"] = input_digest(map_path, text_t);
        j["inputs"]["inverse"] = input_digest(inverse_path, text_ti);
        TransducerHomeo h(parse_transducer(ge, gf, text_t),
                          parse_transducer(gf, ge, text_ti));
        const HomeoCertificate& cert = h.verify();
        j["result"]["is_homeomorphism"] = cert.ok;
        j["result"]["product_states"] = cert.reachable_configs;
        if (!cert.ok) {
            j["result"]["offending"] = cert.offending;
            finalize(r, j, 3, timer);
            return r;
        }
        ConjugacyOptions opts;
        opts.preimage_depth = std::min(depth, 2);
        opts.seed = common.seed;
        ConjugacyVerdict v = check_conjugacy(h, opts);
        FunctionRouteReport ps = check_function_route(h, depth);
        j["result"]["is_conjugacy"] = v.is_conjugacy;
        j["result"]["failing_condition"] =
            v.is_conjugacy ? Json(nullptr) : Json(to_string(v.failing_condition));
        j["result"]["witness"] = v.witness;
        j["result"]["conditions"] = Json{{"dom", v.dom_condition},
                                      {"commute", v.commute_condition},
                                      {"preimage_route", v.preimage_route},
                                      {"preimage_depth", v.preimage_depth}};
        if (v.eventual_k_bound)
            j["result"]["uniform_eventual_k"] = *v.eventual_k_bound;
        j["result"]["function_route"] = Json{{"cond_upper", ps.cond_upper},
                                         {"cond_lower", ps.cond_lower},
                                         {"depth", ps.depth},
                                         {"witness", ps.witness}};
        finalize(r, j, v.is_conjugacy ? 0 : 1, timer);
        return r;
    } catch (const ParseError& e) {
        return parse_failure(std::move(j), e.what());
    } catch (const ValidityError& e) {
        return parse_failure(std::move(j), e.what());
    }
}

CommandResult cmd_cocycle_intertwine(const std::string& graph_e_path,
                                     const std::string& graph_f_path,
                                     const std::string& map_path,
                                     const std::string& inverse_path, int depth,
                                     const CommonOptions& common) {
    Timer timer;
    Json j = report_skeleton("cocycle-intertwine", common);
    CommandResult r;
    try {
        std::string text_e = read_file(graph_e_path);
        std::string text_f = read_file(graph_f_path);
        std::string text_t = read_file(map_path);
        std::string text_ti = read_file(inverse_path);
        j["inputs"]["graph_e"] = input_digest(graph_e_path, text_e);
        j["inputs"]["graph_f"] = input_digest(graph_f_path, text_f);
        j["inputs"]["map"] = input_digest(map_path, text_t);
        j["inputs"]["inverse"] = input_digest(inverse_path, text_ti);
        j["params"]["depth"] = depth;
        DirectedGraph ge = parse_graph(text_e);
        DirectedGraph gf = parse_graph(text_f);
        TransducerHomeo h(parse_transducer(ge, gf, text_t),
                          parse_transducer(gf, ge, text_ti));
        const HomeoCertificate& cert = h.verify();
        j["result"]["is_homeomorphism"] = cert.ok;
        if (!cert.ok) {
            j["result"]["offending"] = cert.offending;
            finalize(r, j, 3, timer);
            return r;
        }
        auto bound_fwd = uniform_eventual_bound(h);
        std::unique_ptr<CandidateHomeo> inv = h.inverse_view();
        auto bound_bwd = uniform_eventual_bound(*inv);
        j["result"]["uniform_eventual_k"] =
            bound_fwd ? Json(*bound_fwd) : Json(nullptr);
        j["result"]["uniform_eventual_k_inverse"] =
            bound_bwd ? Json(*bound_bwd) : Json(nullptr);
        if (!bound_fwd || !bound_bwd) {
            j["result"]["ok"] = false;
            j["result"]["witness"] = "legs are not an eventual conjugacy";
            finalize(r, j, 1, timer);
            return r;
        }
        IntertwineReport report = intertwine_check(h, depth);
        j["result"]["ok"] = report.ok;
        if (!report.ok) {
            j["result"]["witness"] = "cyl " + report.witness_g;
            j["result"]["witness_input"] = "cyl " + report.witness_x;
        }
        finalize(r, j, report.ok ? 0 : 1, timer);
        return r;
    } catch (const ParseError& e) {
        return parse_failure(std::move(j), e.what());
    } catch (const ValidityError& e) {
        return parse_failure(std::move(j), e.what());
    }
}

CommandResult cmd_cstar(const std::string& graph_path, const std::string& verify,
                        const std::string& weights_path,
                        const std::string& graph_f_path, const std::string& map_path,
                        const std::string& inverse_path, int depth,
                        const CommonOptions& common) {
    Timer timer;
    Json j = report_skeleton("cstar", common);
    CommandResult r;
    try {
        std::string text = read_file(graph_path);
        j["inputs"]["graph"] = input_digest(graph_path, text);
        j["params"]["verify"] = verify;
        j["params"]["depth"] = depth;
        DirectedGraph ge = parse_graph(text);
        if (!ge.is_acyclic()) {
            j["result"]["error"] = "NotAcyclic";
            finalize(r, j, 1, timer);
            return r;
        }
        DRSystem se(ge);
        FiniteGroupoid groupoid_e{se};
        j["result"]["boundary_points"] = static_cast<int>(groupoid_e.points().size());
        j["result"]["groupoid_elements"] = groupoid_e.size();
        j["result"]["algebra_dimension"] = groupoid_e.algebra_dimension();
        Json blocks = Json::array();
        for (const auto& b : block_decomposition(groupoid_e))
            blocks.push_back(static_cast<int>(b.point_indices.size()));
        j["result"]["block_sizes"] = blocks;

        if (verify == "lemma39") {
            std::vector<IntegerFn> weights;
            int family_depth = longest_path_length(ge);
            if (!weights_path.empty()) {
                std::string wtext = read_file(weights_path);
                j["inputs"]["weights"] = input_digest(weights_path, wtext);
                weights.push_back(parse_integer_function(ge, wtext));
                j["params"]["weights"] = "file";
            } else {
                weights = full_indicator_family(ge, family_depth);
                j["params"]["weights"] = "indicator family";
                j["params"]["family_depth"] = family_depth;
            }
            auto report =
                fixed_point_intersection(groupoid_e, weights, standard_circle_samples(common.seed));
            j["result"]["fixed_dimension"] = static_cast<int>(report.fixed_basis.size());
            j["result"]["unit_dimension"] =
                static_cast<int>(groupoid_e.unit_indices().size());
            j["result"]["is_diagonal"] = report.is_diagonal;
            j["result"]["max_residual"] = report.max_residual;
            finalize(r, j, report.is_diagonal ? 0 : 1, timer);
            return r;
        }
        if (verify == "prop312") {
            if (graph_f_path.empty() || map_path.empty() || inverse_path.empty())
                return parse_failure(std::move(j),
                                     "prop312 needs --graphF, --map and --inverse");
            std::string text_f = read_file(graph_f_path);
            std::string text_t = read_file(map_path);
            std::string text_ti = read_file(inverse_path);
            j["inputs"]["graph_f"] = input_digest(graph_f_path, text_f);
            j["inputs"]["map"] = input_digest(map_path, text_t);
            j["inputs"]["inverse"] = input_digest(inverse_path, text_ti);
            DirectedGraph gf = parse_graph(text_f);
            if (!gf.is_acyclic()) {
                j["result"]["error"] = "NotAcyclic";
                finalize(r, j, 1, timer);
                return r;
            }
            TransducerHomeo h(parse_transducer(ge, gf, text_t),
                              parse_transducer(gf, ge, text_ti));
            if (!h.verify().ok) {
                j["result"]["error"] = "map is not a homeomorphism";
                j["result"]["offending"] = h.verify().offending;
                finalize(r, j, 3, timer);
                return r;
            }
            DRSystem sf(gf);
            FiniteGroupoid groupoid_f{sf};
            std::vector<int> perm;
            try {
                perm = leg_permutation(h, groupoid_e, groupoid_f, true);
            } catch (const NotConjugacy& e) {
                j["result"]["error"] = e.what();
                finalize(r, j, 1, timer);
                return r;
            }
            auto iso = verify_star_isomorphism(perm, groupoid_e, groupoid_f);
            auto inter = verify_intertwining(h, perm, groupoid_e, groupoid_f, depth,
                                             standard_circle_samples(common.seed));
            j["result"]["star_isomorphism"] =
                Json{{"multiplicative", iso.multiplicative},
                     {"star_preserving", iso.star_preserving},
                     {"diagonal_preserved", iso.diagonal_preserved},
                     {"max_residual", iso.max_residual}};
            j["result"]["intertwining"] = Json{{"ok", inter.ok},
                                               {"max_residual", inter.max_residual},
                                               {"witness", inter.witness}};
            bool all = iso.multiplicative && iso.star_preserving &&
                       iso.diagonal_preserved && inter.ok;
            finalize(r, j, all ? 0 : 1, timer);
            return r;
        }
        return parse_failure(std::move(j), "unknown --verify mode '" + verify + "'");
    } catch (const ParseError& e) {
        return parse_failure(std::move(j), e.what());
    } catch (const ValidityError& e) {
        return parse_failure(std::move(j), e.what());
    }
}

int emit_result(const CommandResult& result, const CommonOptions& common) {
    if (!common.json_path.empty()) {
        std::ofstream out(common.json_path);
        out << result.report.dump(2) << "\n";
    }
    if (!common.quiet) std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
}

}  // namespace drsys
