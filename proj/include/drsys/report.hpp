#ifndef DRSYS_REPORT_HPP
#define DRSYS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace drsys {

using Json = nlohmann::ordered_json;

struct CommandResult {
    int exit_code = 0;
    Json report;
};

struct CommonOptions {
    std::uint64_t seed = 0;
    bool quiet = false;
    std::string json_path;
};

// drsys invariants <graph> [--max-period P]
CommandResult cmd_invariants(const std::string& graph_path, int max_period,
                             const CommonOptions& common);

// drsys check-conjugacy <graphE> <graphF> [--map T --inverse Ti] [--depth d]
// exit 0 conjugacy, 1 verified non-conjugacy, 2 parse error, 3 inconclusive
CommandResult cmd_check_conjugacy(const std::string& graph_e_path,
                                  const std::string& graph_f_path,
                                  const std::string& map_path,
                                  const std::string& inverse_path, int depth,
                                  const CommonOptions& common);

// drsys cocycle-intertwine <graphE> <graphF> --map T --inverse Ti [--depth d]
CommandResult cmd_cocycle_intertwine(const std::string& graph_e_path,
                                     const std::string& graph_f_path,
                                     const std::string& map_path,
                                     const std::string& inverse_path, int depth,
                                     const CommonOptions& common);

// drsys cstar <graph> --verify lemma39|prop312 [--weights W]
//             [--graphF F --map T --inverse Ti] [--depth d]
CommandResult cmd_cstar(const std::string& graph_path, const std::string& verify,
                        const std::string& weights_path,
                        const std::string& graph_f_path, const std::string& map_path,
                        const std::string& inverse_path, int depth,
                        const CommonOptions& common);

// Writes/prints the report per the common options and returns the exit code.
int emit_result(const CommandResult& result, const CommonOptions& common);

}  // namespace drsys

#endif
