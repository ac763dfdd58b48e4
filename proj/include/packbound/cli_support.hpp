#pragma once

#include <map>
#include <string>
#include <vector>

#include "packbound/sdp.hpp"

namespace packbound {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
    enum class Command { Theta, Cayley, Delsarte, Sphere, Verify, Recheck };
    Command command = Command::Theta;
    std::vector<std::string> inputs;
    SolveSettings solver;
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::Json;
};

/// RFC-4180-style CSV: header row, CRLF line endings, reals at 17 significant
/// digits. Cells needing quotes are quoted.
std::string emit_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

/// Key/value config file: one "key = value" per line, '#' comments, blank
/// lines ignored. Recognized keys: gap_tol, feas_tol, max_iter, format.
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config(const std::map<std::string, std::string>& kv, SolveSettings& settings,
                  OutputFormat& format);

/// Dimension sweep spec: "1-8" or "1,2,3,8" (sorted, deduplicated).
std::vector<int> parse_dim_spec(const std::string& spec);

/// Sweep parallelism cap from PACKBOUND_THREADS (>= 1).
int sweep_threads(int cells);

}  // namespace packbound
