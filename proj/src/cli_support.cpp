#include "packbound/cli_support.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "packbound/sdp_json.hpp"

namespace packbound {

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string emit_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(header[i]);
    }
    out += "\r\n";
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw CliError("emit_table: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += "\r\n";
    }
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto ltrim = line.find_first_not_of(" \t\r");
        if (ltrim == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CliError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw CliError("config line " + std::to_string(lineno) + ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, SolveSettings& settings,
                  OutputFormat& format) {
    for (const auto& [key, value] : kv) {
        try {
            if (key == "gap_tol")
                settings.gap_tol = std::stod(value);
            else if (key == "feas_tol")
                settings.feas_tol = std::stod(value);
            else if (key == "max_iter")
                settings.max_iter = std::stoi(value);
            else if (key == "format") {
                if (value == "json")
                    format = OutputFormat::Json;
                else if (value == "csv")
                    format = OutputFormat::Csv;
                else
                    throw CliError("format must be json or csv");
            } else
                throw CliError("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw CliError("config key " + key + ": bad value \"" + value + "\"");
        }
    }
    if (!(settings.gap_tol > 0.0) || !(settings.feas_tol > 0.0) || settings.max_iter < 1)
        throw CliError("config: tolerances must be > 0 and max_iter >= 1");
}

std::vector<int> parse_dim_spec(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dash = part.find('-');
        try {
            if (dash != std::string::npos && dash > 0) {
                const int lo = std::stoi(part.substr(0, dash));
                const int hi = std::stoi(part.substr(dash + 1));
                if (lo < 1 || hi < lo) throw CliError("bad dimension range: " + part);
                for (int k = lo; k <= hi; ++k) dims.push_back(k);
            } else {
                dims.push_back(std::stoi(part));
            }
        } catch (const std::invalid_argument&) {
            throw CliError("bad dimension spec: " + part);
        }
    }
    if (dims.empty()) throw CliError("empty dimension spec");
    for (int d : dims)
        if (d < 1) throw CliError("dimensions must be >= 1");
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return dims;
}

int sweep_threads(int cells) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("PACKBOUND_THREADS")) {
        try {
            cap = std::max(1, std::stoi(env));
        } catch (...) {
            throw CliError("PACKBOUND_THREADS must be an integer");
        }
    }
    return std::max(1, std::min(cap, cells));
}

}  // namespace packbound
