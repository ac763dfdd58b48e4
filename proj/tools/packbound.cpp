#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "packbound/cayley.hpp"
#include "packbound/cli_support.hpp"
#include "packbound/graph.hpp"
#include "packbound/sdp_json.hpp"
#include "packbound/sphere.hpp"
#include "packbound/theta.hpp"
#include "packbound/verifier.hpp"

namespace {

using nlohmann::json;
using namespace packbound;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerification = 4;

struct ExitWith {
    int code;
    std::string category;
    std::string detail;
};

void write_artifact(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ExitWith{kExitParse, "io", "cannot write output file: " + path};
    out << text;
}

void write_json(const std::string& path, const json& j) {
    write_artifact(path, j.dump(2) + "\n");
}

json solver_diag(const SdpSolution& s) {
    json j;
    j["status"] = to_string(s.status);
    j["iterations"] = s.iterations;
    j["primal_value"] = s.primal_value;
    j["dual_value"] = s.dual_value;
    j["gap"] = s.gap;
    j["primal_residual"] = s.primal_residual;
    j["dual_residual"] = s.dual_residual;
    j["schur_condition"] = s.schur_condition;
    if (!s.failure_reason.empty()) j["reason"] = s.failure_reason;
    return j;
}

void require_optimal(const SdpSolution& s) {
    if (s.status != SolveStatus::Optimal)
        throw ExitWith{kExitSolver, "solver", to_string(s.status) +
                       (s.failure_reason.empty() ? "" : (": " + s.failure_reason))};
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stoi(part));
        } catch (...) {
            throw ExitWith{kExitParse, "parse", "bad integer list element: " + part};
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (...) {
            throw ExitWith{kExitParse, "parse", "bad number list element: " + part};
        }
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ExitWith{kExitParse, "io", "cannot open file: " + path};
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ExitWith{kExitParse, "parse", std::string("bad JSON in ") + path + ": " + e.what()};
    }
}

struct Common {
    std::string config_path;
    std::string format_name;
    RunConfig cfg;

    void finalize(RunConfig::Command command, std::vector<std::string> inputs,
                  bool format_flag_given) {
        cfg.command = command;
        cfg.inputs = std::move(inputs);
        if (!config_path.empty())
            apply_config(parse_config_file(config_path), cfg.solver, cfg.format);
        if (format_flag_given) {  // explicit flag overrides the config file
            if (format_name == "csv")
                cfg.format = OutputFormat::Csv;
            else if (format_name == "json")
                cfg.format = OutputFormat::Json;
            else
                throw CliError("format must be json or csv");
        }
        if (!(cfg.solver.gap_tol > 0.0) || !(cfg.solver.feas_tol > 0.0) || cfg.solver.max_iter < 1)
            throw CliError("tolerances must be > 0 and max_iter >= 1");
    }
};

void maybe_dump_sdp(const std::string& path, const SdpProblem& p, const SdpSolution& s) {
    if (path.empty()) return;
    json j;
    j["problem"] = problem_to_json(p);
    j["solution"] = solution_to_json(s);
    write_json(path, j);
}

std::string single_value_csv(const std::string& name, double value) {
    return emit_table({name}, {{value}});
}

int run_theta(const RunConfig& cfg, const std::string& graph_path, const std::string& dump_path) {
    const WeightedGraph g = parse_graph_file(graph_path);
    const ThetaSdp sdp = build_theta_sdp(g);
    const ThetaResult res = theta_prime(g, cfg.solver);
    maybe_dump_sdp(dump_path, sdp.problem, res.solution);
    require_optimal(res.solution);

    if (cfg.format == OutputFormat::Csv) {
        write_artifact(cfg.output_path, single_value_csv("value", res.value));
        return kExitOk;
    }
    json j;
    j["command"] = "theta";
    j["value"] = res.value;
    j["certificate"] = {{"M", res.certificate.M},
                        {"psd_margin", res.certificate.psd_margin},
                        {"max_nonedge_violation", res.certificate.max_nonedge_violation}};
    j["solver"] = solver_diag(res.solution);
    write_json(cfg.output_path, j);
    return kExitOk;
}

int run_cayley(const RunConfig& cfg, int n, const std::string& sigma_list,
               const std::string& dump_path) {
    const CayleySpec spec(FiniteAbelianGroup::cyclic(n), parse_int_list(sigma_list));
    const CayleyThetaResult res = solve_cayley_theta(spec, cfg.solver);
    maybe_dump_sdp(dump_path, cayley_theta_lp(spec), res.solution);
    require_optimal(res.solution);

    if (cfg.format == OutputFormat::Csv) {
        write_artifact(cfg.output_path, single_value_csv("value", res.value));
        return kExitOk;
    }
    json j;
    j["command"] = "cayley";
    j["n"] = n;
    j["sigma"] = spec.sigma;
    j["value"] = res.value;
    j["fhat"] = res.fhat;
    j["dual_certificate"] = res.dual;
    j["solver"] = solver_diag(res.solution);
    write_json(cfg.output_path, j);
    return kExitOk;
}

int run_delsarte(const RunConfig& cfg, int length, int distance, const std::string& dump_path) {
    const DelsarteResult res = delsarte(length, distance, cfg.solver);
    if (!dump_path.empty()) maybe_dump_sdp(dump_path, build_delsarte_lp(length, distance).problem, res.solution);
    require_optimal(res.solution);

    if (cfg.format == OutputFormat::Csv) {
        write_artifact(cfg.output_path, single_value_csv("value", res.value));
        return kExitOk;
    }
    json j;
    j["command"] = "delsarte";
    j["length"] = length;
    j["distance"] = distance;
    j["value"] = res.value;
    j["fhat_by_weight"] = res.fhat_by_weight;
    j["solver"] = solver_diag(res.solution);
    write_json(cfg.output_path, j);
    return kExitOk;
}

int run_sphere(const RunConfig& cfg, int dim, int degree, const std::string& basis_name,
               const std::string& dump_path, const std::string& emit_f_path, bool table,
               const std::string& dims_spec) {
    SphereSettings settings;
    settings.solver = cfg.solver;
    if (basis_name == "monomial")
        settings.basis = SphereBasis::Monomial;
    else if (basis_name == "laguerre")
        settings.basis = SphereBasis::ScaledLaguerre;
    else
        throw ExitWith{kExitParse, "parse", "basis must be laguerre or monomial"};

    if (!table && dim < 1)
        throw ExitWith{kExitParse, "parse", "sphere: --dim must be >= 1"};
    if (table) {
        if (dims_spec.empty() && dim < 1)
            throw ExitWith{kExitParse, "parse", "sphere --table: need --dims or --dim"};
        const std::vector<int> dims =
            parse_dim_spec(dims_spec.empty() ? std::to_string(dim) : dims_spec);
        std::vector<SphereBoundResult> results(dims.size());
        const int nthreads = sweep_threads(static_cast<int>(dims.size()));
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= dims.size()) return;
                results[k] = sphere_bound(dims[k], degree, settings);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (!results[k].verified) {
                if (results[k].solution.status != SolveStatus::Optimal)
                    require_optimal(results[k].solution);
                throw ExitWith{kExitVerification, "verification",
                               "grid check failed for dim " + std::to_string(dims[k])};
            }
            rows.push_back({static_cast<double>(dims[k]), static_cast<double>(degree),
                            results[k].bound});
        }
        write_artifact(cfg.output_path, emit_table({"dim", "degree", "bound"}, rows));
        return kExitOk;
    }

    const SphereBoundResult res = sphere_bound(dim, degree, settings);
    if (!dump_path.empty()) {
        const SphereSdp sdp = build_sphere_sdp_full(dim, degree, settings.basis, res.radius);
        maybe_dump_sdp(dump_path, sdp.problem, res.solution);
    }
    if (!res.verified) {
        // A grid-verified f is a valid bound even if the solver stalled; with
        // neither optimality nor verification there is nothing to report.
        if (res.solution.status != SolveStatus::Optimal) require_optimal(res.solution);
        throw ExitWith{kExitVerification, "verification",
                       "solved function violates grid checks at tolerance " +
                           format_double(settings.check_tol)};
    }
    if (!emit_f_path.empty()) {
        json cert = certificate_to_json(MatrixRadialFunction::single(res.f));
        cert["radius"] = res.radius;
        write_json(emit_f_path, cert);
    }

    if (cfg.format == OutputFormat::Csv) {
        write_artifact(cfg.output_path, single_value_csv("bound", res.bound));
        return kExitOk;
    }
    json j;
    j["command"] = "sphere";
    j["n"] = dim;
    j["d"] = degree;
    j["basis"] = basis_name;
    j["bound"] = res.bound;
    j["radius"] = res.radius;
    json cert = certificate_to_json(MatrixRadialFunction::single(res.f));
    cert["radius"] = res.radius;
    j["f"] = std::move(cert);
    j["grid"] = {{"min_p", res.report.min_p},
                 {"max_f_tail", res.report.max_f_tail},
                 {"a0_margin", res.report.a0_margin},
                 {"t_max", res.report.t_max},
                 {"r_max", res.report.r_max},
                 {"points", res.report.points}};
    j["solver"] = solver_diag(res.solution);
    write_json(cfg.output_path, j);
    return kExitOk;
}

int run_verify(const RunConfig& cfg, const std::string& f_path, const std::string& radii_list,
               double tol) {
    const json cert_json = load_json_file(f_path);
    const MatrixRadialFunction f = certificate_from_json(cert_json);
    // Explicit --radii wins; otherwise use the radii recorded in the file.
    const SphereSystem sys(radii_list.empty() ? certificate_radii(cert_json, f.N)
                                              : parse_double_list(radii_list));
    VerifySettings settings;
    settings.tol = tol;
    const VerifyReport rep = verify_conditions(f, sys, settings);

    json j;
    j["command"] = "verify";
    j["certified"] = rep.certified();
    j["margins"] = {{"max_separation_value", rep.max_separation_value},
                    {"min_gram_eig", rep.min_gram_eig},
                    {"min_type_eig", rep.min_type_eig}};
    j["tol"] = rep.tol;
    j["range"] = rep.range;
    j["points"] = rep.points;
    if (rep.certified()) j["bound"] = density_bound_from_f(f, sys, settings);
    write_json(cfg.output_path, j);
    if (!rep.certified())
        throw ExitWith{kExitVerification, "verification", "certificate margins exceed tolerance"};
    return kExitOk;
}

int run_recheck(const RunConfig& cfg, const std::string& dump_path, double tol) {
    const json j = load_json_file(dump_path);
    const SdpProblem p = problem_from_json(j.at("problem"));
    const SdpSolution s = solution_from_json(j.at("solution"));
    const CheckReport rep = check_solution(p, s, tol);

    json out;
    out["command"] = "recheck";
    out["primal_residual"] = rep.primal_residual;
    out["dual_residual"] = rep.dual_residual;
    out["gap"] = rep.gap;
    out["primal_value"] = rep.primal_value;
    out["dual_value"] = rep.dual_value;
    out["primal_psd_margins"] = rep.primal_psd_margins;
    out["dual_psd_margins"] = rep.dual_psd_margins;
    const bool ok = (!rep.has_primal || rep.primal_feasible(tol)) &&
                    (!rep.has_dual || rep.dual_feasible(tol));
    out["ok"] = ok;
    write_json(cfg.output_path, out);
    if (!ok) throw ExitWith{kExitVerification, "verification", "recheck found violations"};
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"packbound: certified bounds for weighted independence numbers and sphere packings"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--config", common.config_path, "key=value config file");
    app.add_option("--gap-tol", common.cfg.solver.gap_tol, "solver duality-gap tolerance");
    app.add_option("--feas-tol", common.cfg.solver.feas_tol, "solver feasibility tolerance");
    app.add_option("--max-iter", common.cfg.solver.max_iter, "solver iteration budget");
    app.add_option("-o,--output", common.cfg.output_path, "output path (default stdout)");
    app.add_option("--format", common.format_name, "json or csv");
    app.fallthrough();

    std::string graph_path, dump_path, sigma_list, basis_name = "laguerre";
    std::string emit_f_path, f_path, radii_list, dims_spec, recheck_path;
    int cayley_n = 0, length = 0, distance = 0, dim = 0, degree = 0;
    double verify_tol = 1e-6, recheck_tol = 1e-6;
    bool table = false;

    auto* theta_cmd = app.add_subcommand("theta", "theta-prime bound for a graph file");
    theta_cmd->add_option("file", graph_path, "graph file (\"n m\" header, edge lines, optional weights)")
        ->required();
    theta_cmd->add_option("--dump-sdp", dump_path, "write problem+solution JSON");

    auto* cayley_cmd = app.add_subcommand("cayley", "Fourier-domain LP for a cyclic Cayley graph");
    cayley_cmd->add_option("--n", cayley_n, "group order")->required();
    cayley_cmd->add_option("--sigma", sigma_list, "connection set, e.g. 1,4,13,16")->required();
    cayley_cmd->add_option("--dump-sdp", dump_path, "write problem+solution JSON");

    auto* delsarte_cmd = app.add_subcommand("delsarte", "LP bound for binary codes");
    delsarte_cmd->add_option("--length", length, "code length m")->required();
    delsarte_cmd->add_option("--distance", distance, "minimum distance d")->required();
    delsarte_cmd->add_option("--dump-sdp", dump_path, "write problem+solution JSON");

    auto* sphere_cmd = app.add_subcommand("sphere", "sphere-packing density bound");
    sphere_cmd->add_option("--dim", dim, "dimension (or use --dims with --table)");
    sphere_cmd->add_option("--degree", degree, "polynomial degree parameter d")->required();
    sphere_cmd->add_option("--basis", basis_name, "laguerre or monomial");
    sphere_cmd->add_option("--dump-sdp", dump_path, "write problem+solution JSON");
    sphere_cmd->add_option("--emit-f", emit_f_path, "write the solved f certificate JSON");
    sphere_cmd->add_flag("--table", table, "sweep dimensions, emit CSV (dim, degree, bound)");
    sphere_cmd->add_option("--dims", dims_spec, "sweep dimensions, e.g. 1-8 or 1,2,3,8");

    auto* verify_cmd = app.add_subcommand("verify", "check a density certificate");
    verify_cmd->add_option("--f", f_path, "certificate JSON file")->required();
    verify_cmd->add_option("--radii", radii_list,
                           "sphere radii, e.g. 1.0 or 1.0,0.5 (default: radii from the file)");
    verify_cmd->add_option("--tol", verify_tol, "margin tolerance");

    auto* recheck_cmd = app.add_subcommand("recheck", "re-check a --dump-sdp artifact offline");
    recheck_cmd->add_option("file", recheck_path, "dump JSON file")->required();
    recheck_cmd->add_option("--tol", recheck_tol, "feasibility tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: parse: " << e.what() << std::endl;
        return kExitParse;
    }

    try {
        using Cmd = RunConfig::Command;
        const bool fmt_flag = app.count("--format") > 0;
        if (theta_cmd->parsed()) {
            common.finalize(Cmd::Theta, {graph_path}, fmt_flag);
            return run_theta(common.cfg, graph_path, dump_path);
        }
        if (cayley_cmd->parsed()) {
            common.finalize(Cmd::Cayley, {}, fmt_flag);
            return run_cayley(common.cfg, cayley_n, sigma_list, dump_path);
        }
        if (delsarte_cmd->parsed()) {
            common.finalize(Cmd::Delsarte, {}, fmt_flag);
            return run_delsarte(common.cfg, length, distance, dump_path);
        }
        if (sphere_cmd->parsed()) {
            common.finalize(Cmd::Sphere, {}, fmt_flag);
            return run_sphere(common.cfg, dim, degree, basis_name, dump_path, emit_f_path, table,
                              dims_spec);
        }
        if (verify_cmd->parsed()) {
            common.finalize(Cmd::Verify, {f_path}, fmt_flag);
            return run_verify(common.cfg, f_path, radii_list, verify_tol);
        }
        if (recheck_cmd->parsed()) {
            common.finalize(Cmd::Recheck, {recheck_path}, fmt_flag);
            return run_recheck(common.cfg, recheck_path, recheck_tol);
        }
        std::cerr << "error: parse: no subcommand" << std::endl;
        return kExitParse;
    } catch (const ExitWith& e) {
        std::cerr << "error: " << e.category << ": " << e.detail << std::endl;
        return e.code;
    } catch (const NotCertified& e) {
        std::cerr << "error: verification: " << e.what() << std::endl;
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: data: " << e.what() << std::endl;
        return kExitParse;
    }
}
