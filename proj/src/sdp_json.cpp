#include "packbound/sdp_json.hpp"

#include <cstdio>

namespace packbound {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json entries_to_json(const std::vector<ConstraintEntry>& es) {
    json arr = json::array();
    for (const auto& e : es) arr.push_back({e.block, e.i, e.j, e.value});
    return arr;
}

std::vector<ConstraintEntry> entries_from_json(const json& arr) {
    std::vector<ConstraintEntry> es;
    for (const auto& t : arr) {
        if (!t.is_array() || t.size() != 4) throw SdpDataError("entry triplet must be [block,i,j,value]");
        es.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<double>()});
    }
    return es;
}

json sym_to_json(const SymMatrix& a) {
    json j;
    j["order"] = a.order();
    j["lower"] = a.packed();
    return j;
}

SymMatrix sym_from_json(const json& j) {
    SymMatrix a(j.at("order").get<int>());
    auto v = j.at("lower").get<std::vector<double>>();
    if (v.size() != a.packed().size()) throw SdpDataError("packed triangle size mismatch");
    a.packed() = std::move(v);
    return a;
}

}  // namespace

json problem_to_json(const SdpProblem& p) {
    json j;
    j["sense"] = (p.sense == Sense::Minimize) ? "min" : "max";
    j["blocks"] = p.block_orders;
    j["objective"] = entries_to_json(p.objective);
    json cons = json::array();
    for (const auto& c : p.constraints) {
        json jc;
        jc["rhs"] = c.rhs;
        jc["entries"] = entries_to_json(c.entries);
        cons.push_back(std::move(jc));
    }
    j["constraints"] = std::move(cons);
    return j;
}

SdpProblem problem_from_json(const json& j) {
    SdpProblem p;
    const auto sense = j.at("sense").get<std::string>();
    if (sense == "min")
        p.sense = Sense::Minimize;
    else if (sense == "max")
        p.sense = Sense::Maximize;
    else
        throw SdpDataError("sense must be \"min\" or \"max\"");
    p.block_orders = j.at("blocks").get<std::vector<int>>();
    p.objective = entries_from_json(j.at("objective"));
    for (const auto& jc : j.at("constraints")) {
        SdpConstraint c;
        c.rhs = jc.at("rhs").get<double>();
        c.entries = entries_from_json(jc.at("entries"));
        p.constraints.push_back(std::move(c));
    }
    return p;
}

json solution_to_json(const SdpSolution& s) {
    json j;
    j["status"] = to_string(s.status);
    j["primal_value"] = s.primal_value;
    j["dual_value"] = s.dual_value;
    j["gap"] = s.gap;
    j["primal_residual"] = s.primal_residual;
    j["dual_residual"] = s.dual_residual;
    j["iterations"] = s.iterations;
    j["y"] = s.y;
    json xs = json::array(), zs = json::array();
    for (const auto& xb : s.X) xs.push_back(sym_to_json(xb));
    for (const auto& zb : s.Z) zs.push_back(sym_to_json(zb));
    j["X"] = std::move(xs);
    j["Z"] = std::move(zs);
    return j;
}

SdpSolution solution_from_json(const json& j) {
    SdpSolution s;
    const auto st = j.at("status").get<std::string>();
    if (st == "optimal")
        s.status = SolveStatus::Optimal;
    else if (st == "max_iterations")
        s.status = SolveStatus::MaxIterations;
    else
        s.status = SolveStatus::NumericalFailure;
    s.primal_value = j.at("primal_value").get<double>();
    s.dual_value = j.at("dual_value").get<double>();
    s.gap = j.at("gap").get<double>();
    s.primal_residual = j.at("primal_residual").get<double>();
    s.dual_residual = j.at("dual_residual").get<double>();
    s.iterations = j.at("iterations").get<int>();
    s.y = j.at("y").get<std::vector<double>>();
    for (const auto& jb : j.at("X")) s.X.push_back(sym_from_json(jb));
    for (const auto& jb : j.at("Z")) s.Z.push_back(sym_from_json(jb));
    return s;
}

}  // namespace packbound
