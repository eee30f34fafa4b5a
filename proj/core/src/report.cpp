#include "vaisman/report.hpp"

#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace vaisman {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

ordered_json check_json(const IdentityRecord& r) {
    ordered_json j;
    j["name"] = r.name;
    if (!r.param.empty()) j["param"] = r.param;
    j["max_rel_err"] = r.max_rel_err;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

ordered_json header(bool with_timestamp) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    if (with_timestamp) j["timestamp"] = utc_timestamp();
    return j;
}

}  // namespace

std::string to_json(const VerificationReport& rep, bool with_timestamp) {
    ordered_json j = header(with_timestamp);
    j["model"] = rep.model;
    j["seed"] = rep.seed;
    j["points"] = rep.points;
    j["checks"] = ordered_json::array();
    for (const auto& r : rep.records) j["checks"].push_back(check_json(r));
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
}

std::string to_json(const CurvatureReport& rep, bool with_timestamp) {
    ordered_json j = header(with_timestamp);
    j["model"] = rep.model;
    j["zeta"] = rep.zeta;
    j["point"] = rep.point;
    j["s_chern"] = rep.s_chern;
    j["scal_direct"] = rep.scal_direct;
    j["scal_via_relation"] = rep.scal_via_relation;
    j["torsion_norm_sq"] = rep.torsion_sq;
    j["chern_ricci_norm"] = rep.chern_ricci_norm;
    j["lc_ricci_norm"] = rep.lc_ricci_norm;
    j["djtheta_norm"] = rep.djtheta_norm;
    j["ricci_eigenvalues"] = {rep.ric_eigen_min, rep.ric_eigen_max};
    j["checks"] = ordered_json::array();
    for (const auto& r : rep.checks) j["checks"].push_back(check_json(r));
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
}

std::string to_json(const std::vector<BrieskornTuple>& tuples, const std::string& command,
                    bool with_timestamp) {
    ordered_json j = header(with_timestamp);
    j["command"] = command;
    j["count"] = tuples.size();
    j["results"] = ordered_json::array();
    for (const auto& t : tuples) {
        ordered_json e;
        e["tuple"] = t.exponents;
        e["S"] = t.sum_inv.str();
        e["upper"] = t.upper.str();
        e["verdict"] = t.verdict;
        if (t.c3 != t.verdict) e["c3"] = t.c3;
        j["results"].push_back(e);
    }
    return j.dump(2) + "\n";
}

std::string to_json(const CurvatureProfile& p, bool with_timestamp) {
    ordered_json j = header(with_timestamp);
    j["n"] = p.n;
    j["zeta_flat"] = p.zeta_flat;
    j["zeta_zero"] = p.zeta_zero;
    j["zeta_max"] = p.zeta_max;
    j["scal_sup"] = p.scal_sup;
    j["T"] = p.T;
    j["t_zero"] = p.t_zero;
    return j.dump(2) + "\n";
}

std::string to_csv(const std::vector<FlowRow>& rows) {
    std::string out = "t,alpha,s_C,scal_direct,scal_formula,vol_ratio,residual_flow\n";
    for (const auto& r : rows) {
        out += format_double(r.t) + "," + format_double(r.alpha) + "," + format_double(r.s_chern) +
               "," + format_double(r.scal_direct) + "," + format_double(r.scal_formula) + "," +
               format_double(r.vol_ratio) + "," + format_double(r.residual_flow) + "\n";
    }
    return out;
}

std::string to_csv(const std::vector<DistortionRow>& rows) {
    std::string out = "t,distortion,bound_rhs,mesh_eps,pass\n";
    for (const auto& r : rows) {
        out += format_double(r.t) + "," + format_double(r.distortion) + "," +
               format_double(r.bound_rhs) + "," + format_double(r.mesh_eps) + "," +
               (r.pass ? "1" : "0") + "\n";
    }
    return out;
}

std::string to_csv(const std::vector<ScalRow>& rows) {
    std::string out = "zeta,s_C,torsion_sq,scal_direct,scal_formula,scal_via_relation,lc_ricci_norm\n";
    for (const auto& r : rows) {
        out += format_double(r.zeta) + "," + format_double(r.s_chern) + "," +
               format_double(r.torsion_sq) + "," + format_double(r.scal_direct) + "," +
               format_double(r.scal_formula) + "," + format_double(r.scal_via_relation) + "," +
               format_double(r.lc_ricci_norm) + "\n";
    }
    return out;
}

}  // namespace vaisman
