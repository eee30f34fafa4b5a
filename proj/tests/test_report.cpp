#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "vaisman/report.hpp"

using namespace vaisman;
using json = nlohmann::json;

TEST_CASE("verification report JSON: schema, lossless fields, determinism") {
    HermitianModel h = hopf_cone(2);
    VerificationReport rep = run_verification(h, 3, 42, {0.0});

    std::string text = to_json(rep, /*with_timestamp=*/false);
    json j = json::parse(text);
    CHECK(j["schema"] == kSchemaVersion);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["model"] == "hopf:2");
    CHECK(j["seed"] == 42);
    CHECK(j["points"] == 3);
    CHECK(j["pass"] == rep.pass);
    REQUIRE(j["checks"].size() == rep.records.size());
    for (size_t i = 0; i < rep.records.size(); ++i) {
        CHECK(j["checks"][i]["name"] == rep.records[i].name);
        CHECK(j["checks"][i]["max_rel_err"].get<double>() == rep.records[i].max_rel_err);
        CHECK(j["checks"][i]["tolerance"].get<double>() == rep.records[i].tolerance);
        CHECK(j["checks"][i]["pass"] == rep.records[i].pass);
    }
    // overall pass iff all records pass
    bool all = true;
    for (const auto& r : rep.records) all = all && r.pass;
    CHECK(rep.pass == all);

    // byte-identical reruns
    VerificationReport rep2 = run_verification(h, 3, 42, {0.0});
    CHECK(to_json(rep2, false) == text);

    // timestamped output differs only in the timestamp field
    json jt = json::parse(to_json(rep, true));
    jt.erase("timestamp");
    json jn = json::parse(text);
    CHECK(jt == jn);
}

TEST_CASE("curvature report JSON carries the scalar diagnostics") {
    HermitianModel h = hopf_cone(4);
    Rng rng(5);
    Pt<double> x = h.sample(rng);
    CurvatureReport rep = curvature_report(h, x);
    json j = json::parse(to_json(rep, false));
    CHECK(j["s_chern"].get<double>() == doctest::Approx(6.0));
    CHECK(j["scal_direct"].get<double>() == doctest::Approx(10.5));
    CHECK(j["torsion_norm_sq"].get<double>() == doctest::Approx(3.0));
    CHECK(j["zeta"] == 0.0);
    CHECK(j["pass"] == true);
}

TEST_CASE("brieskorn JSON: tuple, exact fractions, verdicts") {
    json j = json::parse(to_json(exotic7_catalog(), "exotic7", false));
    CHECK(j["count"] == 28);
    CHECK(j["results"][0]["tuple"] == json::array({2, 2, 2, 3, 5}));
    CHECK(j["results"][0]["S"] == "61/30");
    CHECK(j["results"][0]["upper"] == "9/5");
    CHECK(j["results"][0]["verdict"] == "catalog-C4");
    CHECK(j["results"][0]["c3"] == "fails-upper");
    CHECK(j["results"][27]["tuple"] == json::array({2, 2, 2, 3, 167}));
}

TEST_CASE("CSV: locale-free headers and values, one row per entry") {
    std::vector<FlowRow> rows(2);
    rows[0] = {0.0, 1.0, 6.0, 10.5, 10.5, 1.0, 1e-14};
    rows[1] = {0.25, 0.5, 12.0, 18.0, 18.0, 0.125, 2e-14};
    std::string csv = to_csv(rows);
    CHECK(csv.rfind("t,alpha,s_C,scal_direct,scal_formula,vol_ratio,residual_flow\n", 0) == 0);
    CHECK(csv.find("0.25,0.5,12,18,18,0.125,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find(';') == std::string::npos);

    std::vector<DistortionRow> gh(1);
    gh[0] = {0.5, 3.0, 4.0, 1.0, true};
    std::string gcsv = to_csv(gh);
    CHECK(gcsv.rfind("t,distortion,bound_rhs,mesh_eps,pass\n", 0) == 0);
    CHECK(gcsv.find("0.5,3,4,1,1") != std::string::npos);
}

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, 12345.678901234567, -7.0 / 16.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
