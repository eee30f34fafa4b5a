// Command-line front end: batch verification of the curvature identities and
// report emission for the flow, collapse, and Brieskorn components.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vaisman/report.hpp"

using namespace vaisman;

namespace {

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start, end, step;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &end, &step) != 3 || step <= 0.0)
            throw std::invalid_argument("grid must be start:end:step with step > 0");
        for (double t = start; t <= end + 1e-12; t += step) out.push_back(t);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("bad number in list: '" + tok + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty value list");
    return out;
}

std::vector<long long> parse_exponents(const std::string& text) {
    std::vector<long long> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("bad exponent: '" + tok + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

void emit(const std::string& text, const std::string& out_file) {
    if (out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_file);
    f << text;
}

// rows -> JSON array with named fields, for commands whose default is CSV
template <class Rows>
std::string rows_to_json(const Rows& rows, const std::string& csv) {
    // reuse the CSV header for field names
    std::istringstream head(csv.substr(0, csv.find('\n')));
    std::vector<std::string> names;
    std::string tok;
    while (std::getline(head, tok, ',')) names.push_back(tok);
    std::istringstream body(csv);
    std::string line;
    std::getline(body, line);
    std::string out = "[\n";
    bool first = true;
    while (std::getline(body, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::string obj = "  {";
        size_t i = 0;
        while (std::getline(ls, cell, ',')) {
            if (i) obj += ", ";
            obj += "\"" + names[i] + "\": " + cell;
            ++i;
        }
        obj += "}";
        out += (first ? "" : ",\n") + obj;
        first = false;
    }
    (void)rows;
    return out + "\n]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vaismanlab: numerical verification of Vaisman-metric curvature identities\n"
                 "on suspensions of Sasaki-Einstein manifolds"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string model_str = "hopf:3";
    uint64_t seed = 7;
    double tol = kTolIdentity;
    std::string out_file;
    bool want_json = false, want_csv = false;
    app.add_option("--model", model_str, "model descriptor: hopf:<n> or lens:<m>:<l>");
    app.add_option("--seed", seed, "seed for sample points");
    app.add_option("--tol", tol, "tolerance for AD-exact identities");
    app.add_option("--out", out_file, "write output to a file instead of stdout");
    app.add_flag("--json", want_json, "emit JSON");
    app.add_flag("--csv", want_csv, "emit CSV where available");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run the full identity suite");
    int points = 20;
    std::string zetas_str = "-0.5,flat,0,1";
    cmd_verify->add_option("--points", points, "sample points per identity");
    cmd_verify->add_option("--zetas", zetas_str, "family parameters ('flat' = -1/n)");

    // curvature
    auto* cmd_curv = app.add_subcommand("curvature", "pointwise curvature report");
    double zeta = 0.0;
    cmd_curv->add_option("--zeta", zeta, "family parameter (> -1)");

    // scal-table
    auto* cmd_scal = app.add_subcommand("scal-table", "scalar curvatures over a zeta grid");
    std::string zeta_grid = "-0.9,-0.5,-0.25,0,1";
    cmd_scal->add_option("--zeta", zeta_grid, "zeta values (list or start:end:step)");

    // flow
    auto* cmd_flow = app.add_subcommand("flow", "Chern-Ricci flow diagnostics");
    std::string t_grid_flow = "0:0.45:0.05";
    cmd_flow->add_option("--t", t_grid_flow, "flow times (list or start:end:step)");

    // gh
    auto* cmd_gh = app.add_subcommand("gh", "Gromov-Hausdorff collapse diagnostics");
    double c_param = std::exp(1.0);
    int samples = 4000, knn = 12, sources = 256;
    std::string t_grid_gh = "0.1,0.3,0.45";
    cmd_gh->add_option("--c", c_param, "suspension parameter (> 1)");
    cmd_gh->add_option("--samples", samples, "sample-cloud size");
    cmd_gh->add_option("--k", knn, "neighbors per point");
    cmd_gh->add_option("--sources", sources, "shortest-path sources");
    cmd_gh->add_option("--t", t_grid_gh, "flow times");
    double unitary_phase = 0.0;
    cmd_gh->add_option("--unitary-phase", unitary_phase, "deck automorphism phase (radians)");

    // brieskorn
    auto* cmd_bk = app.add_subcommand("brieskorn", "Brieskorn-Pham admissibility arithmetic");
    cmd_bk->require_subcommand(1);
    auto* bk_check = cmd_bk->add_subcommand("check", "check one exponent tuple");
    std::string tuple_str;
    bk_check->add_option("exponents", tuple_str, "comma-separated exponents, e.g. 2,2,2,3,5")
        ->required();
    auto* bk_scan = cmd_bk->add_subcommand("scan", "enumerate admissible tuples");
    int scan_n = 4;
    long long scan_max = 8;
    bk_scan->add_option("--n", scan_n, "link dimension parameter (tuples of length n+1)");
    bk_scan->add_option("--max", scan_max, "largest exponent");
    auto* bk_exotic = cmd_bk->add_subcommand("exotic7", "the 28 exotic 7-sphere tuples");
    auto* bk_profile = cmd_bk->add_subcommand("profile", "curvature thresholds for dimension n");
    int profile_n = 4;
    bk_profile->add_option("--n", profile_n, "complex dimension of the suspension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_verify->parsed()) {
            HermitianModel model = parse_model(model_str);
            std::vector<double> zetas;
            {
                size_t pos = 0;
                while (pos < zetas_str.size()) {
                    size_t next = zetas_str.find(',', pos);
                    std::string tok = zetas_str.substr(pos, next == std::string::npos ? next : next - pos);
                    if (tok == "flat")
                        zetas.push_back(zeta_flat(model.n));
                    else
                        zetas.push_back(std::stod(tok));
                    if (next == std::string::npos) break;
                    pos = next + 1;
                }
            }
            VerificationReport rep =
                run_verification(model, points, seed, zetas, tol, std::max(kTolOracle, tol));
            emit(to_json(rep), out_file);
            return rep.pass ? 0 : 1;
        }
        if (cmd_curv->parsed()) {
            HermitianModel model = zeta_family(parse_model(model_str), zeta);
            Rng rng(seed);
            Pt<double> x = model.sample(rng);
            CurvatureReport rep = curvature_report(model, x, tol, std::max(kTolOracle, tol));
            emit(to_json(rep), out_file);
            return rep.pass ? 0 : 1;
        }
        if (cmd_scal->parsed()) {
            HermitianModel base = parse_model(model_str);
            Rng rng(seed);
            Pt<double> x = base.sample(rng);
            std::vector<ScalRow> rows;
            for (double z : parse_grid(zeta_grid)) {
                HermitianModel mz = zeta_family(base, z);
                ScalRow row;
                row.zeta = z;
                row.s_chern = chern_scalar(mz, x);
                row.torsion_sq = torsion_norm_sq(mz, x);
                row.scal_direct = riemann_scalar_direct(mz, x);
                row.scal_formula = scal_formula(base.n, z);
                row.scal_via_relation = riemann_scalar_via_relation(mz, x);
                MetricAtPoint m = metric_at(mz, x);
                row.lc_ricci_norm = std::sqrt(std::abs(norm_sq(lc_ricci(mz, x), m)));
                rows.push_back(row);
            }
            std::string csv = to_csv(rows);
            emit(want_json ? rows_to_json(rows, csv) : csv, out_file);
            return 0;
        }
        if (cmd_flow->parsed()) {
            HermitianModel base = parse_model(model_str);
            std::vector<FlowRow> rows = flow_diagnostics(base, parse_grid(t_grid_flow), seed);
            std::string csv = to_csv(rows);
            emit(want_json ? rows_to_json(rows, csv) : csv, out_file);
            return 0;
        }
        if (cmd_gh->parsed()) {
            HermitianModel base = parse_model(model_str);
            if (unitary_phase != 0.0) {
                int k = base.kind == ModelKind::hopf ? base.n : 1;
                std::vector<C> u(static_cast<size_t>(k) * k, C{});
                for (int i = 0; i < k; ++i)
                    u[static_cast<size_t>(i) * k + i] = C{std::cos(unitary_phase), std::sin(unitary_phase)};
                base = with_suspension(base, suspension_data(base, c_param, u));
            }
            SampleCloud cloud = sample_cloud(base, c_param, samples, knn, seed);
            std::vector<DistortionRow> rows = gh_diagnostics(cloud, parse_grid(t_grid_gh), sources);
            std::string csv = to_csv(rows);
            emit(want_json ? rows_to_json(rows, csv) : csv, out_file);
            return 0;
        }
        if (cmd_bk->parsed()) {
            if (bk_check->parsed()) {
                std::vector<BrieskornTuple> one{check_admissible(parse_exponents(tuple_str))};
                emit(to_json(one, "check"), out_file);
                return 0;
            }
            if (bk_scan->parsed()) {
                emit(to_json(scan(scan_n, scan_max), "scan"), out_file);
                return 0;
            }
            if (bk_exotic->parsed()) {
                emit(to_json(exotic7_catalog(), "exotic7"), out_file);
                return 0;
            }
            if (bk_profile->parsed()) {
                emit(to_json(curvature_profile(profile_n)), out_file);
                return 0;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
