#include "signaleq/solution_io.hpp"

#include "signaleq/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sigeq {

using nlohmann::json;

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

json grid_to_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(format_g17(x));
    return arr;
}

std::vector<double> grid_from_json(const json& arr) {
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& e : arr) out.push_back(std::stod(e.get<std::string>()));
    return out;
}

json opt_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return format_g17(*v);
}

std::optional<double> opt_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return std::stod(j.get<std::string>());
}

} // namespace

std::string solution_to_json(const CSESolution& sol,
                             const std::string& model_echo,
                             const SolverOptions& opt) {
    json j;
    j["schema"] = "signaleq/solution/v1";
    j["regime"] = to_string(sol.regime);
    j["initial_case"] = sol.initial_case;
    j["reactions"] = {{"t_lo", format_g17(sol.t_lo)},
                      {"t_hi", format_g17(sol.t_hi)},
                      {"unbounded", sol.t_unbounded}};
    j["thresholds"] = {{"z_ell", format_g17(sol.thresholds.z_ell)},
                       {"s_ell", format_g17(sol.thresholds.s_ell)},
                       {"x_ell", format_g17(sol.thresholds.x_ell)},
                       {"z_h", opt_to_json(sol.thresholds.z_h)},
                       {"s_h", opt_to_json(sol.thresholds.s_h)},
                       {"x_h", opt_to_json(sol.thresholds.x_h)},
                       {"sigma_arc_top",
                        opt_to_json(sol.thresholds.sigma_arc_top)}};
    if (sol.pooled)
        j["pooled"] = {{"z_star", format_g17(sol.pooled->z_star)},
                       {"s_star", format_g17(sol.pooled->s_star)},
                       {"t_star", format_g17(sol.pooled->t_star)}};
    else
        j["pooled"] = nullptr;
    j["tau_top"] = format_g17(sol.tau_top);
    j["grids"] = {{"s", grid_to_json(sol.s)},     {"mu", grid_to_json(sol.mu)},
                  {"tau", grid_to_json(sol.tau)}, {"m", grid_to_json(sol.m)},
                  {"phi", grid_to_json(sol.phi)}, {"z", grid_to_json(sol.zg)},
                  {"sigma", grid_to_json(sol.sigma)}};
    json certs = json::array();
    for (const auto& c : sol.assumptions)
        certs.push_back({{"name", c.name},
                         {"verdict", to_string(c.verdict)},
                         {"witness", c.witness},
                         {"note", c.note}});
    j["assumptions"] = certs;
    j["metadata"] = {{"step", format_g17(opt.step)},
                     {"ode_tol", format_g17(opt.ode_local_tol)},
                     {"type_grid", opt.type_grid_n},
                     {"waived", sol.waived},
                     {"normalization_note", sol.normalization_note}};
    j["model"] = model_echo;
    return j.dump(2) + "\n";
}

CSESolution solution_from_json(const std::string& text,
                               std::string* model_echo_out) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("solution.json: ") + e.what());
    }
    if (j.value("schema", "") != "signaleq/solution/v1")
        throw parse_error("solution.json: unknown schema");
    CSESolution sol;
    sol.regime = regime_from_string(j.at("regime").get<std::string>());
    sol.initial_case = j.at("initial_case").get<int>();
    sol.t_lo = std::stod(j.at("reactions").at("t_lo").get<std::string>());
    sol.t_hi = std::stod(j.at("reactions").at("t_hi").get<std::string>());
    sol.t_unbounded = j.at("reactions").at("unbounded").get<bool>();
    const auto& th = j.at("thresholds");
    sol.thresholds.z_ell = std::stod(th.at("z_ell").get<std::string>());
    sol.thresholds.s_ell = std::stod(th.at("s_ell").get<std::string>());
    sol.thresholds.x_ell = std::stod(th.at("x_ell").get<std::string>());
    sol.thresholds.z_h = opt_from_json(th.at("z_h"));
    sol.thresholds.s_h = opt_from_json(th.at("s_h"));
    sol.thresholds.x_h = opt_from_json(th.at("x_h"));
    sol.thresholds.sigma_arc_top = opt_from_json(th.at("sigma_arc_top"));
    if (!j.at("pooled").is_null()) {
        PooledPoint p;
        p.z_star = std::stod(j.at("pooled").at("z_star").get<std::string>());
        p.s_star = std::stod(j.at("pooled").at("s_star").get<std::string>());
        p.t_star = std::stod(j.at("pooled").at("t_star").get<std::string>());
        sol.pooled = p;
    }
    sol.tau_top = std::stod(j.at("tau_top").get<std::string>());
    const auto& g = j.at("grids");
    sol.s = grid_from_json(g.at("s"));
    sol.mu = grid_from_json(g.at("mu"));
    sol.tau = grid_from_json(g.at("tau"));
    sol.m = grid_from_json(g.at("m"));
    sol.phi = grid_from_json(g.at("phi"));
    sol.zg = grid_from_json(g.at("z"));
    sol.sigma = grid_from_json(g.at("sigma"));
    for (const auto& c : j.at("assumptions")) {
        Certificate cert;
        cert.name = c.at("name").get<std::string>();
        const std::string v = c.at("verdict").get<std::string>();
        cert.verdict = v == "pass" ? Verdict::Pass
                                   : (v == "fail" ? Verdict::Fail
                                                  : Verdict::Inconclusive);
        cert.witness = c.at("witness").get<std::string>();
        cert.note = c.at("note").get<std::string>();
        sol.assumptions.push_back(cert);
    }
    sol.waived = j.at("metadata").at("waived").get<bool>();
    sol.normalization_note =
        j.at("metadata").at("normalization_note").get<std::string>();
    if (model_echo_out) *model_echo_out = j.at("model").get<std::string>();
    const size_t n = sol.s.size();
    if (sol.mu.size() != n || sol.tau.size() != n || sol.m.size() != n ||
        sol.phi.size() != n || sol.zg.size() != sol.sigma.size())
        throw parse_error("solution.json: grid sizes inconsistent");
    if (sol.regime == Regime::Pooling && !sol.pooled)
        throw parse_error("solution.json: pooling regime without the pooled "
                          "point");
    if (sol.regime == Regime::StrictlyWellBehaved &&
        (!sol.thresholds.z_h || !sol.thresholds.s_h || !sol.thresholds.x_h ||
         !sol.thresholds.sigma_arc_top))
        throw parse_error("solution.json: capped regime without the pooling "
                          "thresholds");
    return sol;
}

std::string report_to_json(const VerificationReport& report) {
    json j;
    j["schema"] = "signaleq/report/v1";
    j["overall"] = report.overall();
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"max_residual", format_g17(c.max_residual)},
                          {"worst_witness", c.worst_witness}});
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot write '" + path + "'");
    f << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

namespace {

void write_csv(const std::string& path, const char* header,
               const std::vector<double>& a, const std::vector<double>& b) {
    std::ostringstream os;
    os << header << "\n";
    for (size_t i = 0; i < a.size(); ++i)
        os << format_g17(a[i]) << "," << format_g17(b[i]) << "\n";
    write_text_file(path, os.str());
}

} // namespace

void write_solution_files(const CSESolution& sol,
                          const std::string& model_echo,
                          const SolverOptions& opt, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto p = [&](const char* name) {
        return (std::filesystem::path(dir) / name).string();
    };
    write_text_file(p("solution.json"),
                    solution_to_json(sol, model_echo, opt));
    write_csv(p("mu.csv"), "s,mu", sol.s, sol.mu);
    write_csv(p("tau.csv"), "s,tau", sol.s, sol.tau);
    write_csv(p("matching.csv"), "s,m", sol.s, sol.m);
    write_csv(p("sigma.csv"), "z,sigma", sol.zg, sol.sigma);

    // figure1: the action curve with its jumps made explicit (flat entry
    // segment, separating arc, discontinuity, pooled flat)
    std::ostringstream os;
    os << "z,sigma\n";
    double jump_z = -1.0, jump_from = 0.0, jump_to = 0.0;
    if (sol.regime == Regime::StrictlyWellBehaved) {
        jump_z = *sol.thresholds.z_h;
        jump_from = *sol.thresholds.sigma_arc_top;
        jump_to = *sol.thresholds.s_h;
    } else if (sol.regime == Regime::Pooling) {
        jump_z = sol.pooled->z_star;
        jump_from = 0.0;
        jump_to = sol.pooled->s_star;
    }
    bool jump_written = jump_z < 0.0;
    for (size_t i = 0; i < sol.zg.size(); ++i) {
        if (!jump_written && sol.zg[i] >= jump_z) {
            os << format_g17(jump_z) << "," << format_g17(jump_from) << "\n";
            os << format_g17(jump_z) << "," << format_g17(jump_to) << "\n";
            jump_written = true;
            if (sol.zg[i] == jump_z) continue;
        }
        os << format_g17(sol.zg[i]) << "," << format_g17(sol.sigma[i]) << "\n";
    }
    write_text_file(p("figure1.csv"), os.str());
}

} // namespace sigeq
