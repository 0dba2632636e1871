// signaleq: solver and verifier for monotone signaling equilibria.
//
//   signaleq solve  --config cfg.ini --out DIR [--step H] [--tol T]
//   signaleq verify --solution DIR/solution.json --config cfg.ini [--out DIR]
//   signaleq finite --game game.ini [--out DIR]
//   signaleq finite --random N --seed S [--out DIR]
//
// Exit codes: 0 success (including an EmptyMarket solve and a passing
// verify), 1 verification failure / equivalence disagreement, 2 model or
// usage error, 3 convergence error.

#include <CLI11.hpp>

#include "signaleq/config.hpp"
#include "signaleq/errors.hpp"
#include "signaleq/finite_game.hpp"
#include "signaleq/solution_io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

int thread_cap() {
    if (const char* env = std::getenv("SIGNAL_EQ_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              double step_override, double tol_override) {
    sigeq::RunConfig rc = sigeq::RunConfig::load_file(config_path);
    if (step_override > 0.0) rc.solver.step = step_override;
    if (tol_override > 0.0) rc.solver.ode_local_tol = tol_override;
    const std::string dir = out_dir.empty() ? rc.out_dir : out_dir;
    const sigeq::ModelPrimitives prim = rc.make_primitives();
    const sigeq::CSESolution sol = sigeq::assemble_cse(prim, rc.solver);
    sigeq::write_solution_files(sol, rc.model_echo(), rc.solver, dir);
    std::cout << "regime: " << sigeq::to_string(sol.regime) << "\n";
    std::cout << "z_ell " << sigeq::format_g17(sol.thresholds.z_ell)
              << "  s_ell " << sigeq::format_g17(sol.thresholds.s_ell) << "\n";
    if (sol.thresholds.z_h)
        std::cout << "z_h " << sigeq::format_g17(*sol.thresholds.z_h)
                  << "  s_h " << sigeq::format_g17(*sol.thresholds.s_h)
                  << "\n";
    std::cout << "tau_top " << sigeq::format_g17(sol.tau_top) << "\n";
    std::cout << "wrote " << dir << "/solution.json and CSV tables\n";
    return 0;
}

int cmd_verify(const std::string& solution_path, const std::string& config_path,
               const std::string& out_dir) {
    sigeq::RunConfig rc = sigeq::RunConfig::load_file(config_path);
    std::string stored_echo;
    const sigeq::CSESolution sol = sigeq::solution_from_json(
        sigeq::read_text_file(solution_path), &stored_echo);
    if (stored_echo != rc.model_echo())
        throw sigeq::model_error(
            "verify: solution.json was produced by a different model section "
            "than this config");
    const sigeq::ModelPrimitives prim = rc.make_primitives();
    const sigeq::VerificationReport report =
        sigeq::verify_solution(sol, prim, rc.verify);
    const std::string dir = out_dir.empty() ? rc.out_dir : out_dir;
    std::filesystem::create_directories(dir);
    sigeq::write_text_file(
        (std::filesystem::path(dir) / "report.json").string(),
        sigeq::report_to_json(report));
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name
                  << "  max_residual=" << sigeq::format_g17(c.max_residual)
                  << (c.worst_witness.empty() ? "" : "  " + c.worst_witness)
                  << "\n";
    std::cout << (report.overall() ? "overall: pass" : "overall: FAIL")
              << "\n";
    return report.overall() ? 0 : 1;
}

nlohmann::json report_entry_json(const sigeq::FiniteGame& game,
                                 const sigeq::EquivalenceEntry& e) {
    return {{"pbe", e.pbe.describe(game)},
            {"d1", e.d1},
            {"stronger_monotone", e.stronger_monotone},
            {"d1_witness", e.d1_witness},
            {"sm_witness", e.sm_witness}};
}

int cmd_finite(const std::string& game_path, int random_n,
               unsigned long long seed, bool enumerate_ties,
               const std::string& out_dir) {
    namespace fs = std::filesystem;
    sigeq::EnumOptions opt;
    opt.enumerate_tie_selections = enumerate_ties;
    nlohmann::json out;
    bool ok = true;
    if (!game_path.empty()) {
        const sigeq::FiniteGame game = sigeq::parse_game_file(game_path);
        const sigeq::EquivalenceReport rep =
            sigeq::d1_equivalence_report(game, opt);
        out["schema"] = "signaleq/finite/v1";
        out["game"] = game.name;
        out["hypothesis"] = rep.hypothesis_note;
        out["asserted"] = rep.asserted();
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : rep.entries)
            entries.push_back(report_entry_json(game, e));
        out["pbe"] = entries;
        out["disagreements"] = rep.disagreements.size();
        out["equivalence"] = !rep.asserted()
                                 ? "not asserted"
                                 : (rep.disagreements.empty() ? "holds"
                                                              : "fails");
        std::cout << "game: " << game.name << "\n"
                  << "PBEs: " << rep.entries.size() << "\n"
                  << "equivalence: " << out["equivalence"].get<std::string>()
                  << "\n";
        for (std::size_t idx : rep.disagreements)
            std::cout << "  disagreement: "
                      << rep.entries[idx].pbe.describe(game) << "\n";
        ok = !rep.asserted() || rep.disagreements.empty();
    } else {
        const sigeq::SweepResult sweep =
            sigeq::d1_equivalence_sweep(random_n, seed, opt, thread_cap());
        out["schema"] = "signaleq/finite-sweep/v1";
        out["games"] = sweep.games;
        out["seed"] = seed;
        out["pbe_total"] = sweep.pbe_total;
        out["hypothesis_unmet"] = sweep.hypothesis_unmet;
        out["disagreements"] = sweep.disagreement_total;
        out["counterexamples"] = sweep.counterexamples;
        std::cout << "games: " << sweep.games
                  << "  PBEs: " << sweep.pbe_total
                  << "  disagreements: " << sweep.disagreement_total << " ("
                  << sweep.seconds << " s)\n";
        for (const auto& c : sweep.counterexamples)
            std::cout << "  " << c << "\n";
        ok = sweep.disagreement_total == 0;
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        sigeq::write_text_file(
            (fs::path(out_dir) / "finite_report.json").string(),
            out.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver and verifier for monotone signaling equilibria"};
    app.require_subcommand(1);

    std::string config_path, out_dir, solution_path, game_path;
    double step_override = 0.0, tol_override = 0.0;
    int random_n = 0;
    unsigned long long seed = 0;
    bool enumerate_ties = false;

    auto* solve = app.add_subcommand("solve", "compute the equilibrium");
    solve->add_option("--config", config_path)->required();
    solve->add_option("--out", out_dir);
    solve->add_option("--step", step_override);
    solve->add_option("--tol", tol_override);

    auto* verify = app.add_subcommand("verify", "audit a solution file");
    verify->add_option("--solution", solution_path)->required();
    verify->add_option("--config", config_path)->required();
    verify->add_option("--out", out_dir);

    auto* finite = app.add_subcommand("finite", "finite-game analysis");
    finite->add_option("--game", game_path);
    finite->add_option("--random", random_n);
    finite->add_option("--seed", seed);
    finite->add_flag("--enumerate-ties", enumerate_ties);
    finite->add_option("--out", out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(config_path, out_dir, step_override, tol_override);
        if (verify->parsed())
            return cmd_verify(solution_path, config_path, out_dir);
        if (finite->parsed()) {
            if (game_path.empty() && random_n <= 0)
                throw sigeq::parse_error(
                    "finite: need --game FILE or --random N");
            return cmd_finite(game_path, random_n, seed, enumerate_ties,
                              out_dir);
        }
    } catch (const sigeq::convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const sigeq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
