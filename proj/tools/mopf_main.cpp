// moment-opf command line: solve a network's moment relaxation, sweep the
// generation plane, or run the reactive-penalty heuristic.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mopf/moment.hpp"
#include "mopf/netjson.hpp"
#include "mopf/report.hpp"
#include "mopf/sdpa.hpp"
#include "mopf/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitRankUnmet = 3;
constexpr int kExitSolverFailure = 4;
constexpr int kExitUsage = 64;

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

int status_exit_code(const mopf::moment::RelaxationResult& r) {
    switch (r.status) {
        case mopf::conic::SolveStatus::optimal:
            return r.rank1 ? kExitOk : kExitRankUnmet;
        case mopf::conic::SolveStatus::infeasible:
            return kExitInfeasible;
        case mopf::conic::SolveStatus::unbounded:
        case mopf::conic::SolveStatus::numerical_failure:
            return kExitSolverFailure;
    }
    return kExitSolverFailure;
}

struct RangeOpt {
    std::optional<double> lo, hi;
};

RangeOpt parse_range(const std::string& s) {
    const auto pos = s.find(':');
    if (pos == std::string::npos)
        throw CLI::ValidationError("range", "expected <lo>:<hi>, got '" + s + "'");
    RangeOpt r;
    r.lo = std::stod(s.substr(0, pos));
    r.hi = std::stod(s.substr(pos + 1));
    return r;
}

int default_jobs() {
    if (const char* env = std::getenv("MOMENT_OPF_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment relaxations for small AC optimal power flow problems"};
    app.require_subcommand(1);

    std::string file;
    int order = 2;
    double tol_rank = 1e-4;
    double gap_tol = 1e-8;
    bool as_json = false, as_text = false;
    std::string dump_sdpa;

    auto* solve = app.add_subcommand("solve", "solve one relaxation order and extract");
    solve->add_option("file", file, "network JSON file")->required();
    solve->add_option("--order", order, "relaxation order")->check(CLI::Range(1, 3));
    solve->add_option("--tol-rank", tol_rank, "rank-condition eigenvalue ratio tolerance");
    solve->add_option("--gap-tol", gap_tol, "solver relative duality-gap tolerance");
    solve->add_flag("--json", as_json, "machine-readable report");
    solve->add_flag("--text", as_text, "human-readable report (default)");
    solve->add_option("--dump-sdpa", dump_sdpa, "write the conic problem in SDPA sparse format");

    std::string p1_range, p2_range, out_file, orders_csv = "1,2";
    double step = 0.5;
    int jobs = default_jobs();
    auto* sweep = app.add_subcommand("sweep", "grid the generation plane and classify cells");
    sweep->add_option("file", file, "network JSON file")->required();
    sweep->add_option("--p1", p1_range, "P_G1 range, MW, as lo:hi (default: generator bounds)");
    sweep->add_option("--p2", p2_range, "P_G2 range, MW, as lo:hi (default: generator bounds)");
    sweep->add_option("--step", step, "grid spacing, MW");
    sweep->add_option("--orders", orders_csv, "comma-separated relaxation orders to run");
    sweep->add_option("--out", out_file, "output CSV path (default: stdout)");
    sweep->add_option("--jobs", jobs, "worker pool size (env MOMENT_OPF_JOBS)");

    double epsilon = 0;
    auto* penalize = app.add_subcommand("penalize",
                                        "order-1 relaxation with a reactive-generation penalty");
    penalize->add_option("file", file, "network JSON file")->required();
    penalize->add_option("--epsilon", epsilon, "penalty coefficient, $/(MVAr-hr)")->required();
    penalize->add_flag("--json", as_json, "machine-readable report");
    penalize->add_flag("--text", as_text, "human-readable report (default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    try {
        const auto net = mopf::net::load_network(file);
        const auto Y = mopf::net::build_admittance(net);
        mopf::conic::SolveSettings settings;
        settings.gap_tol = gap_tol;
        settings.feas_tol = std::min(1e-8, gap_tol * 10);

        if (solve->parsed()) {
            auto mp = mopf::moment::build_relaxation(net, Y, order);
            if (!dump_sdpa.empty()) {
                std::ofstream os(dump_sdpa);
                mopf::conic::write_sdpa(mp.conic, os);
            }
            const double t0 = now_s();
            auto r = mopf::moment::solve_relaxation(mp, settings, tol_rank);
            const double dt = now_s() - t0;
            if (as_json) {
                nlohmann::json j;
                j["command"] = "solve";
                j["input"] = {{"path", file}, {"digest", mopf::report::file_digest(file)}};
                j["results"] = {mopf::report::result_to_json(mp, r, dt)};
                std::cout << j.dump(2) << "\n";
            } else {
                mopf::report::print_result_text(std::cout, mp, r, dt);
            }
            return status_exit_code(r);
        }

        if (sweep->parsed()) {
            mopf::sweep::SweepSpec spec;
            if (net.generators.size() != 2)
                throw mopf::net::InputError("generators", "sweep requires exactly two");
            spec.p1_min = net.generators[0].p_min;
            spec.p1_max = net.generators[0].p_max;
            spec.p2_min = net.generators[1].p_min;
            spec.p2_max = net.generators[1].p_max;
            if (!p1_range.empty()) {
                auto r = parse_range(p1_range);
                spec.p1_min = *r.lo;
                spec.p1_max = *r.hi;
            }
            if (!p2_range.empty()) {
                auto r = parse_range(p2_range);
                spec.p2_min = *r.lo;
                spec.p2_max = *r.hi;
            }
            spec.step = step;
            spec.jobs = jobs;
            spec.solver = settings;
            spec.orders.clear();
            {
                std::stringstream ss(orders_csv);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) spec.orders.push_back(std::stoi(tok));
            }
            for (int o : spec.orders)
                if (o != 1 && o != 2)
                    throw CLI::ValidationError("--orders", "sweep supports orders 1 and 2");
            auto cells = mopf::sweep::run_sweep(net, spec);
            if (out_file.empty()) {
                mopf::sweep::write_csv(cells, std::cout);
            } else {
                std::ofstream os(out_file, std::ios::binary);
                if (!os) throw std::runtime_error("cannot open output file " + out_file);
                mopf::sweep::write_csv(cells, os);
                std::cerr << "wrote " << cells.size() << " cells to " << out_file << "\n";
            }
            return kExitOk;
        }

        if (penalize->parsed()) {
            if (epsilon < 0) {
                std::cerr << "penalize: --epsilon must be >= 0\n";
                return kExitUsage;
            }
            auto mp1 = mopf::moment::build_relaxation(net, Y, 1);
            auto pen = mopf::moment::add_reactive_penalty(mp1, epsilon);
            const double t0 = now_s();
            auto rp = mopf::moment::solve_relaxation(pen, settings, tol_rank);
            auto mp2 = mopf::moment::build_relaxation(net, Y, 2);
            auto r2 = mopf::moment::solve_relaxation(mp2, settings, tol_rank);
            const double dt = now_s() - t0;

            std::optional<double> feas_cost, gap_pct;
            if (rp.status == mopf::conic::SolveStatus::optimal && rp.rank1 &&
                r2.status == mopf::conic::SolveStatus::optimal) {
                feas_cost = mopf::moment::true_cost(net, rp.gen_p_mw);
                gap_pct = 100.0 * (*feas_cost - r2.objective) / *feas_cost;
            }
            if (as_json) {
                nlohmann::json j;
                j["command"] = "penalize";
                j["input"] = {{"path", file}, {"digest", mopf::report::file_digest(file)}};
                j["penalty_epsilon_usd_per_mvar_hr"] = epsilon;
                j["results"] = {mopf::report::result_to_json(pen, rp, dt),
                                mopf::report::result_to_json(mp2, r2, 0.0)};
                if (feas_cost) {
                    j["feasible_point_cost_usd_per_hr"] = *feas_cost;
                    j["order2_lower_bound_usd_per_hr"] = r2.objective;
                    j["worst_case_optimality_gap_percent"] = *gap_pct;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                mopf::report::print_result_text(std::cout, pen, rp, dt);
                if (feas_cost) {
                    std::cout << "  feasible-point cost: " << *feas_cost << " $/hr\n"
                              << "  order-2 lower bound: " << r2.objective << " $/hr\n"
                              << "  worst-case optimality gap: " << *gap_pct << " %\n";
                }
            }
            return status_exit_code(rp);
        }
    } catch (const mopf::net::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitUsage;
}
