#pragma once

// Feasible-space sweep over the P_G1-P_G2 plane: at each grid point both
// relaxation orders are solved with the injections pinned to the cell, and
// the relaxed cost / feasibility verdict is recorded. Cells are independent
// and run on a worker pool; results are gathered in deterministic row-major
// order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "mopf/moment.hpp"

namespace mopf::sweep {

struct SweepSpec {
    double p1_min = 0, p1_max = 0;  // MW
    double p2_min = 0, p2_max = 0;
    double step = 0.5;              // MW
    std::vector<int> orders{1, 2};
    int jobs = 1;
    conic::SolveSettings solver;
};

enum class CellStatus { not_run, feasible, infeasible, error };

inline const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::not_run: return "";
        case CellStatus::feasible: return "feasible";
        case CellStatus::infeasible: return "infeasible";
        case CellStatus::error: return "error";
    }
    return "";
}

struct OrderOutcome {
    CellStatus status = CellStatus::not_run;
    double cost = 0;       // relaxed cost, $/hr (valid when feasible)
    bool has_cost = false;
};

struct SweepCell {
    double p1 = 0, p2 = 0;  // MW
    OrderOutcome order1, order2;
    double true_cost = 0;   // quadratic cost at (p1, p2)
};

namespace detail {

inline int grid_count(double lo, double hi, double step) {
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace detail

/// Run the sweep. Failures at single cells are recorded as `error`, never
/// aborting the run.
inline std::vector<SweepCell> run_sweep(const net::Network& net, const SweepSpec& spec) {
    if (spec.step <= 0) throw std::invalid_argument("sweep step must be positive");
    const auto Y = net::build_admittance(net);
    const bool run1 = std::find(spec.orders.begin(), spec.orders.end(), 1) != spec.orders.end();
    const bool run2 = std::find(spec.orders.begin(), spec.orders.end(), 2) != spec.orders.end();
    moment::MomentProblem base1, base2;
    if (run1) base1 = moment::build_relaxation(net, Y, 1);
    if (run2) base2 = moment::build_relaxation(net, Y, 2);

    const int n1 = detail::grid_count(spec.p1_min, spec.p1_max, spec.step);
    const int n2 = detail::grid_count(spec.p2_min, spec.p2_max, spec.step);
    std::vector<SweepCell> cells(static_cast<size_t>(n1) * static_cast<size_t>(n2));

    const std::vector<int> gen_buses = run1 ? base1.gen_bus_ids : base2.gen_bus_ids;
    if (gen_buses.size() != 2)
        throw std::invalid_argument("sweep requires exactly two generators");

    auto eval_cell = [&](SweepCell& cell, const moment::MomentProblem& base,
                         OrderOutcome& out) {
        try {
            auto pinned = moment::pin_injection(base, gen_buses[0], cell.p1);
            pinned = moment::pin_injection(pinned, gen_buses[1], cell.p2);
            auto feas = conic::certify_feasibility(pinned.conic, spec.solver);
            if (feas.status == conic::SolveStatus::numerical_failure) {
                out.status = CellStatus::error;
                return;
            }
            if (!feas.feasible) {
                out.status = CellStatus::infeasible;
                return;
            }
            auto sol = conic::solve(pinned.conic, spec.solver);
            if (sol.status == conic::SolveStatus::optimal) {
                out.status = CellStatus::feasible;
                out.cost = sol.objective * pinned.obj_scale;
                out.has_cost = true;
            } else if (sol.status == conic::SolveStatus::infeasible) {
                out.status = CellStatus::infeasible;
            } else {
                out.status = CellStatus::error;
            }
        } catch (const std::exception&) {
            out.status = CellStatus::error;
        }
    };

    std::atomic<int> next{0};
    const int total = n1 * n2;
    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= total) return;
            SweepCell& cell = cells[static_cast<size_t>(k)];
            cell.p1 = spec.p1_min + spec.step * (k / n2);
            cell.p2 = spec.p2_min + spec.step * (k % n2);
            cell.true_cost = moment::true_cost(net, {cell.p1, cell.p2});
            if (run1) eval_cell(cell, base1, cell.order1);
            if (run2) eval_cell(cell, base2, cell.order2);
        }
    };

    const int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return cells;
}

/// Relaxation nesting check: every order-2-feasible cell must be order-1
/// feasible.
inline bool feasible_region_inclusion(const std::vector<SweepCell>& cells) {
    for (const auto& c : cells)
        if (c.order2.status == CellStatus::feasible && c.order1.status != CellStatus::feasible)
            return false;
    return true;
}

namespace detail {

inline std::string fmt_cost(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string fmt_mw(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace detail

/// CSV with one row per cell:
/// pg1_mw,pg2_mw,order1_status,order1_cost,order2_status,order2_cost,true_cost
inline void write_csv(const std::vector<SweepCell>& cells, std::ostream& os) {
    os << "pg1_mw,pg2_mw,order1_status,order1_cost,order2_status,order2_cost,true_cost\n";
    for (const auto& c : cells) {
        os << detail::fmt_mw(c.p1) << ',' << detail::fmt_mw(c.p2) << ','
           << to_string(c.order1.status) << ','
           << (c.order1.has_cost ? detail::fmt_cost(c.order1.cost) : "") << ','
           << to_string(c.order2.status) << ','
           << (c.order2.has_cost ? detail::fmt_cost(c.order2.cost) : "") << ','
           << detail::fmt_cost(c.true_cost) << '\n';
    }
}

}  // namespace mopf::sweep
