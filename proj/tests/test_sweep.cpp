#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "mopf/sweep.hpp"
#include "oracles.hpp"

using namespace mopf;

namespace {

sweep::SweepSpec mini_spec() {
    sweep::SweepSpec spec;
    spec.p1_min = 500;
    spec.p1_max = 700;
    spec.p2_min = 25;
    spec.p2_max = 45;
    spec.step = 50;  // keeps the grid tiny: 5 x 1... (see counts below)
    return spec;
}

}  // namespace

TEST_CASE("grid arithmetic and deterministic ordering") {
    auto net = oracle::case3();
    sweep::SweepSpec spec;
    spec.p1_min = 500;
    spec.p1_max = 600;
    spec.p2_min = 30;
    spec.p2_max = 40;
    spec.step = 50;
    spec.orders = {1};
    auto cells = sweep::run_sweep(net, spec);
    REQUIRE(cells.size() == 3 * 1);  // p1 in {500,550,600}; p2 in {30}... step 50 over [30,40]
    CHECK(cells[0].p1 == 500);
    CHECK(cells[0].p2 == 30);
    CHECK(cells[1].p1 == 550);
    CHECK(cells[2].p1 == 600);
}

TEST_CASE("sweep around the interesting region") {
    auto net = oracle::case3();
    sweep::SweepSpec spec;
    spec.p1_min = 550;
    spec.p1_max = 750;
    spec.p2_min = 25;
    spec.p2_max = 45;
    spec.step = 10;  // p1: 21 points, p2: {25, 35, 45}
    spec.jobs = 3;
    auto cells = sweep::run_sweep(net, spec);
    REQUIRE(cells.size() == 21 * 3);

    SECTION("row-major order regardless of worker scheduling") {
        for (size_t k = 0; k < cells.size(); ++k) {
            CHECK(cells[k].p1 == 550 + 10.0 * (k / 3));
            CHECK(cells[k].p2 == 25 + 10.0 * (k % 3));
        }
    }

    SECTION("order-2 feasible cells nest inside order-1") {
        CHECK(sweep::feasible_region_inclusion(cells));
        int feas2 = 0;
        for (const auto& c : cells)
            if (c.order2.status == sweep::CellStatus::feasible) ++feas2;
        CHECK(feas2 > 0);  // the region must not be trivially empty
    }

    SECTION("synthetic nesting violation is detected") {
        auto broken = cells;
        bool planted = false;
        for (auto& c : broken)
            if (c.order2.status == sweep::CellStatus::feasible) {
                c.order1.status = sweep::CellStatus::infeasible;
                planted = true;
                break;
            }
        REQUIRE(planted);
        CHECK_FALSE(sweep::feasible_region_inclusion(broken));
    }

    SECTION("monotone gap on feasible cells") {
        for (const auto& c : cells)
            if (c.order1.status == sweep::CellStatus::feasible &&
                c.order2.status == sweep::CellStatus::feasible)
                CHECK(c.order1.cost <= c.order2.cost + 1e-3 * (1 + std::abs(c.order2.cost)));
    }

    SECTION("order-1 relaxed cost at a pinned feasible cell is the true quadratic cost") {
        for (const auto& c : cells)
            if (c.order1.status == sweep::CellStatus::feasible)
                CHECK_THAT(c.order1.cost, Catch::Matchers::WithinAbs(c.true_cost, 1.0));
    }
}

TEST_CASE("the blue-square cell is feasible at both orders with zero order-1 cost") {
    auto net = oracle::case3();
    sweep::SweepSpec spec;
    spec.p1_min = 650;
    spec.p1_max = 650;
    spec.p2_min = 35;
    spec.p2_max = 35;
    spec.step = 1;
    auto cells = sweep::run_sweep(net, spec);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].order1.status == sweep::CellStatus::feasible);
    CHECK(cells[0].order2.status == sweep::CellStatus::feasible);
    CHECK(std::abs(cells[0].order1.cost) <= 1.0);
    CHECK(cells[0].true_cost == 0.0);
}

TEST_CASE("relaxed order-2 cost on the feasible curve equals the true cost") {
    auto net = oracle::case3();
    auto Y = net::build_admittance(net);
    auto base = moment::build_relaxation(net, Y, 2);
    for (double th : {-0.80, -0.60}) {
        auto p = oracle::case3_curve_point(th);
        REQUIRE(p.within_bounds);
        auto pinned = moment::pin_injection(moment::pin_injection(base, 1, p.pg1_mw), 2, p.pg2_mw);
        auto r = moment::solve_relaxation(pinned);
        REQUIRE(r.status == conic::SolveStatus::optimal);
        CHECK_THAT(r.objective, Catch::Matchers::WithinRel(p.cost, 1e-3));
    }
}

TEST_CASE("CSV output shape and byte determinism") {
    auto net = oracle::case3();
    auto spec = mini_spec();
    spec.step = 100;  // p1 {500,600,700}, p2 {25}
    spec.jobs = 1;
    auto cells = sweep::run_sweep(net, spec);
    std::ostringstream a;
    sweep::write_csv(cells, a);

    auto spec2 = spec;
    spec2.jobs = 4;
    auto cells2 = sweep::run_sweep(net, spec2);
    std::ostringstream b;
    sweep::write_csv(cells2, b);
    CHECK(a.str() == b.str());

    const std::string text = a.str();
    CHECK(text.rfind("pg1_mw,pg2_mw,order1_status,order1_cost,order2_status,order2_cost,true_cost\n",
                     0) == 0);
    // one line per cell plus header
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == static_cast<long>(cells.size()) + 1);

    SECTION("infeasible cells have empty cost fields") {
        bool saw_infeasible = false;
        std::istringstream is(text);
        std::string line;
        std::getline(is, line);  // header
        size_t k = 0;
        while (std::getline(is, line)) {
            const auto& c = cells.at(k++);
            if (c.order2.status == sweep::CellStatus::infeasible) {
                saw_infeasible = true;
                CHECK((line.find("infeasible,,") != std::string::npos ||
                       line.rfind(",infeasible,") != std::string::npos));
            }
        }
        (void)saw_infeasible;  // geometry-dependent; presence not required here
    }
}

TEST_CASE("invalid sweep specs are rejected") {
    auto net = oracle::case3();
    auto spec = mini_spec();
    spec.step = 0;
    CHECK_THROWS_AS(sweep::run_sweep(net, spec), std::invalid_argument);
}
