#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <fstream>

#include "mopf/netjson.hpp"
#include "mopf/netmodel.hpp"
#include "oracles.hpp"

using namespace mopf::net;

TEST_CASE("series admittance of a single branch") {
    // oracle: complex reciprocal 1/(r + jx)
    const std::complex<double> y = 1.0 / std::complex<double>{0.001, 0.05};
    CHECK_THAT(y.real(), Catch::Matchers::WithinAbs(0.39984, 1e-5));
    CHECK_THAT(y.imag(), Catch::Matchers::WithinAbs(-19.9920, 1e-4));

    Network net;
    net.buses = {{1, 0, 0, 0.9, 1.1}, {2, 0, 0, 0.9, 1.1}};
    net.branches = {{1, 2, 0.001, 0.05}};
    auto Y = build_admittance(net);
    CHECK_THAT(Y.g(0, 1), Catch::Matchers::WithinRel(-y.real(), 1e-12));
    CHECK_THAT(Y.b(0, 1), Catch::Matchers::WithinRel(-y.imag(), 1e-12));
    CHECK_THAT(Y.g(0, 0), Catch::Matchers::WithinRel(y.real(), 1e-12));
}

TEST_CASE("unit resistance branch") {
    Network net;
    net.buses = {{1, 0, 0, 0.9, 1.1}, {2, 0, 0, 0.9, 1.1}};
    net.branches = {{1, 2, 1.0, 0.0}};
    auto Y = build_admittance(net);
    CHECK(Y.g(0, 0) == 1.0);
    CHECK(Y.g(0, 1) == -1.0);
    CHECK(Y.g(1, 0) == -1.0);
    CHECK(Y.g(1, 1) == 1.0);
    CHECK(Y.b.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("three-bus admittance entries") {
    auto net = oracle::case3();
    auto Y = build_admittance(net);
    const std::complex<double> y12 = 1.0 / std::complex<double>{0.15, 0.1};
    const std::complex<double> y23 = 1.0 / std::complex<double>{0.001, 0.05};
    CHECK_THAT(Y.g(1, 2), Catch::Matchers::WithinRel(-y23.real(), 1e-12));
    CHECK_THAT(Y.b(1, 2), Catch::Matchers::WithinRel(-y23.imag(), 1e-12));
    CHECK_THAT(Y.g(1, 1), Catch::Matchers::WithinRel(y12.real() + y23.real(), 1e-12));
    CHECK_THAT(Y.b(1, 1), Catch::Matchers::WithinRel(y12.imag() + y23.imag(), 1e-12));
}

TEST_CASE("admittance symmetry and zero row sums") {
    auto net = oracle::case3();
    auto Y = build_admittance(net);
    CHECK((Y.g - Y.g.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((Y.b - Y.b.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < net.size(); ++i) {
        CHECK_THAT(Y.g.row(i).sum(), Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(Y.b.row(i).sum(), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("rejected inputs") {
    auto net = oracle::case3();
    SECTION("zero-impedance branch") {
        net.branches[0].r = 0;
        net.branches[0].x = 0;
        CHECK_THROWS_AS(build_admittance(net), InputError);
    }
    SECTION("duplicate bus id") {
        net.buses[2].id = 1;
        CHECK_THROWS_AS(validate(net), InputError);
    }
    SECTION("voltage bounds out of order") {
        net.buses[0].v_min = 1.2;
        net.buses[0].v_max = 1.0;
        CHECK_THROWS_AS(validate(net), InputError);
    }
    SECTION("generator at unknown bus") {
        net.generators[0].bus = 9;
        CHECK_THROWS_AS(validate(net), InputError);
    }
    SECTION("second generator at the same bus") {
        net.generators.push_back(net.generators[0]);
        CHECK_THROWS_AS(validate(net), InputError);
    }
    SECTION("negative curvature cost") {
        net.generators[0].c2 = -1;
        CHECK_THROWS_AS(validate(net), InputError);
    }
}

TEST_CASE("per-unit conversion") {
    auto net = oracle::case3();
    auto pu = to_per_unit(net);

    CHECK(pu.buses[1].p_load == 0.30);
    CHECK(pu.generators[0].p_max == 12.0);
    CHECK(pu.generators[0].c2 == 1e4);
    CHECK(pu.generators[0].c1 == -130000.0);
    CHECK(pu.generators[0].c0 == 422500.0);
    CHECK(pu.per_unit);

    SECTION("idempotent") {
        auto again = to_per_unit(pu);
        CHECK(again.generators[0].c2 == pu.generators[0].c2);
        CHECK(again.buses[1].p_load == pu.buses[1].p_load);
    }

    SECTION("cost of an operating point is unit-invariant") {
        // sample generations in MW and the same point in pu
        const double p1_mw = 537.2, p2_mw = 32.4;
        double cost_mw = 0, cost_pu = 0;
        for (size_t g = 0; g < net.generators.size(); ++g) {
            const double p = g == 0 ? p1_mw : p2_mw;
            const auto& gm = net.generators[g];
            cost_mw += gm.c2 * p * p + gm.c1 * p + gm.c0;
            const auto& gp = pu.generators[g];
            const double ppu = p / net.s_base;
            cost_pu += gp.c2 * ppu * ppu + gp.c1 * ppu + gp.c0;
        }
        CHECK_THAT(cost_pu, Catch::Matchers::WithinRel(cost_mw, 1e-12));
    }
}

TEST_CASE("network JSON round trip and schema errors") {
    SECTION("bundled three-bus file matches the in-memory instance") {
        auto net = load_network(std::string(TEST_DATA_DIR) + "/case3.json");
        auto ref = oracle::case3();
        REQUIRE(net.size() == 3);
        CHECK(net.s_base == 100.0);
        CHECK(net.ref_bus == 1);
        for (int i = 0; i < 3; ++i) {
            CHECK(net.buses[static_cast<size_t>(i)].p_load == ref.buses[static_cast<size_t>(i)].p_load);
            CHECK(net.buses[static_cast<size_t>(i)].v_min == ref.buses[static_cast<size_t>(i)].v_min);
            CHECK(net.buses[static_cast<size_t>(i)].v_max == ref.buses[static_cast<size_t>(i)].v_max);
        }
        for (size_t g = 0; g < 2; ++g) {
            CHECK(net.generators[g].c2 == ref.generators[g].c2);
            CHECK(net.generators[g].c1 == ref.generators[g].c1);
            CHECK(net.generators[g].c0 == ref.generators[g].c0);
            CHECK_FALSE(net.generators[g].q_min.has_value());
            CHECK_FALSE(net.generators[g].q_max.has_value());
        }
        for (size_t b = 0; b < 3; ++b) {
            CHECK(net.branches[b].r == ref.branches[b].r);
            CHECK(net.branches[b].x == ref.branches[b].x);
        }
    }

    SECTION("serialization round trip") {
        auto net = oracle::case3();
        auto j = network_to_json(net);
        auto back = network_from_json(j);
        CHECK(back.buses[1].p_load == net.buses[1].p_load);
        CHECK(back.generators[1].c2 == net.generators[1].c2);
        CHECK(back.branches[2].x == net.branches[2].x);
    }

    SECTION("empty network rejected with a field path") {
        nlohmann::json j = {{"buses", nlohmann::json::array()}};
        try {
            network_from_json(j);
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(e.path() == "buses");
        }
    }

    SECTION("missing field carries its path") {
        nlohmann::json j = {{"buses", {{{"id", 1}, {"v_min", 0.9}}}}};
        try {
            network_from_json(j);
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(e.path() == "buses[0].v_max");
        }
    }
}
