#pragma once

// Test-only oracles, independent of the library's polynomial / relaxation
// code paths: complex-arithmetic power flow, branch-current losses, and the
// one-dimensional feasible curve of the bundled three-bus case.

#include <complex>
#include <vector>

#include "mopf/netjson.hpp"
#include "mopf/netmodel.hpp"

namespace oracle {

using cx = std::complex<double>;

/// Bus injections S_i = V_i conj((Y V)_i) computed with complex arithmetic.
inline std::vector<cx> bus_injections(const mopf::net::Network& net_pu,
                                      const std::vector<cx>& v) {
    const int n = net_pu.size();
    std::vector<cx> ybus(static_cast<size_t>(n) * n, cx{0, 0});
    auto at = [&](int i, int k) -> cx& { return ybus[static_cast<size_t>(i) * n + k]; };
    for (const auto& br : net_pu.branches) {
        const int i = net_pu.index_of(br.from), k = net_pu.index_of(br.to);
        const cx y = 1.0 / cx{br.r, br.x};
        at(i, k) -= y;
        at(k, i) -= y;
        at(i, i) += y;
        at(k, k) += y;
    }
    std::vector<cx> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        cx current{0, 0};
        for (int k = 0; k < n; ++k) current += at(i, k) * v[static_cast<size_t>(k)];
        s[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] * std::conj(current);
    }
    return s;
}

/// Generation implied by the power flow equations: load plus injection.
inline std::vector<cx> generation(const mopf::net::Network& net_pu, const std::vector<cx>& v) {
    auto s = bus_injections(net_pu, v);
    for (int i = 0; i < net_pu.size(); ++i)
        s[static_cast<size_t>(i)] +=
            cx{net_pu.buses[static_cast<size_t>(i)].p_load, net_pu.buses[static_cast<size_t>(i)].q_load};
    return s;
}

/// Total series (I^2 R) active loss over all branches.
inline double total_active_loss(const mopf::net::Network& net_pu, const std::vector<cx>& v) {
    double loss = 0;
    for (const auto& br : net_pu.branches) {
        const int i = net_pu.index_of(br.from), k = net_pu.index_of(br.to);
        const cx current = (v[static_cast<size_t>(i)] - v[static_cast<size_t>(k)]) / cx{br.r, br.x};
        loss += std::norm(current) * br.r;
    }
    return loss;
}

/// The bundled three-bus instance, constructed in memory (MW units).
inline mopf::net::Network case3() {
    using namespace mopf::net;
    Network net;
    net.s_base = 100;
    net.ref_bus = 1;
    net.buses = {{1, 0, 0, 1.0, 1.0}, {2, 30, 0, 1.3, 1.3}, {3, 0, 0, 0.8, 1.4}};
    net.generators = {{1, 300, 1200, {}, {}, 1, -1300, 422500},
                      {2, 0, 50, {}, {}, 500, -35000, 612500}};
    net.branches = {{1, 2, 0.15, 0.1}, {1, 3, 0.1, 0.05}, {2, 3, 0.001, 0.05}};
    return net;
}

struct CurvePoint {
    double theta2 = 0;
    std::vector<cx> v;    // bus voltages, pu
    double pg1_mw = 0, pg2_mw = 0;
    double qg1_mvar = 0, qg2_mvar = 0;
    double cost = 0;      // quadratic cost, $/hr
    bool within_bounds = false;
};

/// One point of the three-bus feasible curve: V1 = 1, V2 = 1.3 e^{j theta},
/// and V3 solved from the zero-injection condition (Y V)_3 = 0.
inline CurvePoint case3_curve_point(double theta2) {
    const auto net = mopf::net::to_per_unit(case3());
    const cx y12 = 1.0 / cx{0.15, 0.1}, y13 = 1.0 / cx{0.1, 0.05}, y23 = 1.0 / cx{0.001, 0.05};
    CurvePoint p;
    p.theta2 = theta2;
    const cx v1{1.0, 0.0};
    const cx v2 = 1.3 * std::exp(cx{0, theta2});
    const cx v3 = (y13 * v1 + y23 * v2) / (y13 + y23);  // -(Y31 v1 + Y32 v2)/Y33
    p.v = {v1, v2, v3};
    const auto s = generation(net, p.v);
    p.pg1_mw = s[0].real() * net.s_base;
    p.pg2_mw = s[1].real() * net.s_base;
    p.qg1_mvar = s[0].imag() * net.s_base;
    p.qg2_mvar = s[1].imag() * net.s_base;
    p.cost = (p.pg1_mw - 650) * (p.pg1_mw - 650) + 500 * (p.pg2_mw - 35) * (p.pg2_mw - 35);
    p.within_bounds = p.pg1_mw >= 300 && p.pg1_mw <= 1200 && p.pg2_mw >= 0 && p.pg2_mw <= 50 &&
                      std::abs(v3) >= 0.8 && std::abs(v3) <= 1.4;
    return p;
}

/// Golden-section scan of the curve for the minimum-cost feasible point.
inline CurvePoint case3_global_optimum() {
    double best_cost = 1e300, best_theta = 0;
    for (int k = 0; k <= 20000; ++k) {
        const double th = -1.2 + 1.0 * k / 20000.0;
        const auto p = case3_curve_point(th);
        if (p.within_bounds && p.cost < best_cost) {
            best_cost = p.cost;
            best_theta = th;
        }
    }
    double lo = best_theta - 1e-4, hi = best_theta + 1e-4;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        if (case3_curve_point(a).cost < case3_curve_point(b).cost) {
            hi = b;
            b = a;
            a = hi - gr * (hi - lo);
        } else {
            lo = a;
            a = b;
            b = lo + gr * (hi - lo);
        }
    }
    return case3_curve_point(0.5 * (lo + hi));
}

}  // namespace oracle
