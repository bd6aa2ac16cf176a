#pragma once

// OPF defining polynomials over the rectangular voltage components. The
// reference bus's quadrature component can be eliminated (angle reference),
// shrinking the variable set from 2n to 2n-1.

#include "mopf/netmodel.hpp"
#include "mopf/poly.hpp"

namespace mopf::poly {

/// Maps bus indices to positions in the flat variable vector
/// (V_d1..V_dn, V_q1..V_qn), with the reference quadrature component
/// optionally removed.
struct VariableLayout {
    int n_buses = 0;
    int ref_index = 0;  // 0-based bus position whose V_q is pinned to zero
    bool ref_q_eliminated = true;

    static VariableLayout for_network(const net::Network& net, bool eliminate = true) {
        VariableLayout lay;
        lay.n_buses = net.size();
        lay.ref_index = net.index_of(net.ref_bus);
        lay.ref_q_eliminated = eliminate;
        return lay;
    }

    int num_vars() const { return ref_q_eliminated ? 2 * n_buses - 1 : 2 * n_buses; }

    /// Variable index of V_d at 0-based bus position.
    int d_index(int bus) const { return bus; }

    /// Variable index of V_q at 0-based bus position; -1 if eliminated.
    int q_index(int bus) const {
        if (!ref_q_eliminated) return n_buses + bus;
        if (bus == ref_index) return -1;
        return n_buses + (bus < ref_index ? bus : bus - 1);
    }
};

namespace detail {

// nullptr-safe variable factor: eliminated variables contribute zero.
inline Polynomial var_or_zero(const VariableLayout& lay, int var_index) {
    if (var_index < 0) return Polynomial(lay.num_vars());
    return Polynomial::variable(lay.num_vars(), var_index);
}

}  // namespace detail

/// Active power generation f_Pi = P_Di + sum_k V_di (G_ik V_dk - B_ik V_qk)
///                                      + V_qi (B_ik V_dk + G_ik V_qk).
inline Polynomial active_injection(const net::Network& net, const net::AdmittanceMatrix& Y,
                                   int bus_id, const VariableLayout& lay) {
    const int i = net.index_of(bus_id);
    if (i < 0) throw net::InputError("bus", "unknown bus " + std::to_string(bus_id));
    const int m = lay.num_vars();
    Polynomial f = Polynomial::constant(m, net.buses[static_cast<size_t>(i)].p_load);
    const Polynomial vdi = detail::var_or_zero(lay, lay.d_index(i));
    const Polynomial vqi = detail::var_or_zero(lay, lay.q_index(i));
    for (int k = 0; k < net.size(); ++k) {
        if (Y.g(i, k) == 0.0 && Y.b(i, k) == 0.0) continue;
        const Polynomial vdk = detail::var_or_zero(lay, lay.d_index(k));
        const Polynomial vqk = detail::var_or_zero(lay, lay.q_index(k));
        f += vdi * (Y.g(i, k) * vdk - Y.b(i, k) * vqk);
        f += vqi * (Y.b(i, k) * vdk + Y.g(i, k) * vqk);
    }
    return f;
}

/// Reactive power generation f_Qi = Q_Di + sum_k V_qi (G_ik V_dk - B_ik V_qk)
///                                       - V_di (B_ik V_dk + G_ik V_qk).
inline Polynomial reactive_injection(const net::Network& net, const net::AdmittanceMatrix& Y,
                                     int bus_id, const VariableLayout& lay) {
    const int i = net.index_of(bus_id);
    if (i < 0) throw net::InputError("bus", "unknown bus " + std::to_string(bus_id));
    const int m = lay.num_vars();
    Polynomial f = Polynomial::constant(m, net.buses[static_cast<size_t>(i)].q_load);
    const Polynomial vdi = detail::var_or_zero(lay, lay.d_index(i));
    const Polynomial vqi = detail::var_or_zero(lay, lay.q_index(i));
    for (int k = 0; k < net.size(); ++k) {
        if (Y.g(i, k) == 0.0 && Y.b(i, k) == 0.0) continue;
        const Polynomial vdk = detail::var_or_zero(lay, lay.d_index(k));
        const Polynomial vqk = detail::var_or_zero(lay, lay.q_index(k));
        f += vqi * (Y.g(i, k) * vdk - Y.b(i, k) * vqk);
        f -= vdi * (Y.b(i, k) * vdk + Y.g(i, k) * vqk);
    }
    return f;
}

/// Squared voltage magnitude f_Vi = V_di^2 + V_qi^2.
inline Polynomial voltage_magnitude_sq(int bus_index0, const VariableLayout& lay) {
    const int m = lay.num_vars();
    Polynomial f = Polynomial::variable(m, lay.d_index(bus_index0), 2);
    const int q = lay.q_index(bus_index0);
    if (q >= 0) f += Polynomial::variable(m, q, 2);
    return f;
}

/// Quartic generation cost f_Ci = c2 f_Pi^2 + c1 f_Pi + c0 in the network's
/// active unit system.
inline Polynomial generation_cost(const net::Network& net, const net::AdmittanceMatrix& Y,
                                  int bus_id, const VariableLayout& lay) {
    const int g = net.generator_at(bus_id);
    if (g < 0)
        throw net::InputError("bus", "no generator at bus " + std::to_string(bus_id));
    const auto& gen = net.generators[static_cast<size_t>(g)];
    const Polynomial fp = active_injection(net, Y, bus_id, lay);
    Polynomial cost = Polynomial::constant(lay.num_vars(), gen.c0);
    if (gen.c1 != 0.0) cost += gen.c1 * fp;
    if (gen.c2 != 0.0) cost += gen.c2 * (fp * fp);
    return cost;
}

}  // namespace mopf::poly
