#pragma once

// Power network instance: buses, branches, generators, and the complex
// admittance matrix Y = G + jB in rectangular (conductance/susceptance) form.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mopf::net {

/// Input validation failure with the JSON-style path of the offending field.
class InputError : public std::runtime_error {
public:
    InputError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct Bus {
    int id = 0;          // 1-based external index
    double p_load = 0;   // MW (or pu after per-unit conversion)
    double q_load = 0;   // MVAr (or pu)
    double v_min = 0;    // pu
    double v_max = 0;    // pu
};

struct Generator {
    int bus = 0;
    double p_min = 0;  // MW (or pu)
    double p_max = 0;
    std::optional<double> q_min;  // MVAr; absent = unconstrained
    std::optional<double> q_max;
    double c2 = 0;  // $/MWh^2 (scales by s_base^2 under per-unit conversion)
    double c1 = 0;  // $/MWh
    double c0 = 0;  // $/hr
};

struct Branch {
    int from = 0;
    int to = 0;
    double r = 0;  // pu
    double x = 0;  // pu
};

struct Network {
    std::vector<Bus> buses;
    std::vector<Generator> generators;
    std::vector<Branch> branches;
    double s_base = 100.0;  // MVA
    int ref_bus = 1;
    bool per_unit = false;

    int size() const { return static_cast<int>(buses.size()); }

    /// 0-based position of a bus id, or -1.
    int index_of(int bus_id) const {
        for (size_t i = 0; i < buses.size(); ++i)
            if (buses[i].id == bus_id) return static_cast<int>(i);
        return -1;
    }

    /// Generator index at a bus (at most one per bus), or -1.
    int generator_at(int bus_id) const {
        for (size_t g = 0; g < generators.size(); ++g)
            if (generators[g].bus == bus_id) return static_cast<int>(g);
        return -1;
    }
};

inline void validate(const Network& net) {
    if (net.s_base <= 0) throw InputError("s_base", "must be positive");
    if (net.buses.empty()) throw InputError("buses", "must be non-empty");
    for (size_t i = 0; i < net.buses.size(); ++i) {
        const auto& b = net.buses[i];
        const std::string path = "buses[" + std::to_string(i) + "]";
        if (b.v_min < 0) throw InputError(path + ".v_min", "must be >= 0");
        if (b.v_min > b.v_max) throw InputError(path + ".v_min", "exceeds v_max");
        for (size_t j = 0; j < i; ++j)
            if (net.buses[j].id == b.id)
                throw InputError(path + ".id", "duplicate bus id " + std::to_string(b.id));
    }
    if (net.index_of(net.ref_bus) < 0)
        throw InputError("ref_bus", "references unknown bus " + std::to_string(net.ref_bus));
    for (size_t g = 0; g < net.generators.size(); ++g) {
        const auto& gen = net.generators[g];
        const std::string path = "generators[" + std::to_string(g) + "]";
        if (net.index_of(gen.bus) < 0)
            throw InputError(path + ".bus", "references unknown bus " + std::to_string(gen.bus));
        if (gen.p_min > gen.p_max) throw InputError(path + ".p_min", "exceeds p_max");
        if (gen.q_min && gen.q_max && *gen.q_min > *gen.q_max)
            throw InputError(path + ".q_min", "exceeds q_max");
        if (gen.c2 < 0) throw InputError(path + ".c2", "must be >= 0 for a convex cost");
        for (size_t h = 0; h < g; ++h)
            if (net.generators[h].bus == gen.bus)
                throw InputError(path + ".bus",
                                 "more than one generator at bus " + std::to_string(gen.bus));
    }
    for (size_t k = 0; k < net.branches.size(); ++k) {
        const auto& br = net.branches[k];
        const std::string path = "branches[" + std::to_string(k) + "]";
        if (br.from == br.to) throw InputError(path, "from and to coincide");
        if (net.index_of(br.from) < 0)
            throw InputError(path + ".from", "references unknown bus " + std::to_string(br.from));
        if (net.index_of(br.to) < 0)
            throw InputError(path + ".to", "references unknown bus " + std::to_string(br.to));
        if (br.r * br.r + br.x * br.x <= 0)
            throw InputError(path, "zero-impedance branch");
    }
}

struct AdmittanceMatrix {
    Eigen::MatrixXd g;  // conductance, pu
    Eigen::MatrixXd b;  // susceptance, pu

    int size() const { return static_cast<int>(g.rows()); }
    std::complex<double> operator()(int i, int k) const { return {g(i, k), b(i, k)}; }
};

/// Standard Y-bus assembly for the series-impedance branch model: off-diagonal
/// Y_ik = -y_ik, diagonal Y_ii = sum of incident series admittances.
inline AdmittanceMatrix build_admittance(const Network& net) {
    validate(net);
    const int n = net.size();
    AdmittanceMatrix Y{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    for (const auto& br : net.branches) {
        const double den = br.r * br.r + br.x * br.x;
        const double gs = br.r / den, bs = -br.x / den;  // y = 1 / (r + jx)
        const int i = net.index_of(br.from), k = net.index_of(br.to);
        Y.g(i, k) -= gs;
        Y.g(k, i) -= gs;
        Y.b(i, k) -= bs;
        Y.b(k, i) -= bs;
        Y.g(i, i) += gs;
        Y.g(k, k) += gs;
        Y.b(i, i) += bs;
        Y.b(k, k) += bs;
    }
    return Y;
}

/// Rescale MW/MVAr quantities to per unit on s_base and adjust cost
/// coefficients so that cost($/hr) as a function of the operating point is
/// unchanged. Idempotent.
inline Network to_per_unit(const Network& input) {
    if (input.per_unit) return input;
    Network net = input;
    const double s = net.s_base;
    for (auto& b : net.buses) {
        b.p_load /= s;
        b.q_load /= s;
    }
    for (auto& g : net.generators) {
        g.p_min /= s;
        g.p_max /= s;
        if (g.q_min) *g.q_min /= s;
        if (g.q_max) *g.q_max /= s;
        g.c2 *= s * s;
        g.c1 *= s;
    }
    net.per_unit = true;
    return net;
}

}  // namespace mopf::net
