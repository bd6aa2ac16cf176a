#pragma once

// Moment relaxations of the OPF problem. An order-g relaxation lifts
// monomials of the voltage components (up to degree 2g) into scalar
// variables y_a, constrains the moment matrix and one localizing matrix per
// inequality to be PSD, and minimizes the lifted generation cost. Order 1
// keeps the quadratic cost exact through second-order-cone epigraph blocks.
//
// Equal lower/upper bounds and forced-zero injections become linear
// equalities on y rather than opposing PSD pairs, preserving a strict
// interior for the barrier solver. The reference bus's quadrature voltage is
// eliminated from the variable set, so the angle-reference constraint is
// structural.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mopf/conic.hpp"
#include "mopf/netmodel.hpp"
#include "mopf/opfpoly.hpp"
#include "mopf/poly.hpp"

namespace mopf::moment {

/// All monomials of degree <= order over a fixed variable set, graded lex,
/// constant first.
class MonomialBasis {
public:
    MonomialBasis() = default;
    MonomialBasis(int num_vars, int order) : nvars_(num_vars), order_(order) {
        std::vector<uint8_t> e(static_cast<size_t>(num_vars), 0);
        for (int d = 0; d <= order; ++d) generate(e, 0, d);
        for (size_t i = 0; i < mono_.size(); ++i) index_.emplace(mono_[i], static_cast<int>(i));
    }

    int num_vars() const { return nvars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(mono_.size()); }
    const poly::Monomial& operator[](int i) const { return mono_[static_cast<size_t>(i)]; }
    const std::vector<poly::Monomial>& monomials() const { return mono_; }

    int index_of(const poly::Monomial& m) const {
        auto it = index_.find(m);
        return it == index_.end() ? -1 : it->second;
    }

private:
    void generate(std::vector<uint8_t>& e, int pos, int remaining) {
        if (pos == nvars_ - 1) {
            e[static_cast<size_t>(pos)] = static_cast<uint8_t>(remaining);
            mono_.emplace_back(e);
            e[static_cast<size_t>(pos)] = 0;
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[static_cast<size_t>(pos)] = static_cast<uint8_t>(k);
            generate(e, pos + 1, remaining - k);
        }
        e[static_cast<size_t>(pos)] = 0;
    }

    int nvars_ = 0;
    int order_ = 0;
    std::vector<poly::Monomial> mono_;
    std::unordered_map<poly::Monomial, int, poly::MonomialHash> index_;
};

/// Canonical index for every lifted variable y_a with |a| <= 2*order.
/// Basis-pair products sharing an exponent sum share the index by
/// construction.
class LiftedVariableMap {
public:
    LiftedVariableMap() = default;
    LiftedVariableMap(int num_vars, int order) : basis_(num_vars, 2 * order) {}

    int count() const { return basis_.size(); }
    int order2() const { return basis_.order(); }
    const MonomialBasis& monomials() const { return basis_; }

    int index_of(const poly::Monomial& m) const {
        const int i = basis_.index_of(m);
        if (i < 0)
            throw std::invalid_argument("monomial degree " + std::to_string(m.degree()) +
                                        " exceeds lift order " + std::to_string(basis_.order()));
        return i;
    }

private:
    MonomialBasis basis_;
};

/// Sparse linear function of the lifted variables.
struct LinearForm {
    std::vector<std::pair<int, double>> coeffs;  // sorted by variable index

    double evaluate(const Eigen::VectorXd& y) const {
        double v = 0;
        for (const auto& [i, c] : coeffs) v += c * y(i);
        return v;
    }
};

/// L_y{h}: replace each monomial of h by its lifted variable.
inline LinearForm apply_lift(const poly::Polynomial& h, const LiftedVariableMap& map) {
    std::unordered_map<int, double> acc;
    for (const auto& [m, c] : h.terms()) acc[map.index_of(m)] += c;
    LinearForm f;
    f.coeffs.assign(acc.begin(), acc.end());
    std::sort(f.coeffs.begin(), f.coeffs.end());
    return f;
}

/// Moment matrix structure M_g{y}: entry (i,j) is y_{a_i + a_j}.
inline conic::Block moment_matrix(const MonomialBasis& basis, const LiftedVariableMap& map) {
    const int d = basis.size();
    std::unordered_map<int, Eigen::MatrixXd> acc;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const int k = map.index_of(basis[i] + basis[j]);
            auto [it, fresh] = acc.try_emplace(k, Eigen::MatrixXd::Zero(d, d));
            it->second(i, j) += 1.0;
            if (i != j) it->second(j, i) += 1.0;
        }
    conic::Block blk;
    blk.constant = Eigen::MatrixXd::Zero(d, d);
    blk.terms.assign(acc.begin(), acc.end());
    std::sort(blk.terms.begin(), blk.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return blk;
}

/// Level of the localizing matrix for constraint h at the given relaxation
/// order; rejects orders below half the constraint degree.
inline int localizing_level(int order, const poly::Polynomial& h) {
    const int eta = (h.degree() + 1) / 2;
    if (order < eta)
        throw std::invalid_argument(
            "relaxation order " + std::to_string(order) +
            " too small: the order must be greater than or equal to half the highest "
            "degree among the constraint polynomials (need >= " +
            std::to_string(eta) + ")");
    return order - eta;
}

/// Localizing matrix structure for h >= 0: entry (i,j) is L_y{h x^{a_i+a_j}}.
inline conic::Block localizing_matrix(const poly::Polynomial& h, const MonomialBasis& level_basis,
                                      const LiftedVariableMap& map) {
    const int d = level_basis.size();
    std::unordered_map<int, Eigen::MatrixXd> acc;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const poly::Monomial pair_sum = level_basis[i] + level_basis[j];
            for (const auto& [beta, hb] : h.terms()) {
                const int k = map.index_of(beta + pair_sum);
                auto [it, fresh] = acc.try_emplace(k, Eigen::MatrixXd::Zero(d, d));
                it->second(i, j) += hb;
                if (i != j) it->second(j, i) += hb;
            }
        }
    conic::Block blk;
    blk.constant = Eigen::MatrixXd::Zero(d, d);
    blk.terms.assign(acc.begin(), acc.end());
    std::sort(blk.terms.begin(), blk.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return blk;
}

struct BuildOptions {
    std::optional<double> objective_scale;  // default: max(1, |sum c0|)
};

/// Assembled relaxation plus the bookkeeping needed to interpret solutions.
struct MomentProblem {
    int order = 0;
    poly::VariableLayout layout;
    MonomialBasis basis;       // degree <= order
    LiftedVariableMap lift;    // degree <= 2*order
    conic::ConicProblem conic;
    int num_y = 0;
    int num_aux = 0;           // epigraph variables (order 1)
    std::vector<std::string> block_labels;     // parallel to conic.blocks
    std::vector<std::string> equality_labels;  // parallel to equality rows

    net::Network net_mw;  // original units (cost reporting)
    net::Network net_pu;
    std::vector<int> gen_bus_ids;
    std::vector<LinearForm> gen_p, gen_q;             // L{f_P}, L{f_Q}, pu
    std::vector<poly::Polynomial> f_p, f_q, f_v;      // per bus, pu, reduced vars
    LinearForm cost_lift;                             // L{sum f_C}, $/hr (order >= 2)
    double obj_scale = 1.0;  // conic objective = ($/hr) / obj_scale
    bool penalized = false;

    double s_base() const { return net_mw.s_base; }
};

namespace detail {

inline void append_equality(MomentProblem& mp,
                            std::vector<std::pair<std::vector<std::pair<int, double>>, double>>& rows,
                            const poly::Polynomial& h, const MonomialBasis& eq_basis,
                            const std::string& label) {
    for (int d = 0; d < eq_basis.size(); ++d) {
        std::unordered_map<int, double> acc;
        for (const auto& [beta, hb] : h.terms()) acc[mp.lift.index_of(beta + eq_basis[d])] += hb;
        std::vector<std::pair<int, double>> row(acc.begin(), acc.end());
        std::sort(row.begin(), row.end());
        rows.emplace_back(std::move(row), 0.0);
        mp.equality_labels.push_back(label);
    }
}

// Epigraph of a convex quadratic cost at order 1: for c2 > 0 the rotated
// second-order cone of (omega_i, L{f_P}) embedded as a 3x3 arrow PSD block;
// for c2 = 0 a scalar bound. Coefficients are pre-divided by the objective
// scale.
inline void append_cost_epigraph(MomentProblem& mp, int gen_index, int omega_var) {
    const auto& g = mp.net_pu.generators[static_cast<size_t>(gen_index)];
    const double s = mp.obj_scale;
    const double c2 = g.c2 / s, c1 = g.c1 / s, c0 = g.c0 / s;
    const LinearForm& lp = mp.gen_p[static_cast<size_t>(gen_index)];
    conic::Block blk;
    if (g.c2 > 0) {
        // [[u, v, w], [v, u, 0], [w, 0, u]] PSD  <=>  u >= ||(v, w)||
        // u = 1 - c1 L{f_P} - c0 + omega, v = 1 + c1 L{f_P} + c0 - omega,
        // w = 2 sqrt(c2) L{f_P}
        blk.constant = Eigen::MatrixXd::Zero(3, 3);
        blk.constant(0, 0) = blk.constant(1, 1) = blk.constant(2, 2) = 1.0 - c0;
        blk.constant(0, 1) = blk.constant(1, 0) = 1.0 + c0;
        const double w_scale = 2.0 * std::sqrt(c2);
        for (const auto& [j, coef] : lp.coeffs) {
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
            a(0, 0) = a(1, 1) = a(2, 2) = -c1 * coef;
            a(0, 1) = a(1, 0) = c1 * coef;
            a(0, 2) = a(2, 0) = w_scale * coef;
            blk.terms.emplace_back(j, std::move(a));
        }
        Eigen::MatrixXd aw = Eigen::MatrixXd::Zero(3, 3);
        aw(0, 0) = aw(1, 1) = aw(2, 2) = 1.0;
        aw(0, 1) = aw(1, 0) = -1.0;
        blk.terms.emplace_back(omega_var, std::move(aw));
        mp.block_labels.push_back("cost_soc[" + std::to_string(g.bus) + "]");
    } else {
        // omega >= c1 L{f_P} + c0
        blk.constant = Eigen::MatrixXd::Constant(1, 1, -c0);
        for (const auto& [j, coef] : lp.coeffs)
            blk.terms.emplace_back(j, Eigen::MatrixXd::Constant(1, 1, -c1 * coef));
        blk.terms.emplace_back(omega_var, Eigen::MatrixXd::Identity(1, 1));
        mp.block_labels.push_back("cost_linear[" + std::to_string(g.bus) + "]");
    }
    std::sort(blk.terms.begin(), blk.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    mp.conic.blocks.push_back(std::move(blk));
}

}  // namespace detail

/// Assemble the order-g relaxation of the OPF problem on `net` as a conic
/// problem. Bounds with equal endpoints and forced-zero injections at
/// non-generator buses enter as linear equalities on y.
inline MomentProblem build_relaxation(const net::Network& net_in, const net::AdmittanceMatrix& Y,
                                      int order, const BuildOptions& options = {}) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("relaxation order must be 1, 2, or 3");
    MomentProblem mp;
    mp.order = order;
    mp.net_mw = net_in;  // as given; cost evaluation goes through the pu view
    mp.net_pu = net::to_per_unit(net_in);
    mp.layout = poly::VariableLayout::for_network(mp.net_pu);
    const int m = mp.layout.num_vars();
    mp.basis = MonomialBasis(m, order);
    mp.lift = LiftedVariableMap(m, order);
    mp.num_y = mp.lift.count();

    const auto& net = mp.net_pu;
    const int n = net.size();
    for (int i = 0; i < n; ++i) {
        const int id = net.buses[static_cast<size_t>(i)].id;
        mp.f_p.push_back(poly::active_injection(net, Y, id, mp.layout));
        mp.f_q.push_back(poly::reactive_injection(net, Y, id, mp.layout));
        mp.f_v.push_back(poly::voltage_magnitude_sq(i, mp.layout));
    }
    for (size_t g = 0; g < net.generators.size(); ++g) {
        const int i = net.index_of(net.generators[g].bus);
        mp.gen_bus_ids.push_back(net.generators[g].bus);
        mp.gen_p.push_back(apply_lift(mp.f_p[static_cast<size_t>(i)], mp.lift));
        mp.gen_q.push_back(apply_lift(mp.f_q[static_cast<size_t>(i)], mp.lift));
    }

    double c0_sum = 0;
    for (const auto& g : net.generators) c0_sum += g.c0;
    mp.obj_scale = options.objective_scale.value_or(std::max(1.0, std::abs(c0_sum)));

    mp.num_aux = 0;
    if (order == 1)
        mp.num_aux = static_cast<int>(net.generators.size());
    mp.conic.num_vars = mp.num_y + mp.num_aux;

    // moment block
    mp.conic.blocks.push_back(moment_matrix(mp.basis, mp.lift));
    mp.block_labels.push_back("moment");

    // constraint roster
    const MonomialBasis loc_basis(m, order - 1);
    const MonomialBasis eq_basis(m, 2 * (order - 1));
    std::vector<std::pair<std::vector<std::pair<int, double>>, double>> eq_rows;

    // y_0 = 1
    eq_rows.push_back({{{0, 1.0}}, 1.0});
    mp.equality_labels.push_back("y0");

    const double eq_eps = 1e-12;
    auto add_one_sided = [&](const poly::Polynomial& h, const std::string& label) {
        const int level = localizing_level(order, h);
        mp.conic.blocks.push_back(
            localizing_matrix(h, level == order - 1 ? loc_basis : MonomialBasis(m, level),
                              mp.lift));
        mp.block_labels.push_back(label);
    };
    auto add_lower = [&](const poly::Polynomial& f, double lo, const std::string& label) {
        add_one_sided(f - poly::Polynomial::constant(m, lo), label);
    };
    auto add_upper = [&](const poly::Polynomial& f, double hi, const std::string& label) {
        add_one_sided(poly::Polynomial::constant(m, hi) - f, label);
    };
    auto add_equality = [&](const poly::Polynomial& h, const std::string& label) {
        detail::append_equality(mp, eq_rows, h, eq_basis, label);
    };

    for (int i = 0; i < n; ++i) {
        const auto& bus = net.buses[static_cast<size_t>(i)];
        const std::string id = std::to_string(bus.id);
        const int g = net.generator_at(bus.id);
        const auto& fp = mp.f_p[static_cast<size_t>(i)];
        const auto& fq = mp.f_q[static_cast<size_t>(i)];
        const auto& fv = mp.f_v[static_cast<size_t>(i)];

        if (g < 0) {
            add_equality(fp, "P_zero[" + id + "]");
            add_equality(fq, "Q_zero[" + id + "]");
        } else {
            const auto& gen = net.generators[static_cast<size_t>(g)];
            if (std::abs(gen.p_max - gen.p_min) <= eq_eps * std::max(1.0, std::abs(gen.p_max))) {
                add_equality(fp - poly::Polynomial::constant(m, gen.p_min), "P_fix[" + id + "]");
            } else {
                add_lower(fp, gen.p_min, "P_min[" + id + "]");
                add_upper(fp, gen.p_max, "P_max[" + id + "]");
            }
            if (gen.q_min && gen.q_max &&
                std::abs(*gen.q_max - *gen.q_min) <= eq_eps * std::max(1.0, std::abs(*gen.q_max))) {
                add_equality(fq - poly::Polynomial::constant(m, *gen.q_min), "Q_fix[" + id + "]");
            } else {
                if (gen.q_min) add_lower(fq, *gen.q_min, "Q_min[" + id + "]");
                if (gen.q_max) add_upper(fq, *gen.q_max, "Q_max[" + id + "]");
            }
        }

        const double vlo = bus.v_min * bus.v_min, vhi = bus.v_max * bus.v_max;
        if (std::abs(vhi - vlo) <= eq_eps * std::max(1.0, vhi)) {
            add_equality(fv - poly::Polynomial::constant(m, vlo), "V_fix[" + id + "]");
        } else {
            add_lower(fv, vlo, "V_min[" + id + "]");
            add_upper(fv, vhi, "V_max[" + id + "]");
        }
    }

    // objective
    mp.conic.objective = Eigen::VectorXd::Zero(mp.conic.num_vars);
    if (order >= 2) {
        poly::Polynomial total_cost(m);
        for (const auto& gen : net.generators)
            total_cost += poly::generation_cost(net, Y, gen.bus, mp.layout);
        mp.cost_lift = apply_lift(total_cost, mp.lift);
        for (const auto& [j, c] : mp.cost_lift.coeffs) mp.conic.objective(j) = c / mp.obj_scale;
    } else {
        for (size_t g = 0; g < net.generators.size(); ++g) {
            const int omega = mp.num_y + static_cast<int>(g);
            detail::append_cost_epigraph(mp, static_cast<int>(g), omega);
            mp.conic.objective(omega) = 1.0;
        }
    }

    // materialize equality rows
    const int q = static_cast<int>(eq_rows.size());
    mp.conic.eq_lhs = Eigen::MatrixXd::Zero(q, mp.conic.num_vars);
    mp.conic.eq_rhs = Eigen::VectorXd::Zero(q);
    for (int r = 0; r < q; ++r) {
        for (const auto& [j, c] : eq_rows[static_cast<size_t>(r)].first)
            mp.conic.eq_lhs(r, j) += c;
        mp.conic.eq_rhs(r) = eq_rows[static_cast<size_t>(r)].second;
    }
    return mp;
}

/// Append the grid-point constraint L_y{f_Pi} = p at a generator bus.
inline MomentProblem pin_injection(const MomentProblem& base, int bus_id, double p_mw) {
    int g = -1;
    for (size_t k = 0; k < base.gen_bus_ids.size(); ++k)
        if (base.gen_bus_ids[k] == bus_id) g = static_cast<int>(k);
    if (g < 0)
        throw std::invalid_argument("no generator at bus " + std::to_string(bus_id));
    MomentProblem mp = base;
    const int q = mp.conic.num_equalities();
    mp.conic.eq_lhs.conservativeResize(q + 1, Eigen::NoChange);
    mp.conic.eq_lhs.row(q).setZero();
    for (const auto& [j, c] : mp.gen_p[static_cast<size_t>(g)].coeffs) mp.conic.eq_lhs(q, j) = c;
    mp.conic.eq_rhs.conservativeResize(q + 1);
    mp.conic.eq_rhs(q) = p_mw / mp.s_base();
    mp.equality_labels.push_back("pin_P[" + std::to_string(bus_id) + "]");
    return mp;
}

/// Add epsilon * sum_i L_y{f_Qi} over generators to the order-1 objective.
/// The result is a penalized problem, no longer a relaxation.
inline MomentProblem add_reactive_penalty(const MomentProblem& base, double eps_usd_per_mvar_hr) {
    if (base.order != 1)
        throw std::invalid_argument("reactive penalization applies to the order-1 relaxation");
    if (eps_usd_per_mvar_hr < 0) throw std::invalid_argument("penalty coefficient must be >= 0");
    MomentProblem mp = base;
    const double w = eps_usd_per_mvar_hr * mp.s_base() / mp.obj_scale;
    for (const auto& lq : mp.gen_q)
        for (const auto& [j, c] : lq.coeffs) mp.conic.objective(j) += w * c;
    mp.penalized = eps_usd_per_mvar_hr > 0;
    return mp;
}

struct RankVerdict {
    bool rank1 = false;
    double ratio = 1.0;                 // lambda_2 / lambda_1
    std::vector<double> eigenvalues;    // descending
};

/// Numeric moment matrix M_g at the solved y.
inline Eigen::MatrixXd moment_matrix_value(const MomentProblem& mp, const Eigen::VectorXd& y) {
    const int d = mp.basis.size();
    Eigen::MatrixXd M(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double v = y(mp.lift.index_of(mp.basis[i] + mp.basis[j]));
            M(i, j) = v;
            M(j, i) = v;
        }
    return M;
}

inline RankVerdict check_rank(const MomentProblem& mp, const Eigen::VectorXd& y,
                              double tol_ratio = 1e-4) {
    RankVerdict v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(moment_matrix_value(mp, y),
                                                      Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    for (int i = ev.size() - 1; i >= 0; --i) v.eigenvalues.push_back(ev(i));
    if (v.eigenvalues.empty() || v.eigenvalues[0] <= 0) return v;
    v.ratio = v.eigenvalues.size() > 1 ? std::max(0.0, v.eigenvalues[1]) / v.eigenvalues[0] : 0.0;
    v.rank1 = v.ratio <= tol_ratio;
    return v;
}

struct ExtractedPoint {
    std::vector<double> x;                    // reduced voltage components
    std::vector<std::complex<double>> v;      // per bus
    double lambda = 0;                        // dominant second-moment eigenvalue
};

/// Spectral extraction from the |a| = 2 diagonal block of M_1{y}: the
/// dominant eigenpair gives x = sqrt(lambda) eta, with the global sign fixed
/// by the reference bus's direct component. Only valid under the rank
/// condition; callers must check first.
inline ExtractedPoint extract_voltages(const MomentProblem& mp, const Eigen::VectorXd& y) {
    const int m = mp.layout.num_vars();
    Eigen::MatrixXd D(m, m);
    for (int i = 0; i < m; ++i) {
        poly::Monomial ei(m);
        ei[i] = 1;
        for (int j = i; j < m; ++j) {
            poly::Monomial ej(m);
            ej[j] = 1;
            const double v = y(mp.lift.index_of(ei + ej));
            D(i, j) = v;
            D(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
    const int last = m - 1;
    const double lambda = std::max(0.0, es.eigenvalues()(last));
    Eigen::VectorXd x = std::sqrt(lambda) * es.eigenvectors().col(last);
    if (x(mp.layout.d_index(mp.layout.ref_index)) < 0) x = -x;

    ExtractedPoint pt;
    pt.lambda = lambda;
    pt.x.assign(x.data(), x.data() + m);
    for (int b = 0; b < mp.layout.n_buses; ++b) {
        const int qi = mp.layout.q_index(b);
        pt.v.emplace_back(x(mp.layout.d_index(b)), qi >= 0 ? x(qi) : 0.0);
    }
    return pt;
}

/// Extraction with the rank gate enforced, as the public entry point.
inline ExtractedPoint extract_voltages(const MomentProblem& mp, const Eigen::VectorXd& y,
                                       const RankVerdict& verdict) {
    if (!verdict.rank1)
        throw std::logic_error("rank condition not satisfied; refusing voltage extraction");
    return extract_voltages(mp, y);
}

struct RelaxationResult {
    conic::SolveStatus status = conic::SolveStatus::numerical_failure;
    double objective = 0;  // $/hr; a lower bound unless `penalized`
    Eigen::VectorXd y;
    std::vector<double> moment_eigenvalues;
    double rank_ratio = 1.0;
    bool rank1 = false;
    std::optional<ExtractedPoint> extracted;
    std::vector<double> gen_p_mw;    // L_y{f_P} per generator
    std::vector<double> gen_q_mvar;  // L_y{f_Q} per generator
    bool penalized = false;
    conic::ConicSolution conic;
};

inline RelaxationResult solve_relaxation(const MomentProblem& mp,
                                         const conic::SolveSettings& settings = {},
                                         double tol_rank = 1e-4) {
    RelaxationResult out;
    out.penalized = mp.penalized;
    out.conic = conic::solve(mp.conic, settings);
    out.status = out.conic.status;
    if (out.status != conic::SolveStatus::optimal) return out;

    out.y = out.conic.y.head(mp.num_y);
    out.objective = out.conic.objective * mp.obj_scale;
    for (size_t g = 0; g < mp.gen_p.size(); ++g) {
        out.gen_p_mw.push_back(mp.gen_p[g].evaluate(out.y) * mp.s_base());
        out.gen_q_mvar.push_back(mp.gen_q[g].evaluate(out.y) * mp.s_base());
    }
    auto verdict = check_rank(mp, out.y, tol_rank);
    out.moment_eigenvalues = verdict.eigenvalues;
    out.rank_ratio = verdict.ratio;
    out.rank1 = verdict.rank1;
    if (out.rank1) out.extracted = extract_voltages(mp, out.y, verdict);
    return out;
}

/// Cost ($/hr) of an operating point given in MW; accepts the network in
/// either unit system.
inline double true_cost(const net::Network& net_any, const std::vector<double>& p_mw) {
    const net::Network net = net::to_per_unit(net_any);
    double c = 0;
    for (size_t g = 0; g < net.generators.size(); ++g) {
        const auto& gen = net.generators[g];
        const double p = p_mw[g] / net.s_base;
        c += gen.c2 * p * p + gen.c1 * p + gen.c0;
    }
    return c;
}

}  // namespace mopf::moment
