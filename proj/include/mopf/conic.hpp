#pragma once

// Dense primal-dual interior-point solver for LMI-form conic problems:
//
//   minimize    c' y
//   subject to  C_b + sum_j y_j A_{b,j}  PSD   for each block b
//               E y = d
//
// Equalities are eliminated up front through a null-space substitution
// y = y_p + N z; the barrier method then runs on the equality-free problem.
// Search directions follow the HKM predictor-corrector scheme with the
// slack S(z) kept exactly equal to the affine map of the iterate.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mopf::conic {

struct Block {
    Eigen::MatrixXd constant;                            // symmetric
    std::vector<std::pair<int, Eigen::MatrixXd>> terms;  // (variable, symmetric coefficient)

    int dim() const { return static_cast<int>(constant.rows()); }

    Eigen::MatrixXd evaluate(const Eigen::VectorXd& y) const {
        Eigen::MatrixXd s = constant;
        for (const auto& [j, a] : terms) s += y(j) * a;
        return s;
    }
};

struct ConicProblem {
    int num_vars = 0;
    Eigen::VectorXd objective;          // length num_vars
    double objective_constant = 0.0;
    std::vector<Block> blocks;
    Eigen::MatrixXd eq_lhs;             // rows x num_vars (may have 0 rows)
    Eigen::VectorXd eq_rhs;

    int num_equalities() const { return static_cast<int>(eq_lhs.rows()); }

    double objective_value(const Eigen::VectorXd& y) const {
        return objective.dot(y) + objective_constant;
    }
};

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::numerical_failure: return "numerical-failure";
    }
    return "?";
}

struct IterateStat {
    double mu = 0, primal_obj = 0, dual_obj = 0, dual_resid = 0, primal_resid = 0;
};

struct ConicSolution {
    SolveStatus status = SolveStatus::numerical_failure;
    Eigen::VectorXd y;
    double objective = 0;
    double dual_objective = 0;
    double duality_gap = 0;
    std::vector<double> block_min_eig;
    double equality_residual = 0;
    int iterations = 0;
    std::vector<IterateStat> trace;
    std::string message;
};

struct SolveSettings {
    double gap_tol = 1e-8;        // relative duality gap
    double feas_tol = 1e-8;       // scaled dual residual / PSD slack
    int max_iters = 200;
    double tau = 0.98;            // fraction-to-boundary
    double infeas_threshold = 1e-7;   // phase-1 shift above this => infeasible
    double phase1_cap = 10.0;     // lower cap on the phase-1 shift variable
    double unbounded_objective = -1e12;
    bool collect_trace = false;
};

struct Reduction {
    ConicProblem problem;        // equality-free
    Eigen::MatrixXd null_basis;  // num_vars x reduced_dim, orthonormal columns
    Eigen::VectorXd particular;  // satisfies E y = d (min-norm)
    bool consistent = true;
    int rank = 0;

    Eigen::VectorXd recover(const Eigen::VectorXd& z) const {
        if (z.size() == 0) return particular;
        return particular + null_basis * z;
    }
};

/// Eliminate E y = d via SVD: y = y_p + N z with N an orthonormal null-space
/// basis. Detects inconsistent systems. Redundant rows are harmless.
inline Reduction reduce_equalities(const ConicProblem& p) {
    Reduction red;
    const int n = p.num_vars;
    if (p.num_equalities() == 0) {
        red.problem = p;
        red.null_basis = Eigen::MatrixXd::Identity(n, n);
        red.particular = Eigen::VectorXd::Zero(n);
        red.rank = 0;
        return red;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.eq_lhs,
                                          Eigen::ComputeThinU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double thresh = smax * 1e-10;
    int r = 0;
    while (r < sv.size() && sv(r) > thresh) ++r;
    red.rank = r;

    Eigen::VectorXd yp = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < r; ++i)
        yp += (svd.matrixU().col(i).dot(p.eq_rhs) / sv(i)) * svd.matrixV().col(i);
    red.particular = yp;
    const double resid = (p.eq_lhs * yp - p.eq_rhs).lpNorm<Eigen::Infinity>();
    if (resid > 1e-8 * (1.0 + p.eq_rhs.lpNorm<Eigen::Infinity>())) {
        red.consistent = false;
        return red;
    }
    const int pdim = n - r;
    red.null_basis = svd.matrixV().rightCols(pdim);

    ConicProblem q;
    q.num_vars = pdim;
    q.objective = red.null_basis.transpose() * p.objective;
    q.objective_constant = p.objective_constant + p.objective.dot(yp);
    q.blocks.reserve(p.blocks.size());
    for (const auto& blk : p.blocks) {
        Block nb;
        nb.constant = blk.constant;
        std::vector<Eigen::MatrixXd> acc(static_cast<size_t>(pdim));
        for (auto& a : acc) a = Eigen::MatrixXd::Zero(blk.dim(), blk.dim());
        for (const auto& [j, a] : blk.terms) {
            nb.constant += yp(j) * a;
            for (int k = 0; k < pdim; ++k) {
                const double w = red.null_basis(j, k);
                if (w != 0.0) acc[static_cast<size_t>(k)] += w * a;
            }
        }
        nb.terms.reserve(static_cast<size_t>(pdim));
        for (int k = 0; k < pdim; ++k)
            nb.terms.emplace_back(k, std::move(acc[static_cast<size_t>(k)]));
        q.blocks.push_back(std::move(nb));
    }
    red.problem = std::move(q);
    return red;
}

/// Restrict each block to the orthogonal complement of the common null space
/// of its affine map. Equality-constrained moment problems force structural
/// singularity into the PSD blocks (every polynomial identity on the feasible
/// set kills a fixed direction); after the equality substitution those
/// directions appear as a common kernel of the block's constant and
/// coefficient matrices. Removing them restores a strict interior for the
/// barrier method. Blocks reduced to nothing are dropped.
inline void facial_reduce(ConicProblem& q) {
    std::vector<Block> kept;
    kept.reserve(q.blocks.size());
    for (auto& blk : q.blocks) {
        const int d = blk.dim();
        Eigen::MatrixXd gram = blk.constant.transpose() * blk.constant;
        for (const auto& [j, a] : blk.terms) gram += a.transpose() * a;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
        // structural kernels sit at the squared noise floor, many orders
        // below any data direction
        const double thresh = lmax * 1e-12;
        int nullity = 0;
        while (nullity < d && es.eigenvalues()(nullity) <= thresh) ++nullity;
        if (nullity == 0) {
            kept.push_back(std::move(blk));
            continue;
        }
        if (nullity == d) continue;  // identically zero on the subspace
        const Eigen::MatrixXd Q = es.eigenvectors().rightCols(d - nullity);
        Block nb;
        nb.constant = Q.transpose() * blk.constant * Q;
        nb.terms.reserve(blk.terms.size());
        for (const auto& [j, a] : blk.terms)
            nb.terms.emplace_back(j, (Q.transpose() * a * Q).eval());
        kept.push_back(std::move(nb));
    }
    q.blocks = std::move(kept);
}

namespace detail {

/// Second facial-reduction stage: cut block directions whose slack
/// eigenvalue vanishes at a relative-interior witness point (the phase-1
/// analytic center). Catches singularity forced jointly by the equalities
/// and the PSD constraints, which the affine-kernel pass cannot see.
/// Returns the number of directions removed.
inline int facial_reduce_at_witness(ConicProblem& q, const Eigen::VectorXd& z) {
    int removed = 0;
    std::vector<Block> kept;
    kept.reserve(q.blocks.size());
    for (auto& blk : q.blocks) {
        const int d = blk.dim();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk.evaluate(z));
        const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
        const double cut = 1e-7 * std::max(1.0, lmax);
        int nullity = 0;
        while (nullity < d && es.eigenvalues()(nullity) <= cut) ++nullity;
        if (nullity == 0) {
            kept.push_back(std::move(blk));
            continue;
        }
        removed += nullity;
        if (nullity == d) continue;
        const Eigen::MatrixXd Q = es.eigenvectors().rightCols(d - nullity);
        Block nb;
        nb.constant = Q.transpose() * blk.constant * Q;
        nb.terms.reserve(blk.terms.size());
        for (const auto& [j, a] : blk.terms)
            nb.terms.emplace_back(j, (Q.transpose() * a * Q).eval());
        kept.push_back(std::move(nb));
    }
    q.blocks = std::move(kept);
    return removed;
}

/// Largest t with M + t dM PSD (M given by its Cholesky factor).
inline double max_step(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& dM) {
    const auto& L = llt.matrixL();
    Eigen::MatrixXd t = L.solve(dM);
    Eigen::MatrixXd w = L.solve(t.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

inline double min_eig(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

struct IpmResult {
    SolveStatus status = SolveStatus::numerical_failure;
    Eigen::VectorXd z;
    double primal_obj = 0, dual_obj = 0, dual_resid = 0;
    int iterations = 0;
    std::vector<IterateStat> trace;
    bool early_stopped = false;
    std::string message;
};

/// Infeasible-start HKM predictor-corrector on an equality-free problem. The
/// slack S is a free PSD iterate; the residual F(z) - S is folded into the
/// search direction and contracts by (1 - step) per iteration. This tolerates
/// problems whose feasible set has an empty interior (moment relaxations with
/// structural rank deficiency), where an exactly-feasible barrier iteration
/// could not move at all.
inline IpmResult ipm(const ConicProblem& p, const Eigen::VectorXd& z0,
                     const SolveSettings& st,
                     std::optional<double> early_stop_objective = std::nullopt) {
    IpmResult res;
    const int nvar = p.num_vars;
    const size_t nblk = p.blocks.size();
    int total_dim = 0;
    double cnorm = 1.0 + p.objective.lpNorm<Eigen::Infinity>();
    double fnorm = 1.0;
    for (const auto& b : p.blocks) {
        total_dim += b.dim();
        fnorm = std::max(fnorm, b.constant.cwiseAbs().maxCoeff());
    }

    Eigen::VectorXd z = z0;
    std::vector<Eigen::MatrixXd> X(nblk), S(nblk), Sinv(nblk), Rp(nblk);
    std::vector<Eigen::LLT<Eigen::MatrixXd>> Sllt(nblk), Xllt(nblk);
    for (size_t b = 0; b < nblk; ++b) {
        const int d = p.blocks[b].dim();
        X[b] = Eigen::MatrixXd::Identity(d, d);
        // start the slack at F(z0) pushed into the cone
        Eigen::MatrixXd f0 = p.blocks[b].evaluate(z);
        const double lmin = min_eig(f0);
        const double pad = std::max(0.0, -lmin) + std::max(0.1, 0.1 * std::abs(lmin));
        S[b] = f0 + pad * Eigen::MatrixXd::Identity(d, d);
    }

    double mu_prev_window = std::numeric_limits<double>::infinity();
    double best_score = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter <= st.max_iters; ++iter) {
        bool chol_ok = true;
        for (size_t b = 0; b < nblk; ++b) {
            Rp[b] = p.blocks[b].evaluate(z) - S[b];
            Sllt[b].compute(S[b]);
            if (Sllt[b].info() != Eigen::Success) chol_ok = false;
        }
        if (!chol_ok) {
            res.message = "slack lost positive definiteness";
            res.status = SolveStatus::numerical_failure;
            if (res.z.size() == 0) {
                res.z = z;
                res.iterations = iter;
            }
            return res;
        }
        for (size_t b = 0; b < nblk; ++b)
            Sinv[b] = Sllt[b].solve(Eigen::MatrixXd::Identity(S[b].rows(), S[b].cols()));

        const double pobj = p.objective.dot(z) + p.objective_constant;
        double dobj = p.objective_constant;
        double mu = 0, pres = 0;
        for (size_t b = 0; b < nblk; ++b) {
            dobj -= p.blocks[b].constant.cwiseProduct(X[b]).sum();
            mu += S[b].cwiseProduct(X[b]).sum();
            if (Rp[b].size() > 0) pres = std::max(pres, Rp[b].cwiseAbs().maxCoeff());
        }
        mu /= std::max(1, total_dim);
        pres /= fnorm;

        Eigen::VectorXd rd = p.objective;
        double xnorm = 0;
        for (size_t b = 0; b < nblk; ++b) {
            xnorm = std::max(xnorm, X[b].cwiseAbs().maxCoeff());
            for (const auto& [j, a] : p.blocks[b].terms) rd(j) -= a.cwiseProduct(X[b]).sum();
        }
        const double dres = rd.lpNorm<Eigen::Infinity>() / (cnorm + xnorm);
        const double relgap = (pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        if (st.collect_trace) res.trace.push_back({mu, pobj, dobj, dres, pres});
        const double score =
            std::max({std::abs(relgap) / st.gap_tol, dres / st.feas_tol, pres / st.feas_tol});
        if (score < best_score) {
            best_score = score;
            res.primal_obj = pobj;
            res.dual_obj = dobj;
            res.dual_resid = dres;
            res.z = z;
            res.iterations = iter;
        }

        if (score <= 1.0) {
            res.status = SolveStatus::optimal;
            return res;
        }
        if (early_stop_objective && pobj <= *early_stop_objective && dres <= 1e-4 &&
            pres <= 1e-9) {
            res.primal_obj = pobj;
            res.z = z;
            res.iterations = iter;
            res.status = SolveStatus::optimal;
            res.early_stopped = true;
            return res;
        }
        if (pobj < st.unbounded_objective && pres <= st.feas_tol) {
            res.status = SolveStatus::unbounded;
            res.message = "objective diverging below bound";
            return res;
        }
        if (iter == st.max_iters) break;
        // late-stage breakdown: once complementarity is tiny the dual iterate
        // can drift on degenerate problems; stop at the best iterate seen
        if (best_score < std::numeric_limits<double>::infinity() && score > 1e4 * best_score &&
            mu < 1e-9 * (1.0 + std::abs(pobj)))
            break;
        if (iter % 15 == 0) {
            if (iter >= 30 && mu > 0.9 * mu_prev_window && pres <= st.feas_tol) {
                res.status = SolveStatus::numerical_failure;
                res.message = "no progress in complementarity";
                return res;
            }
            mu_prev_window = mu;
        }

        // Schur complement  B_jk = tr(A_j X A_k S^-1),  a_j = tr(A_j S^-1),
        // residual term  t_j = tr(A_j X Rp S^-1)
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nvar, nvar);
        Eigen::VectorXd avec = Eigen::VectorXd::Zero(nvar);
        Eigen::VectorXd tvec = Eigen::VectorXd::Zero(nvar);
        std::vector<std::vector<Eigen::MatrixXd>> W(nblk);
        for (size_t b = 0; b < nblk; ++b) {
            const auto& terms = p.blocks[b].terms;
            const Eigen::MatrixXd XRpSinv = X[b] * Rp[b] * Sinv[b];
            W[b].resize(terms.size());
            for (size_t e = 0; e < terms.size(); ++e) {
                avec(terms[e].first) += terms[e].second.cwiseProduct(Sinv[b]).sum();
                tvec(terms[e].first) += terms[e].second.cwiseProduct(XRpSinv.transpose()).sum();
                W[b][e] = X[b] * terms[e].second * Sinv[b];
            }
            for (size_t e = 0; e < terms.size(); ++e)
                for (size_t f = e; f < terms.size(); ++f) {
                    const double v = terms[e].second.cwiseProduct(W[b][f].transpose()).sum();
                    B(terms[e].first, terms[f].first) += v;
                    if (terms[e].first != terms[f].first)
                        B(terms[f].first, terms[e].first) += v;
                }
        }

        B = (0.5 * (B + B.transpose())).eval();
        Eigen::LLT<Eigen::MatrixXd> Bllt(B);
        if (Bllt.info() != Eigen::Success) {
            const double ridge = 1e-12 * std::max(1.0, B.diagonal().maxCoeff());
            for (int attempt = 0; attempt < 4 && Bllt.info() != Eigen::Success; ++attempt)
                Bllt.compute(B + ridge * std::pow(10.0, attempt) *
                                     Eigen::MatrixXd::Identity(nvar, nvar));
            if (Bllt.info() != Eigen::Success) {
                res.status = SolveStatus::numerical_failure;
                res.message = "Schur complement factorization failed";
                return res;
            }
        }
        auto schur_solve = [&](const Eigen::VectorXd& rhs) { return Bllt.solve(rhs); };

        for (size_t b = 0; b < nblk; ++b) {
            Xllt[b].compute(X[b]);
            if (Xllt[b].info() != Eigen::Success) {
                res.status = SolveStatus::numerical_failure;
                res.message = "dual iterate lost positive definiteness";
                return res;
            }
        }

        auto assemble_dS = [&](const Eigen::VectorXd& dz) {
            std::vector<Eigen::MatrixXd> dS(nblk);
            for (size_t b = 0; b < nblk; ++b) {
                dS[b] = Rp[b];
                for (const auto& [j, a] : p.blocks[b].terms) dS[b] += dz(j) * a;
            }
            return dS;
        };

        // predictor (affine scaling)
        Eigen::VectorXd dz_aff = schur_solve(-p.objective - tvec);
        auto dS_aff = assemble_dS(dz_aff);
        std::vector<Eigen::MatrixXd> dX_aff(nblk);
        for (size_t b = 0; b < nblk; ++b) {
            Eigen::MatrixXd t = X[b] * dS_aff[b] * Sinv[b];
            dX_aff[b] = -X[b] - 0.5 * (t + t.transpose());
        }
        double ap_aff = 1.0, ad_aff = 1.0;
        for (size_t b = 0; b < nblk; ++b) {
            ap_aff = std::min(ap_aff, max_step(Xllt[b], dX_aff[b]));
            ad_aff = std::min(ad_aff, max_step(Sllt[b], dS_aff[b]));
        }
        double mu_aff = 0;
        for (size_t b = 0; b < nblk; ++b) {
            mu_aff += S[b].cwiseProduct(X[b]).sum();
            mu_aff += ap_aff * S[b].cwiseProduct(dX_aff[b]).sum();
            mu_aff += ad_aff * X[b].cwiseProduct(dS_aff[b]).sum();
            mu_aff += ap_aff * ad_aff * dS_aff[b].cwiseProduct(dX_aff[b]).sum();
        }
        mu_aff = std::max(0.0, mu_aff / std::max(1, total_dim));
        double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
        sigma = std::clamp(sigma, 1e-8, 1.0);

        // corrector
        Eigen::VectorXd rhs = sigma * mu * avec - p.objective - tvec;
        std::vector<Eigen::MatrixXd> corr(nblk);
        for (size_t b = 0; b < nblk; ++b) {
            corr[b] = dX_aff[b] * dS_aff[b] * Sinv[b];
            for (const auto& [j, a] : p.blocks[b].terms)
                rhs(j) -= a.cwiseProduct(corr[b].transpose()).sum();
        }
        Eigen::VectorXd dz = schur_solve(rhs);
        auto dS = assemble_dS(dz);
        std::vector<Eigen::MatrixXd> dX(nblk);
        for (size_t b = 0; b < nblk; ++b) {
            Eigen::MatrixXd t = X[b] * dS[b] * Sinv[b] + corr[b];
            dX[b] = sigma * mu * Sinv[b] - X[b] - 0.5 * (t + t.transpose());
        }

        double ap = 1.0, ad = 1.0;
        for (size_t b = 0; b < nblk; ++b) {
            ap = std::min(ap, st.tau * max_step(Xllt[b], dX[b]));
            ad = std::min(ad, st.tau * max_step(Sllt[b], dS[b]));
        }
        ap = std::min(ap, 1.0);
        ad = std::min(ad, 1.0);

        // backtrack on Cholesky failure (finite-precision boundary overshoot)
        auto psd_after = [&](double a, const std::vector<Eigen::MatrixXd>& M,
                             const std::vector<Eigen::MatrixXd>& dM) {
            for (size_t b = 0; b < nblk; ++b) {
                Eigen::LLT<Eigen::MatrixXd> llt(M[b] + a * dM[b]);
                if (llt.info() != Eigen::Success) return false;
            }
            return true;
        };
        int guard = 0;
        while (!psd_after(ap, X, dX) && guard++ < 40) ap *= 0.8;
        guard = 0;
        while (!psd_after(ad, S, dS) && guard++ < 40) ad *= 0.8;
        if (ap <= 1e-12 || ad <= 1e-12) {
            res.status = SolveStatus::numerical_failure;
            res.message = "step length collapsed";
            return res;
        }

        z += ad * dz;
        for (size_t b = 0; b < nblk; ++b) {
            S[b] += ad * dS[b];
            S[b] = 0.5 * (S[b] + S[b].transpose()).eval();
            X[b] += ap * dX[b];
            X[b] = 0.5 * (X[b] + X[b].transpose()).eval();
        }
    }

    res.status = SolveStatus::numerical_failure;
    res.message = "stopped without reaching the requested tolerances (best score " +
                  std::to_string(best_score) + "x tolerance)";
    return res;
}

struct Phase1Result {
    SolveStatus status = SolveStatus::numerical_failure;
    double shift = std::numeric_limits<double>::infinity();  // optimal s
    Eigen::VectorXd z;                                       // without the shift variable
    int iterations = 0;
    std::string message;
};

/// Phase-1: minimize s subject to F_b(z) + s I PSD (plus a cap s >= -cap).
/// Always strictly feasible by construction of the start point.
inline Phase1Result phase1(const ConicProblem& p, const SolveSettings& st,
                           std::optional<double> early_stop = std::nullopt) {
    const int nvar = p.num_vars;
    ConicProblem q;
    q.num_vars = nvar + 1;
    q.objective = Eigen::VectorXd::Zero(nvar + 1);
    q.objective(nvar) = 1.0;
    q.blocks.reserve(p.blocks.size() + 1);
    for (const auto& blk : p.blocks) {
        Block nb;
        nb.constant = blk.constant;
        nb.terms = blk.terms;
        nb.terms.emplace_back(nvar, Eigen::MatrixXd::Identity(blk.dim(), blk.dim()));
        q.blocks.push_back(std::move(nb));
    }
    Block cap;
    cap.constant = Eigen::MatrixXd::Constant(1, 1, st.phase1_cap);
    cap.terms.emplace_back(nvar, Eigen::MatrixXd::Identity(1, 1));
    q.blocks.push_back(std::move(cap));

    double lmin = std::numeric_limits<double>::infinity();
    for (const auto& blk : p.blocks) lmin = std::min(lmin, min_eig(blk.constant));
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(nvar + 1);
    z0(nvar) = std::max(0.0, -lmin) + std::max(1.0, 0.1 * std::abs(lmin));

    SolveSettings pst = st;
    pst.collect_trace = false;
    auto r = ipm(q, z0, pst, early_stop);
    Phase1Result out;
    out.status = r.status;
    out.iterations = r.iterations;
    out.message = r.message;
    if (r.z.size() == nvar + 1) {
        out.shift = r.z(nvar);
        out.z = r.z.head(nvar);
    }
    return out;
}

}  // namespace detail

struct FeasibilityReport {
    bool feasible = false;
    double margin = -std::numeric_limits<double>::infinity();
    SolveStatus status = SolveStatus::numerical_failure;
};

/// Phase-1 feasibility certificate: solves min s with all blocks shifted by
/// s I. Feasible iff the optimal shift stays below the threshold; margin is
/// the negated shift (capped by settings.phase1_cap).
inline FeasibilityReport certify_feasibility(const ConicProblem& p,
                                             const SolveSettings& settings = {}) {
    FeasibilityReport rep;
    auto red = reduce_equalities(p);
    if (!red.consistent) {
        rep.feasible = false;
        rep.status = SolveStatus::infeasible;
        return rep;
    }
    facial_reduce(red.problem);
    if (red.problem.num_vars == 0) {
        double lmin = std::numeric_limits<double>::infinity();
        for (const auto& blk : red.problem.blocks) lmin = std::min(lmin, detail::min_eig(blk.constant));
        rep.margin = lmin;
        rep.feasible = lmin >= -settings.infeas_threshold;
        rep.status = SolveStatus::optimal;
        return rep;
    }
    auto ph = detail::phase1(red.problem, settings);
    rep.status = ph.status;
    if (ph.status != SolveStatus::optimal) return rep;
    rep.margin = -ph.shift;
    rep.feasible = ph.shift <= settings.infeas_threshold;
    return rep;
}

/// Full solve: equality elimination, phase-1 initialization when needed, then
/// the HKM predictor-corrector iteration.
inline ConicSolution solve(const ConicProblem& p, const SolveSettings& settings = {}) {
    ConicSolution sol;
    auto red = reduce_equalities(p);
    if (!red.consistent) {
        sol.status = SolveStatus::infeasible;
        sol.message = "inconsistent equality constraints";
        return sol;
    }
    facial_reduce(red.problem);

    auto finish = [&](const Eigen::VectorXd& z) {
        sol.y = red.recover(z);
        sol.objective = p.objective_value(sol.y);
        for (const auto& blk : p.blocks)
            sol.block_min_eig.push_back(detail::min_eig(blk.evaluate(sol.y)));
        if (p.num_equalities() > 0)
            sol.equality_residual = (p.eq_lhs * sol.y - p.eq_rhs).lpNorm<Eigen::Infinity>();
    };

    const ConicProblem& q = red.problem;
    if (q.num_vars == 0) {
        // fully determined by the equalities
        double lmin = std::numeric_limits<double>::infinity();
        for (const auto& blk : q.blocks) lmin = std::min(lmin, detail::min_eig(blk.constant));
        finish(Eigen::VectorXd::Zero(0));
        sol.dual_objective = sol.objective;
        sol.status = lmin >= -settings.feas_tol ? SolveStatus::optimal : SolveStatus::infeasible;
        return sol;
    }

    // classification and starting point: z = 0 if already well inside the
    // cone, otherwise a preliminary phase-1; when the feasible set has no
    // interior, peel off the boundary face exposed at the phase-1 point and
    // retry (at most a few rounds)
    ConicProblem q_work = q;
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(q.num_vars);
    double lmin0 = std::numeric_limits<double>::infinity();
    for (const auto& blk : q.blocks) lmin0 = std::min(lmin0, detail::min_eig(blk.constant));
    if (lmin0 <= 1e-6) {
        for (int round = 0; round < 4; ++round) {
            auto ph = detail::phase1(q_work, settings, /*early_stop=*/-0.1);
            if (ph.status != SolveStatus::optimal) {
                sol.status = ph.status == SolveStatus::unbounded
                                 ? SolveStatus::numerical_failure
                                 : ph.status;
                sol.message = "phase-1: " + ph.message;
                return sol;
            }
            if (ph.shift > settings.infeas_threshold) {
                sol.status = SolveStatus::infeasible;
                sol.message = "phase-1 shift " + std::to_string(ph.shift);
                return sol;
            }
            z0 = ph.z;
            if (ph.shift < -1e-6) break;  // strict interior found
            if (round == 3) break;
            if (detail::facial_reduce_at_witness(q_work, z0) == 0) break;
        }
    }

    auto r = detail::ipm(q_work, z0, settings);
    sol.status = r.status;
    sol.message = r.message;
    sol.iterations = r.iterations;
    sol.trace = std::move(r.trace);
    finish(r.z);
    sol.dual_objective = r.dual_obj;
    sol.duality_gap = sol.objective - sol.dual_objective;
    return sol;
}

}  // namespace mopf::conic
