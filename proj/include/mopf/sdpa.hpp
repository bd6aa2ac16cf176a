#pragma once

// Debug export of a ConicProblem in the SDPA sparse format (.dat-s), for
// cross-checking against external solvers. The LMI form
//   min c'y  s.t.  sum_j y_j A_j - (-C)  PSD
// maps onto SDPA's primal with F_0 = -C and F_j = A_j. Problems with
// equality constraints are exported after null-space elimination.

#include <iomanip>
#include <ostream>

#include "mopf/conic.hpp"

namespace mopf::conic {

inline void write_sdpa(const ConicProblem& input, std::ostream& os) {
    const ConicProblem* p = &input;
    Reduction red;
    if (input.num_equalities() > 0) {
        red = reduce_equalities(input);
        if (!red.consistent)
            throw std::invalid_argument("cannot export: inconsistent equality constraints");
        p = &red.problem;
        os << "* equalities eliminated by null-space substitution ("
           << input.num_vars << " -> " << p->num_vars << " variables)\n";
    }
    os << std::setprecision(17);
    os << p->num_vars << " = mDIM\n";
    os << p->blocks.size() << " = nBLOCK\n";
    for (size_t b = 0; b < p->blocks.size(); ++b)
        os << p->blocks[b].dim() << (b + 1 < p->blocks.size() ? " " : " = bLOCKsTRUCT\n");
    if (p->blocks.empty()) os << "= bLOCKsTRUCT\n";
    for (int j = 0; j < p->num_vars; ++j)
        os << p->objective(j) << (j + 1 < p->num_vars ? " " : "");
    os << "\n";
    auto emit = [&os](int matno, int blkno, const Eigen::MatrixXd& m) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = i; j < m.cols(); ++j)
                if (m(i, j) != 0.0)
                    os << matno << " " << blkno << " " << i + 1 << " " << j + 1 << " "
                       << m(i, j) << "\n";
    };
    for (size_t b = 0; b < p->blocks.size(); ++b) {
        emit(0, static_cast<int>(b) + 1, (-p->blocks[b].constant).eval());
        for (const auto& [j, a] : p->blocks[b].terms)
            emit(j + 1, static_cast<int>(b) + 1, a);
    }
}

}  // namespace mopf::conic
