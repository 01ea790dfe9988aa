#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qslie/strichartz.hpp"

namespace qslie::sm {

// How the quadratic-variation letters map to matrices.
//   ItoCorrection: V_[i,i] = -1/2 A_i^2, the Stratonovich drift correction
//                  of the Ito system dY = sum_i A_i Y dX^i.
//   Zero: the system is the Stratonovich SDE dY = sum_i A_i Y o dX^i with no
//         bracket fields; with skew-symmetric A_i its flow is orthogonal.
enum class BracketFields { ItoCorrection, Zero };

// Linear vector fields V_i(y) = A_i y.
struct LinearSystem {
    int N = 1;
    std::vector<Eigen::MatrixXd> A;  // A[i-1] is the field of letter i

    int d() const { return static_cast<int>(A.size()); }
    void validate() const;
};

// Matrix of one letter under the word-to-vector-field map.
Eigen::MatrixXd letter_matrix(const LinearSystem& sys, const Letter& a, BracketFields bf);

// Matrix of a word. Operator composition reverses against matrix products
// for linear fields, so M(a_1...a_n) = M(a_n) ... M(a_1); the d = 1 exact
// solution pins this convention.
Eigen::MatrixXd word_matrix(const LinearSystem& sys, const Word& w, BracketFields bf);

Eigen::MatrixXd lie_poly_matrix(const LinearSystem& sys, const hopf::LiePoly& bracket,
                                BracketFields bf);

// A series bound to a system: per term, double coefficients over an indexed
// set of Ito integral words plus the term's matrix. Rationals convert to
// double exactly once, here.
struct CompiledSeries {
    struct Term {
        std::vector<std::pair<int, double>> coeffs;  // (integral word index, coefficient)
        Eigen::MatrixXd matrix;
    };
    std::vector<Word> integral_words;  // canonical order
    std::vector<Term> terms;
    int N = 1;

    Eigen::MatrixXd generator(const double* integral_values) const {
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
        for (const auto& t : terms) {
            double v = 0;
            for (const auto& [idx, c] : t.coeffs)
                v += c * integral_values[static_cast<std::size_t>(idx)];
            L.noalias() += v * t.matrix;
        }
        return L;
    }
};

// Keep a term when weight(w) <= truncation_weight or |w| = 1: the
// quadratic-variation letters act as the drift and stay in every scheme.
bool scheme_keeps_word(const Word& w, int truncation_weight);

CompiledSeries compile_series(const strichartz::LieSeries& series, const LinearSystem& sys,
                              BracketFields bf, int truncation_weight);

}  // namespace qslie::sm
