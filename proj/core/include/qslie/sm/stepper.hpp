#pragma once

#include "qslie/sm/integrals.hpp"
#include "qslie/sm/linear_system.hpp"

namespace qslie::sm {

// exp(M) by scaling-and-squaring Pade approximation (Eigen's implementation
// of Higham's algorithm); accurate well inside the 1e-13 contract for the
// step generators arising here.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);

// y <- exp(L) y truncated at the given Taylor order, Horner on the vector.
// Used for reference micro-steps where ||L|| = O(sqrt(h)) is tiny.
void apply_exp_taylor(const Eigen::MatrixXd& L, Eigen::VectorXd& y, int order);

// One flow step: L = sum over series terms of (integral value) x (bracket
// matrix), then exp(L). The table must cover every integral word; flavors
// resolve Stratonovich words through the Ito table symbolically.
Eigen::MatrixXd lie_series_step(const strichartz::LieSeries& series, const LinearSystem& sys,
                                const IteratedIntegralTable& integrals, BracketFields bf,
                                int truncation_weight);

}  // namespace qslie::sm
