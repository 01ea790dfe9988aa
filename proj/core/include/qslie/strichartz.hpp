#pragma once

#include <set>
#include <vector>

#include "qslie/hopf.hpp"

namespace qslie::strichartz {

using hopf::LiePoly;

// A surjective map {1..p} -> {1..q}, q <= p, stored as its image sequence.
// Records letter positions for the associated quasi-permutation: letter i
// sits at position zeta(i).
struct Surjection {
    std::vector<int> images;

    int p() const { return static_cast<int>(images.size()); }
    int codomain() const;
    bool valid() const;

    friend bool operator==(const Surjection& a, const Surjection& b) = default;
    friend auto operator<=>(const Surjection& a, const Surjection& b) {
        return a.images <=> b.images;
    }
};

// A permutation word with bracket blocks: block j collects the letters sent
// to position j. Canonical form sorts letters inside each block.
struct QuasiPerm {
    Word pattern;  // letters are positions 1..p, bracket blocks allowed

    friend bool operator==(const QuasiPerm& a, const QuasiPerm& b) = default;
};

// All surjections of {1..p}, every codomain q <= p, lexicographically by
// image sequence. Sizes are the ordered Bell numbers 1, 3, 13, 75, ...
std::vector<Surjection> surjections(int p);

QuasiPerm surjection_to_quasiperm(const Surjection& zeta);
Surjection quasiperm_to_surjection(const QuasiPerm& sigma);

// Quasi-descents: indices k with zeta(k+1) <= zeta(k).
std::set<int> descent_set(const Surjection& zeta);
int descent_count(const Surjection& zeta);

// Coefficient of sigma(zeta) in log^*(1...p):
// (-1)^{d}/p * binomial(p-1, d)^{-1} with d = descent_count(zeta).
Rational log_star_coeff(const Surjection& zeta);
std::vector<std::pair<Surjection, Rational>> log_star_coeffs(int p);

// sigma w = lambda o (a_{rho(1)} ... a_{rho(p)}): permute letters into the
// blocks, then bracket each block. May vanish in Continuous mode.
Poly apply_quasiperm(const QuasiPerm& sigma, const Word& w, BracketMode mode);
Poly apply_surjection(const Surjection& zeta, const Word& w, BracketMode mode);

// The explicit Chen--Strichartz coefficient formula on words. Must equal
// hopf::log_star exactly.
Poly log_star_via_surjections(const Word& w, BracketMode mode);

// J^{*k}(w) through descent subsets: sum over |S| = k-1 of all sigma(zeta)
// with Des(zeta) contained in S. Must equal hopf::conv_power_qshuffle.
Poly conv_power_via_descents(int k, const Word& w, BracketMode mode);

// ---------------------------------------------------------------------------
// Exponential Lie series of the flowmap.

enum class SeriesFlavor { Stratonovich, Ito };
enum class ItoForm { Expanded, Resummed };

// One series term: integral combination (Stratonovich- or Ito-flavored
// words) against a Lie polynomial of vector-field letters.
struct LieSeriesTerm {
    Word base_word;
    Poly integral_poly;
    LiePoly bracket;
};

struct LieSeries {
    SeriesFlavor flavor = SeriesFlavor::Stratonovich;
    ItoForm form = ItoForm::Expanded;  // meaningful for Ito flavor only
    int d = 1;
    int max_weight = 1;
    std::vector<LieSeriesTerm> terms;
};

// Chen--Strichartz series sum_w (1/|w|) J_{log_sh(w)} (x) [w]_L over the
// extended continuous alphabet, truncated by weight.
LieSeries strat_lie_series(int d, int max_weight);

// The same series in Ito coordinates, in either corollary form.
LieSeries ito_lie_series(int d, int max_weight, ItoForm form);

// sum over weight(w) <= max_weight of w (x) w; the group-like input to the
// logarithm oracles.
TensorPoly flowmap_expansion(int d, int max_weight);

// Formal power series in the truncated tensor algebra, with the chosen
// product on the left leg and concatenation on the right.
TensorPoly tensor_log(const TensorPoly& s, int max_weight, freealg::Product left);
TensorPoly tensor_exp(const TensorPoly& s, int max_weight, freealg::Product left);

// Canonical double expansion deciding series equality: the integral leg in
// Ito words (Stratonovich words pushed through exp_H), the operator leg with
// every bracket expanded to concatenation words and converted through
// log_H^dag into the Ito partial-differential basis.
TensorPoly canonical_expansion(const LieSeries& series);

}  // namespace qslie::strichartz
