#pragma once

#include <set>
#include <vector>

#include "qslie/poly.hpp"

namespace qslie::hoffman {

// An ordered sequence of positive integers; indexes bracket-block patterns
// on words.
class Composition {
  public:
    explicit Composition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int num_parts() const { return static_cast<int>(parts_.size()); }   // |lambda|
    int sum() const;                                                    // Sigma(lambda)
    long product() const;                                               // Pi(lambda)
    Rational factorial_product() const;                                 // Gamma(lambda)

    friend bool operator==(const Composition& a, const Composition& b) = default;

  private:
    std::vector<int> parts_;
};

// All 2^{n-1} compositions of n, lexicographic by parts.
std::vector<Composition> compositions(int n);

// lambda o w: bracket the blocks of w cut by lambda's parts; a size-1 block
// is the letter itself. Vanishing blocks kill the whole term.
Poly comp_action(const Composition& lambda, const Word& w, BracketMode mode);

// exp_H(w) = sum_lambda (1/Gamma(lambda)) lambda o w.
Poly hoffman_exp(const Word& w, BracketMode mode);
Poly hoffman_exp(const Poly& p, BracketMode mode);

// log_H(w) = sum_lambda ((-1)^{Sigma-|lambda|}/Pi(lambda)) lambda o w.
Poly hoffman_log(const Word& w, BracketMode mode);
Poly hoffman_log(const Poly& p, BracketMode mode);

// Adjoints: letterwise on a with [a1,...,an] = a, extended to words as
// concatenation homomorphisms.
//   exp_H^dag(a) = sum (1/n!) a1...an
//   log_H^dag(a) = sum ((-1)^{n-1}/n) a1...an
Poly hoffman_exp_adjoint(const Word& w, BracketMode mode);
Poly hoffman_log_adjoint(const Word& w, BracketMode mode);
Poly hoffman_exp_adjoint(const Poly& p, BracketMode mode);
Poly hoffman_log_adjoint(const Poly& p, BracketMode mode);

// [[w]]: all words from one or more contractions of neighbouring equal base
// letters ii -> [i,i]. Continuous-alphabet words only.
std::set<Word> bracket_contractions(const Word& w);

// ]]w[[ minus {w}: all words from replacing one or more [i,i] letters by ii.
std::set<Word> bracket_expansions(const Word& w);

// J_w in the Ito basis: w + sum_{u in [[w]]} 2^{-(|w|-|u|)} u. Continuous
// mode; coincides with hoffman_exp(w, Continuous).
Poly ito_strat_word_conversion(const Word& w);
Poly ito_strat_word_conversion(const Poly& p);

}  // namespace qslie::hoffman
