#pragma once

#include <map>

#include "qslie/poly.hpp"
#include "qslie/sm/brownian.hpp"

namespace qslie::sm {

// Iterated Ito integrals by left-point Riemann sums. I_e = 1, single letters
// are exact (I_i = dW^i, I_[i,i] = dt); longer words carry an O(r^{-1/2})
// refinement bias that every consumer's tolerance accounts for.
using IteratedIntegralTable = std::map<Word, double>;

// Flat update plan for the left-point recursion over a word set (closed
// under prefixes). Letters index as: 0..d-1 base, d..2d-1 brackets [i,i].
class IntegralPlan {
  public:
    IntegralPlan(const std::vector<Word>& words, int d);

    int d() const { return d_; }
    std::size_t node_count() const { return nodes_.size(); }

    // values[] indexed like nodes; caller provides scratch of node_count()
    void reset(double* values) const;

    // one left-point substep: dw has d entries, dt_sub is the substep length
    void substep(double* values, const double* dw, double dt_sub) const;

    // read a word's value
    double value(const double* values, const Word& w) const;

    const std::vector<Word>& words() const { return words_; }
    int index_of(const Word& w) const;

  private:
    struct Node {
        int parent;       // index into nodes_, -1 for the empty-word root
        int letter;       // 0..d-1 base, d..2d-1 bracket
        std::size_t len;  // word length, for update ordering
    };
    int d_;
    std::vector<Word> words_;       // prefix closure, canonical order
    std::vector<Node> nodes_;       // aligned with words_
    std::vector<int> update_order_;  // longest first
};

// Whole-horizon table on the path coarsened to `refinement` intervals.
IteratedIntegralTable iterated_integrals(const DriverPath& path, const std::vector<Word>& words,
                                         std::uint64_t refinement);

// |I_u I_v - sum_w <qshuffle(u,v), w> I_w| on one path at one refinement;
// the word-to-integral map is a quasi-shuffle homomorphism in the limit.
double quasi_shuffle_residual(const DriverPath& path, const Word& u, const Word& v,
                              std::uint64_t refinement);

}  // namespace qslie::sm
