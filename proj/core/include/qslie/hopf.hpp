#pragma once

#include <functional>

#include "qslie/freealg.hpp"

namespace qslie::hopf {

using freealg::Product;

// A weight-homogeneous linear endomorphism of the word algebra, held
// extensionally. Matrix materializations (for adjoints) are built per weight
// on demand.
using GradedEndo = std::function<Poly(const Word&)>;

// J = id - nu: kills the empty word, fixes every other word.
Poly aug_proj(const Word& w);

// (X * Y)(w) = sum over deconcatenations uv = w of X(u) * Y(v), with the
// product * of the chosen flavor.
Poly conv_product(const GradedEndo& X, const GradedEndo& Y, const Word& w, Product prod);
Poly conv_qshuffle(const GradedEndo& X, const GradedEndo& Y, const Word& w, BracketMode mode);

// J^{*k}(w): sum over k-part nonempty deconcatenations, multiplied out.
// Zero when k > |w|.
Poly conv_power(int k, const Word& w, Product prod);
Poly conv_power_qshuffle(int k, const Word& w, BracketMode mode);

// log^*(id) applied to w: sum_{k=1..|w|} (-1)^{k-1}/k J^{*k}(w).
Poly log_conv(const Word& w, Product prod);
Poly log_star(const Word& w, BracketMode mode);
Poly log_shuffle(const Word& w);

// Concatenation-convolution logarithm of the identity computed with the
// deshuffle coproduct; the Eulerian (Solomon) idempotent. Output is a Lie
// element.
Poly eulerian(const Word& w);

// Left-to-right bracketing [a1,[a2,[...,[an-1,an]...]]] expanded into the
// concatenation algebra; 2^{|w|-1} signed words. Rejects the empty word.
Poly left_bracketing_expand(const Word& w);

// A formal combination of left-bracketed words [w]_L. The spanning set is
// not a basis, so equality is equality of concatenation expansions.
class LiePoly {
  public:
    using Terms = std::map<Word, Rational>;

    LiePoly() = default;

    void add(const Word& bracket_word, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(bracket_word, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool empty_combination() const { return terms_.empty(); }

    Poly expand() const {
        Poly r;
        for (const auto& [w, c] : terms_) r += left_bracketing_expand(w) * c;
        return r;
    }

    friend bool operator==(const LiePoly& a, const LiePoly& b) {
        return a.expand() == b.expand();
    }

  private:
    Terms terms_;
};

LiePoly left_bracketing(const Word& w);

// Dynkin idempotent: w -> (1/|w|)[w]_L, extended linearly over a
// length-homogeneous polynomial. The empty word maps to zero; mixed lengths
// are rejected.
Poly dynkin(const Poly& p);

// Matrix transpose of X over the word basis of a fixed weight:
// <adjoint(X)(u), v> = <u, X(v)> for all u, v of that weight.
GradedEndo adjoint_on_weight(const GradedEndo& X, int weight, const Alphabet& alphabet);

// Dynkin--Friedrichs--Specht--Wever: P is a Lie element iff theta(P) = P on
// each length component.
bool is_lie_element(const Poly& p);

// Friedrichs variant: delta(p) = p (x) e + e (x) p.
bool is_primitive_deshuffle(const Poly& p);

// Signed reversal w -> (-1)^{|w|} reverse(w); the antipode of both Hopf
// structures. Kept as an internal consistency check only.
Poly antipode_signed_reversal(const Poly& p);

}  // namespace qslie::hopf
