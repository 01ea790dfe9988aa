#pragma once

#include <optional>

#include "qslie/poly.hpp"

namespace qslie::freealg {

// Word products and coproducts over a semimartingale alphabet. The out-of-
// band "Shuffle" product is the quasi-shuffle with the bracket generator set
// to zero; it is what multiple Stratonovich integrals satisfy.
enum class Product { Shuffle, QuasiContinuous, QuasiFree };

inline Product product_of(BracketMode mode) {
    return mode == BracketMode::Continuous ? Product::QuasiContinuous : Product::QuasiFree;
}

// [a,b] of two letters; nullopt encodes zero.
std::optional<Letter> bracket_letter(const Letter& a, const Letter& b, BracketMode mode);

// [a,b] as a Poly (single-letter word or zero).
Poly bracket(const Letter& a, const Letter& b, BracketMode mode);

inline Word concat(const Word& u, const Word& v) { return u + v; }

// ua * vb = (u * vb)a + (ua * v)b + (u * v)[a,b], with the empty word as unit.
Poly qshuffle(const Word& u, const Word& v, BracketMode mode);
Poly qshuffle(const Poly& p, const Poly& q, BracketMode mode);

// Bracket-free specialization.
Poly shuffle(const Word& u, const Word& v);
Poly shuffle(const Poly& p, const Poly& q);

// Shared implementation; exposed for the convolution machinery in hopf.
Poly word_product(const Word& u, const Word& v, Product prod);

// Bilinear form with the word basis orthonormal.
Rational pairing(const Poly& p, const Poly& q);
Rational pairing(const TensorPoly& p, const Word& u, const Word& v);

// Deconcatenation: all |w|+1 splits u (x) v with uv = w.
TensorPoly deconcat(const Word& w);

// De-quasi-shuffle: the coproduct dual to * under the bilinear form,
// computed letterwise and extended as a concatenation algebra morphism.
TensorPoly dequasishuffle(const Word& w, BracketMode mode);
TensorPoly dequasishuffle(const Poly& p, BracketMode mode);

// Deshuffle: sum over complementary position subsets.
TensorPoly deshuffle(const Word& w);
TensorPoly deshuffle(const Poly& p);

}  // namespace qslie::freealg
