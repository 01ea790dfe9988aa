#include <doctest.h>

#include "qslie/freealg.hpp"
#include "test_support.hpp"

using namespace qslie;
using namespace qslie::freealg;
using ts::P;
using ts::W;

namespace {

const BracketMode kCont = BracketMode::Continuous;
const BracketMode kFree = BracketMode::Free;

// binomial as plain integers, independent of the library helpers
long choose(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("bracket of letters") {
    CHECK(bracket(Letter::base(1), Letter::base(1), kCont) == P("[1,1]"));
    CHECK(bracket(Letter::base(1), Letter::base(2), kCont).is_zero());
    CHECK(bracket(Letter::bracket({1, 2}), Letter::base(3), kFree) == P("[1,2,3]"));
    // commutativity and associativity as multiset merge
    CHECK(bracket(Letter::base(2), Letter::base(1), kFree) == P("[1,2]"));
    auto ab_c = bracket_letter(*bracket_letter(Letter::base(1), Letter::base(2), kFree),
                               Letter::base(1), kFree);
    auto a_bc = bracket_letter(Letter::base(1),
                               *bracket_letter(Letter::base(2), Letter::base(1), kFree), kFree);
    CHECK(*ab_c == *a_bc);
    // anything touching a bracket letter dies in continuous mode
    CHECK(bracket(Letter::bracket({1, 1}), Letter::base(1), kCont).is_zero());
    CHECK(bracket(Letter::bracket({1, 1}), Letter::bracket({1, 1}), kCont).is_zero());
}

TEST_CASE("concat basics") {
    CHECK(concat(W("1"), W("2")) == W("1.2"));
    CHECK(concat(W("e"), W("1.2")) == W("1.2"));
    CHECK(concat(W("1.[1,1]"), W("2")) == W("1.[1,1].2"));
}

TEST_CASE("quasi-shuffle reproduces the 13-term expansion of 12 * 34") {
    Poly got = qshuffle(W("1.2"), W("3.4"), kFree);
    Poly want;
    for (const char* t : {"1.2.3.4", "3.4.1.2", "1.3.4.2", "3.1.4.2", "1.3.2.4", "3.1.2.4"})
        want += P(t);
    want += P("1.[2,3].4");
    want += P("[1,3].4.2");
    want += P("3.[1,4].2");
    want += P("[1,3].2.4");
    want += P("1.3.[2,4]");
    want += P("3.1.[2,4]");
    want += P("[1,3].[2,4]");
    CHECK(got == want);
    CHECK(got.size() == 13);
}

TEST_CASE("quasi-shuffle unit and single letters") {
    CHECK(qshuffle(W("1.2"), W("e"), kCont) == P("1.2"));
    CHECK(qshuffle(W("e"), W("1.2"), kFree) == P("1.2"));
    Poly want = P("1.1") * Rational(2) + P("[1,1]");
    CHECK(qshuffle(W("1"), W("1"), kCont) == want);
}

TEST_CASE("shuffle is the bracket-free specialization") {
    CHECK(shuffle(W("1"), W("2")) == P("1.2") + P("2.1"));
    CHECK(shuffle(W("1.2"), W("3")) == P("1.2.3") + P("1.3.2") + P("3.1.2"));
    CHECK(shuffle(W("1"), W("1")) == P("1.1") * Rational(2));

    // deleting bracket-merged terms from the quasi-shuffle gives the
    // shuffle; a merge always shortens the word
    ts::Rng rng(7);
    for (int it = 0; it < 40; ++it) {
        Word u = ts::random_word(rng, 2, kFree, 3), v = ts::random_word(rng, 2, kFree, 3);
        Poly stripped;
        for (const auto& [w, c] : qshuffle(u, v, kFree).terms())
            if (w.length() == u.length() + v.length()) stripped.add(w, c);
        CHECK(stripped == shuffle(u, v));
    }
}

TEST_CASE("quasi-shuffle commutativity and associativity") {
    ts::Rng rng(11);
    for (BracketMode mode : {kCont, kFree}) {
        for (int it = 0; it < 100; ++it) {
            Word u = ts::random_word(rng, 2, mode, 4);
            Word v = ts::random_word(rng, 2, mode, 4);
            Word x = ts::random_word(rng, 2, mode, 4);
            CHECK(qshuffle(u, v, mode) == qshuffle(v, u, mode));
            CHECK(qshuffle(qshuffle(u, v, mode), Poly(x), mode) ==
                  qshuffle(Poly(u), qshuffle(v, x, mode), mode));
        }
    }
}

TEST_CASE("degree compatibility and shuffle term counts") {
    ts::Rng rng(13);
    for (int it = 0; it < 50; ++it) {
        Word u = ts::random_word(rng, 3, kFree, 4), v = ts::random_word(rng, 3, kFree, 4);
        for (const auto& [w, c] : qshuffle(u, v, kFree).terms())
            CHECK(w.weight() == u.weight() + v.weight());
    }
    // distinct letters: binomial(|u|+|v|, |u|) shuffle terms
    Word u = W("1.2"), v = W("3.4.5");
    CHECK(shuffle(u, v).size() == static_cast<std::size_t>(choose(5, 2)));
}

TEST_CASE("pairing") {
    CHECK(pairing(P("1.2"), P("1.2")) == 1);
    CHECK(pairing(P("1.2"), P("2.1")) == 0);
    CHECK(pairing(P("1.2") * Rational(2) + P("3"), P("1.2")) == 2);
}

TEST_CASE("deconcatenation") {
    TensorPoly d = deconcat(W("1.2"));
    CHECK(d.size() == 3);
    CHECK(d.coeff(W("e"), W("1.2")) == 1);
    CHECK(d.coeff(W("1"), W("2")) == 1);
    CHECK(d.coeff(W("1.2"), W("e")) == 1);

    TensorPoly de = deconcat(W("e"));
    CHECK(de.size() == 1);
    CHECK(de.coeff(W("e"), W("e")) == 1);

    CHECK(deconcat(W("1.2.3")).size() == 4);
}

TEST_CASE("de-quasi-shuffle letterwise values") {
    TensorPoly d = dequasishuffle(W("[1,1]"), kCont);
    CHECK(d.size() == 3);
    CHECK(d.coeff(W("[1,1]"), W("e")) == 1);
    CHECK(d.coeff(W("e"), W("[1,1]")) == 1);
    CHECK(d.coeff(W("1"), W("1")) == 1);

    TensorPoly p = dequasishuffle(W("1"), kCont);
    CHECK(p.size() == 2);
    CHECK(p.coeff(W("1"), W("e")) == 1);
    CHECK(p.coeff(W("e"), W("1")) == 1);
}

TEST_CASE("Hopf duality of coproducts against products") {
    // <Delta'(w), u (x) v> = <u * v, w> and <delta(w), u (x) v> = <u sh v, w>
    for (BracketMode mode : {kCont, kFree}) {
        Alphabet alpha{2, mode};
        auto ws = alpha.words_up_to_weight(4);
        auto small = alpha.words_up_to_weight(2);
        small.push_back(Word());
        for (const auto& w : ws) {
            TensorPoly dq = dequasishuffle(w, mode);
            for (const auto& u : small)
                for (const auto& v : small) {
                    CHECK(dq.coeff(u, v) == qshuffle(u, v, mode).coeff(w));
                }
        }
    }
    // deshuffle duality on plain words of length <= 4
    for (const auto& w : ts::base_words_up_to_length(2, 4)) {
        TensorPoly ds = deshuffle(w);
        for (const auto& u : ts::base_words_up_to_length(2, 2))
            for (const auto& v : ts::base_words_up_to_length(2, 2))
                CHECK(ds.coeff(u, v) == shuffle(u, v).coeff(w));
    }
}

TEST_CASE("deshuffle structure") {
    TensorPoly d = deshuffle(W("1.2"));
    CHECK(d.size() == 4);
    CHECK(d.coeff(W("e"), W("1.2")) == 1);
    CHECK(d.coeff(W("1"), W("2")) == 1);
    CHECK(d.coeff(W("2"), W("1")) == 1);
    CHECK(d.coeff(W("1.2"), W("e")) == 1);
    CHECK(deshuffle(W("e")).coeff(W("e"), W("e")) == 1);

    // splits of Delta' pair weights sum to weight(w)
    for (const auto& [k, c] : dequasishuffle(W("[1,1].2"), kCont).terms())
        CHECK(k.first.weight() + k.second.weight() == 3);
}

TEST_CASE("word ordering is by weight, then length, then letters") {
    CHECK(W("2") < W("[1,1]"));    // weight 1 < 2
    CHECK(W("[1,1]") < W("1.2"));  // same weight, length 1 < 2
    CHECK(W("1.2") < W("2.1"));
    CHECK(W("1.1") < W("1.2"));
}
