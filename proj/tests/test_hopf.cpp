#include <doctest.h>

#include "qslie/hoffman.hpp"
#include "qslie/hopf.hpp"
#include "qslie/strichartz.hpp"
#include "test_support.hpp"

using namespace qslie;
using namespace qslie::hopf;
using freealg::Product;
using ts::P;
using ts::W;

namespace {

const BracketMode kCont = BracketMode::Continuous;
const BracketMode kFree = BracketMode::Free;

GradedEndo J = [](const Word& w) { return aug_proj(w); };
GradedEndo Nu = [](const Word& w) { return w.empty() ? Poly::one() : Poly::zero(); };
GradedEndo Id = [](const Word& w) { return Poly(w); };

}  // namespace

TEST_CASE("augmented ideal projector") {
    CHECK(aug_proj(W("e")).is_zero());
    CHECK(aug_proj(W("1.2")) == P("1.2"));
    // projector: J(J(w)) = J(w) termwise
    for (const auto& w : ts::base_words_up_to_length(2, 3)) {
        Poly once = aug_proj(w);
        Poly twice;
        for (const auto& [u, c] : once.terms()) twice += aug_proj(u) * c;
        CHECK(once == twice);
    }
}

TEST_CASE("convolution products and unit") {
    CHECK(conv_qshuffle(J, J, W("1.2"), kFree) == P("1.2") + P("2.1") + P("[1,2]"));
    CHECK(conv_qshuffle(J, J, W("1"), kFree).is_zero());
    // nu is the convolution unit
    ts::Rng rng(3);
    GradedEndo J2 = [](const Word& u) { return conv_power_qshuffle(2, u, kFree); };
    GradedEndo Ls = [](const Word& u) { return log_star(u, kFree); };
    for (int it = 0; it < 20; ++it) {
        Word w = ts::random_word(rng, 2, kFree, 4);
        for (const GradedEndo& X : {J, J2, Ls}) {
            CHECK(conv_qshuffle(Nu, X, w, kFree) == X(w));
            CHECK(conv_qshuffle(X, Nu, w, kFree) == X(w));
        }
    }
}

TEST_CASE("convolution powers") {
    CHECK(conv_power_qshuffle(3, W("1.2"), kFree).is_zero());  // k > |w|
    CHECK(conv_power_qshuffle(1, W("1.2"), kCont) == P("1.2"));
    CHECK(conv_power_qshuffle(2, W("1.2"), kFree) ==
          conv_qshuffle(J, J, W("1.2"), kFree));
}

TEST_CASE("log_star small values") {
    CHECK(log_star(W("1"), kCont) == P("1"));
    CHECK(log_star(W("1.2"), kCont) == P("1.2") * Rational(1, 2) - P("2.1") * Rational(1, 2));
    CHECK(log_star(W("1.2"), kFree) ==
          P("1.2") * Rational(1, 2) - P("2.1") * Rational(1, 2) - P("[1,2]") * Rational(1, 2));
    // 11 - (1/2)(2*11 + [1,1]) collapses to the pure bracket term
    CHECK(log_star(W("1.1"), kCont) == P("[1,1]") * Rational(-1, 2));
    CHECK(log_star(W("e"), kCont).is_zero());
}

TEST_CASE("log_shuffle values") {
    CHECK(log_shuffle(W("1")) == P("1"));
    CHECK(log_shuffle(W("1.2")) == P("1.2") * Rational(1, 2) - P("2.1") * Rational(1, 2));
    Poly want = (P("1.2.3") + P("3.2.1")) * Rational(1, 3) -
                (P("1.3.2") + P("2.1.3") + P("2.3.1") + P("3.1.2")) * Rational(1, 6);
    CHECK(log_shuffle(W("1.2.3")) == want);
}

TEST_CASE("log_star annihilates quasi-shuffle products") {
    // first Eulerian of a commutative Hopf algebra kills the square of the
    // augmented ideal: log*(u * v) = 0 for nonempty u, v
    for (BracketMode mode : {kCont, kFree}) {
        Alphabet alpha{2, mode};
        auto ws = alpha.words_up_to_weight(2);
        for (const auto& u : ws)
            for (const auto& v : ws) {
                if (u.weight() + v.weight() > 4) continue;
                Poly img;
                for (const auto& [w, c] : freealg::qshuffle(u, v, mode).terms())
                    img += log_star(w, mode) * c;
                CHECK(img.is_zero());
            }
    }
}

TEST_CASE("log_star outputs need not be Lie elements") {
    // pinning the asymmetry with the Eulerian: theta does not fix log*(112)
    Poly p = log_star(W("1.1.2"), kCont);
    CHECK_FALSE(is_lie_element(p));
    CHECK_FALSE(is_primitive_deshuffle(p));
}

TEST_CASE("eulerian values and Lie property") {
    CHECK(eulerian(W("1")) == P("1"));
    CHECK(eulerian(W("1.2")) == P("1.2") * Rational(1, 2) - P("2.1") * Rational(1, 2));
    CHECK(eulerian(W("1.2")) == left_bracketing_expand(W("1.2")) * Rational(1, 2));
    Alphabet alpha{3, kCont};
    for (const auto& w : alpha.words_up_to_weight(4)) {
        if (w.length() > 4) continue;
        Poly e = eulerian(w);
        CHECK(dynkin(e) == e);                 // DFSW fixed point
        CHECK(is_primitive_deshuffle(e));      // Friedrichs
    }
}

TEST_CASE("dynkin") {
    CHECK(dynkin(P("1")) == P("1"));
    CHECK(dynkin(P("1.2")) == (P("1.2") - P("2.1")) * Rational(1, 2));
    CHECK_THROWS_AS(dynkin(P("1") + P("1.2")), std::invalid_argument);
    // idempotence as a matrix identity on length-p words
    for (int p = 1; p <= 4; ++p) {
        for (const auto& w : ts::base_words_of_length(2, p)) {
            Poly once = dynkin(Poly(w));
            Poly twice = dynkin(once);
            CHECK(once == twice);
        }
    }
}

TEST_CASE("left bracketing") {
    CHECK(left_bracketing_expand(W("1")) == P("1"));
    CHECK(left_bracketing_expand(W("1.2")) == P("1.2") - P("2.1"));
    CHECK(left_bracketing_expand(W("1.2.3")) ==
          P("1.2.3") - P("1.3.2") - P("2.3.1") + P("3.2.1"));
    CHECK_THROWS_AS(left_bracketing_expand(W("e")), std::invalid_argument);
    CHECK(left_bracketing_expand(W("1.1")).is_zero());
}

TEST_CASE("adjoints transpose the bilinear form") {
    Alphabet alpha{2, kCont};
    GradedEndo J2 = [](const Word& u) { return conv_power_qshuffle(2, u, kCont); };
    GradedEndo Ls = [](const Word& u) { return log_star(u, kCont); };
    for (int n = 1; n <= 3; ++n) {
        auto basis = alpha.words_of_weight(n);
        for (const GradedEndo& X : {J2, Ls}) {
            GradedEndo Xt = adjoint_on_weight(X, n, alpha);
            for (const auto& u : basis)
                for (const auto& v : basis)
                    CHECK(freealg::pairing(Xt(u), Poly(v)) == freealg::pairing(Poly(u), X(v)));
        }
    }
    // adjoint of the identity is the identity
    GradedEndo IdT = adjoint_on_weight(Id, 2, alpha);
    for (const auto& u : alpha.words_of_weight(2)) CHECK(IdT(u) == Poly(u));
}

TEST_CASE("adjoint of log_shuffle is the eulerian on weight blocks") {
    Alphabet alpha{2, kCont};
    GradedEndo Lsh = [](const Word& u) { return log_shuffle(u); };
    for (int n : {2, 3}) {
        GradedEndo adj = adjoint_on_weight(Lsh, n, alpha);
        for (const auto& u : alpha.words_of_weight(n)) CHECK(adj(u) == eulerian(u));
    }
}

TEST_CASE("lie element tests agree") {
    CHECK(is_lie_element(P("1.2") - P("2.1")));
    CHECK_FALSE(is_lie_element(P("1.2") + P("2.1")));
    CHECK(dynkin(P("1.2") + P("2.1")).is_zero());

    ts::Rng rng(17);
    int checked = 0;
    while (checked < 100) {
        // random homogeneous combination of length-n base words
        int n = rng.uniform(1, 4);
        Poly p;
        for (const auto& w : ts::base_words_of_length(2, n))
            p.add(w, Rational(rng.uniform(-2, 2)));
        if (p.is_zero()) continue;
        ++checked;
        CHECK(is_lie_element(p) == is_primitive_deshuffle(p));
    }
}

TEST_CASE("lemma identity: convolution log equals the tensor-algebra log leftwise") {
    // log(sum w (x) w) truncated by weight has left coefficient log*(w) at w
    for (BracketMode mode : {kCont, kFree}) {
        const int maxw = 4;
        Alphabet alpha{2, mode};
        TensorPoly s;
        s.add(W("e"), W("e"), 1);
        for (const auto& w : alpha.words_up_to_weight(maxw)) s.add(w, w, 1);
        TensorPoly lg = strichartz::tensor_log(s, maxw, freealg::product_of(mode));
        for (const auto& w : alpha.words_up_to_weight(maxw)) {
            Poly left;
            for (const auto& [k, c] : lg.terms())
                if (k.second == w) left.add(k.first, c);
            CHECK(left == log_star(w, mode));
        }
    }
}

TEST_CASE("signed reversal satisfies the antipode axiom on the shuffle-side algebras") {
    GradedEndo S = [](const Word& w) { return antipode_signed_reversal(Poly(w)); };
    Alphabet alpha{2, kCont};
    for (const auto& w : alpha.words_up_to_weight(4)) {
        // shuffle product, deconcatenation coproduct
        Poly sh = conv_product(S, Id, w, Product::Shuffle);
        CHECK(sh == (w.empty() ? Poly::one() : Poly::zero()));
        // concatenation product, deshuffle coproduct
        Poly conc;
        for (const auto& [k, c] : freealg::deshuffle(w).terms())
            conc += concat_mul(S(k.first), Poly(k.second)) * c;
        CHECK(conc == (w.empty() ? Poly::one() : Poly::zero()));
    }
    CHECK(antipode_signed_reversal(P("1.2")) == P("2.1"));
    CHECK(antipode_signed_reversal(P("1.2.3")) == -P("3.2.1"));
}
