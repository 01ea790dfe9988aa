#include <doctest.h>

#include <set>

#include "qslie/hoffman.hpp"
#include "qslie/strichartz.hpp"
#include "test_support.hpp"

using namespace qslie;
using namespace qslie::strichartz;
using ts::P;
using ts::W;

namespace {

const BracketMode kCont = BracketMode::Continuous;
const BracketMode kFree = BracketMode::Free;

Surjection S(std::vector<int> v) { return Surjection{std::move(v)}; }

// ordered Bell numbers via the binomial recurrence, independent of the
// enumeration
long ordered_bell(int n) {
    std::vector<long> a{1};
    for (int m = 1; m <= n; ++m) {
        long s = 0;
        for (int k = 1; k <= m; ++k) {
            long c = 1;
            for (long i = 1; i <= k; ++i) c = c * (m - k + i) / i;
            s += c * a[static_cast<std::size_t>(m - k)];
        }
        a.push_back(s);
    }
    return a[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_CASE("surjection enumeration") {
    auto s1 = surjections(1);
    CHECK(s1.size() == 1);
    CHECK(s1[0] == S({1}));

    auto s3 = surjections(3);
    CHECK(s3.size() == 13);
    std::set<Surjection> got(s3.begin(), s3.end());
    std::set<Surjection> want;
    for (auto v : std::vector<std::vector<int>>{{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {3, 1, 2},
                                                {2, 3, 1}, {3, 2, 1}, {1, 1, 2}, {1, 2, 2},
                                                {1, 2, 1}, {2, 1, 2}, {2, 1, 1}, {2, 2, 1},
                                                {1, 1, 1}})
        want.insert(S(v));
    CHECK(got == want);

    CHECK(surjections(4).size() == static_cast<std::size_t>(ordered_bell(4)));  // 75
    // deterministic lexicographic order
    CHECK(std::is_sorted(s3.begin(), s3.end()));
}

TEST_CASE("surjections and quasi-permutations correspond") {
    CHECK(surjection_to_quasiperm(S({3, 2, 2, 1})).pattern == W("4.[2,3].1"));
    CHECK(surjection_to_quasiperm(S({2, 3, 1, 2})).pattern == W("3.[1,4].2"));
    CHECK(surjection_to_quasiperm(S({1, 2, 3})).pattern == W("1.2.3"));
    CHECK(quasiperm_to_surjection(QuasiPerm{W("4.[2,3].1")}) == S({3, 2, 2, 1}));
    CHECK(quasiperm_to_surjection(QuasiPerm{W("3.[1,4].2")}) == S({2, 3, 1, 2}));
    CHECK(quasiperm_to_surjection(QuasiPerm{W("1.2.3")}) == S({1, 2, 3}));
    for (int p = 1; p <= 4; ++p)
        for (const auto& z : surjections(p))
            CHECK(quasiperm_to_surjection(surjection_to_quasiperm(z)) == z);
}

TEST_CASE("quasi-descent sets") {
    CHECK(descent_set(S({1, 2, 3})).empty());
    CHECK(descent_set(S({3, 2, 2, 1})) == std::set<int>{1, 2, 3});
    CHECK(descent_set(S({2, 3, 1, 2})) == std::set<int>{2});
}

TEST_CASE("explicit log* coefficients") {
    auto c1 = log_star_coeffs(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].second == 1);

    std::map<std::vector<int>, Rational> c2;
    for (const auto& [z, c] : log_star_coeffs(2)) c2[z.images] = c;
    CHECK(c2[{1, 2}] == Rational(1, 2));
    CHECK(c2[{2, 1}] == Rational(-1, 2));
    CHECK(c2[{1, 1}] == Rational(-1, 2));

    CHECK(log_star_coeff(S({1, 1, 1})) == Rational(1, 3));  // d = 2, sign +, C(2,2) = 1

    // the integral identity as a finite sum: sum over supersets S of Des(zeta)
    // of (-1)^{|S|}/(|S|+1) equals the closed form, p <= 5
    for (int p = 1; p <= 5; ++p) {
        for (const auto& z : surjections(p)) {
            auto des = descent_set(z);
            const int free = p - 1 - static_cast<int>(des.size());
            Rational sum(0);
            for (int extra = 0; extra <= free; ++extra) {
                Rational ways = binomial_rat(static_cast<unsigned>(free),
                                             static_cast<unsigned>(extra));
                int sz = static_cast<int>(des.size()) + extra;
                sum += ways * Rational(sz % 2 == 0 ? 1 : -1, sz + 1);
            }
            CHECK(sum == log_star_coeff(z));
        }
    }
}

TEST_CASE("quasi-permutation action") {
    CHECK(apply_quasiperm(QuasiPerm{W("1.2.3")}, W("1.2.1"), kCont) == P("1.2.1"));
    CHECK(apply_quasiperm(QuasiPerm{W("[1,2]")}, W("1.1"), kCont) == P("[1,1]"));
    CHECK(apply_quasiperm(QuasiPerm{W("[1,2]")}, W("1.2"), kCont).is_zero());
    CHECK_THROWS_AS(apply_quasiperm(QuasiPerm{W("[1,2]")}, W("1.2.3"), kCont),
                    std::invalid_argument);
}

TEST_CASE("surjection formula equals the convolution-power logarithm") {
    CHECK(log_star_via_surjections(W("1"), kFree) == P("1"));
    CHECK(log_star_via_surjections(W("1.2"), kFree) ==
          P("1.2") * Rational(1, 2) - P("2.1") * Rational(1, 2) - P("[1,2]") * Rational(1, 2));
    for (BracketMode mode : {kCont, kFree}) {
        for (const auto& w : ts::base_words_up_to_length(3, 4)) {
            CHECK(log_star_via_surjections(w, mode) == hopf::log_star(w, mode));
        }
    }
}

TEST_CASE("descent-subset convolution powers equal the deconcatenation ones") {
    for (BracketMode mode : {kCont, kFree}) {
        for (const auto& w : ts::base_words_up_to_length(3, 3)) {
            for (int k = 1; k <= 4; ++k) {
                CHECK(conv_power_via_descents(k, w, mode) ==
                      hopf::conv_power_qshuffle(k, w, mode));
            }
        }
    }
    // k = 1 keeps only the strictly increasing surjection: identity on w
    CHECK(conv_power_via_descents(1, W("1.2.2"), kFree) == P("1.2.2"));
}

TEST_CASE("bijective restriction recovers the classical shuffle coefficients") {
    // keeping only permutation surjections turns the quasi-shuffle formula
    // into the classical descent-based one
    for (int p = 1; p <= 4; ++p) {
        Word w;
        for (int i = 1; i <= p; ++i) w = w.appended(Letter::base(i));
        Poly viaSurj;
        for (const auto& [z, c] : log_star_coeffs(p)) {
            if (z.codomain() != p) continue;  // bijections only
            viaSurj += apply_surjection(z, w, kFree) * c;
        }
        CHECK(viaSurj == hopf::log_shuffle(w));
    }
}

TEST_CASE("series terms respect the truncation weight") {
    for (auto mk : {+[] { return strat_lie_series(2, 4); },
                    +[] { return ito_lie_series(2, 4, ItoForm::Expanded); },
                    +[] { return ito_lie_series(2, 4, ItoForm::Resummed); }}) {
        LieSeries s = mk();
        for (const auto& t : s.terms) {
            CHECK(t.base_word.weight() <= s.max_weight);
            CHECK(t.integral_poly.max_weight() <= s.max_weight);
            for (const auto& [u, c] : t.bracket.terms()) CHECK(u.weight() <= s.max_weight);
        }
    }
}

TEST_CASE("stratonovich series small cases") {
    LieSeries s = strat_lie_series(1, 1);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].base_word == W("1"));
    CHECK(s.terms[0].integral_poly == P("1"));
    CHECK(s.terms[0].bracket.expand() == P("1"));

    // weight 2, d = 1: the [1,1] letter term joins; the 11 term vanishes
    LieSeries s2 = strat_lie_series(1, 2);
    REQUIRE(s2.terms.size() == 2);
    CHECK(s2.terms[1].base_word == W("[1,1]"));
    CHECK(s2.terms[1].integral_poly == P("[1,1]"));
}

TEST_CASE("classical area term at d=2 weight 2") {
    TensorPoly canon = canonical_expansion(strat_lie_series(2, 2));
    // the grade with left legs in {12, 21} is exactly
    // (1/2)(12 - 21) (x) (12 - 21)
    TensorPoly grade;
    for (const auto& [k, c] : canon.terms())
        if (k.first == W("1.2") || k.first == W("2.1")) grade.add(k.first, k.second, c);
    TensorPoly want;
    want.add(W("1.2"), W("1.2"), Rational(1, 2));
    want.add(W("1.2"), W("2.1"), Rational(-1, 2));
    want.add(W("2.1"), W("1.2"), Rational(-1, 2));
    want.add(W("2.1"), W("2.1"), Rational(1, 2));
    CHECK(grade == want);
}

TEST_CASE("flowmap expansion") {
    TensorPoly f = flowmap_expansion(1, 1);
    CHECK(f.size() == 2);
    CHECK(f.coeff(W("e"), W("e")) == 1);
    CHECK(f.coeff(W("1"), W("1")) == 1);
    CHECK(flowmap_expansion(1, 2).size() == 4);  // e, 1, 11, [1,1]

    // exp(log) round trip on the truncation
    using freealg::Product;
    for (Product prod : {Product::QuasiContinuous, Product::Shuffle}) {
        TensorPoly s = flowmap_expansion(2, 3);
        TensorPoly lg = tensor_log(s, 3, prod);
        CHECK(tensor_exp(lg, 3, prod) == s);
    }
}

TEST_CASE("series coincidence under canonical expansion") {
    for (int d : {1, 2}) {
        const int maxw = 3;
        TensorPoly direct =
            tensor_log(flowmap_expansion(d, maxw), maxw, freealg::Product::QuasiContinuous);
        CHECK(canonical_expansion(strat_lie_series(d, maxw)) == direct);
        CHECK(canonical_expansion(ito_lie_series(d, maxw, ItoForm::Expanded)) == direct);
        CHECK(canonical_expansion(ito_lie_series(d, maxw, ItoForm::Resummed)) == direct);
    }
}

TEST_CASE("stratonovich series matches the shuffle-side logarithm before conversion") {
    // sum (1/|w|) log_sh(w) (x) expand([w]_L) == log of sum w (x) w with the
    // shuffle product on the left leg
    const int d = 2, maxw = 3;
    TensorPoly lhs;
    for (const auto& t : strat_lie_series(d, maxw).terms) {
        Poly right = t.bracket.expand();
        for (const auto& [u, cu] : t.integral_poly.terms())
            for (const auto& [v, cv] : right.terms()) lhs.add(u, v, cu * cv);
    }
    TensorPoly rhs = tensor_log(flowmap_expansion(d, maxw), maxw, freealg::Product::Shuffle);
    CHECK(lhs == rhs);
}

TEST_CASE("ito series letter term carries the bracket vector field") {
    LieSeries s = ito_lie_series(1, 2, ItoForm::Resummed);
    bool found = false;
    for (const auto& t : s.terms)
        if (t.base_word == W("[1,1]")) {
            found = true;
            CHECK(t.integral_poly == P("[1,1]"));
            CHECK(t.bracket.expand().coeff(W("[1,1]")) == 1);
        }
    CHECK(found);
}

TEST_CASE("right legs of the stratonovich series are Lie elements") {
    for (const auto& t : strat_lie_series(2, 4).terms)
        CHECK(hopf::is_lie_element(t.bracket.expand()));
}

TEST_CASE("ito and stratonovich map relations on the operator leg") {
    // nu_bar = mu_bar o log_H^dag as word identities: converting the
    // stratonovich flowmap legwise reproduces the ito flowmap
    const int d = 2, maxw = 4;
    TensorPoly lhs;  // sum exp_H(w) (x) log_H^dag(w)
    for (const auto& [k, c] : flowmap_expansion(d, maxw).terms()) {
        Poly left = hoffman::ito_strat_word_conversion(k.first);
        Poly right = hoffman::hoffman_log_adjoint(Poly(k.second), kCont);
        for (const auto& [u, cu] : left.terms())
            for (const auto& [v, cv] : right.terms()) lhs.add(u, v, c * cu * cv);
    }
    CHECK(lhs == flowmap_expansion(d, maxw));
}
