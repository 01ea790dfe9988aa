#include "qslie/strichartz.hpp"

#include <algorithm>
#include <stdexcept>

#include "qslie/hoffman.hpp"

namespace qslie::strichartz {

int Surjection::codomain() const {
    int q = 0;
    for (int v : images) q = std::max(q, v);
    return q;
}

bool Surjection::valid() const {
    if (images.empty()) return false;
    const int q = codomain();
    if (q > p()) return false;
    std::vector<bool> hit(static_cast<std::size_t>(q), false);
    for (int v : images) {
        if (v < 1 || v > q) return false;
        hit[static_cast<std::size_t>(v - 1)] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<Surjection> surjections(int p) {
    if (p < 1) throw std::invalid_argument("surjections wants p >= 1");
    std::vector<Surjection> out;
    std::vector<int> t(static_cast<std::size_t>(p), 1);
    while (true) {
        Surjection z{t};
        if (z.valid()) out.push_back(z);
        // lexicographic odometer, last position fastest
        int i = p - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == p) t[static_cast<std::size_t>(i--)] = 1;
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
    }
    return out;
}

QuasiPerm surjection_to_quasiperm(const Surjection& zeta) {
    if (!zeta.valid()) throw std::invalid_argument("invalid surjection");
    const int q = zeta.codomain();
    std::vector<Letter> blocks;
    for (int j = 1; j <= q; ++j) {
        std::vector<int> members;
        for (int i = 1; i <= zeta.p(); ++i)
            if (zeta.images[static_cast<std::size_t>(i - 1)] == j) members.push_back(i);
        blocks.push_back(members.size() == 1 ? Letter::base(members[0])
                                             : Letter::bracket(members));
    }
    return QuasiPerm{Word(std::move(blocks))};
}

Surjection quasiperm_to_surjection(const QuasiPerm& sigma) {
    int p = 0;
    for (const auto& blk : sigma.pattern.letters()) p += blk.weight();
    std::vector<int> images(static_cast<std::size_t>(p), 0);
    int pos = 0;
    for (const auto& blk : sigma.pattern.letters()) {
        ++pos;
        for (int member : blk.parts()) {
            if (member < 1 || member > p || images[static_cast<std::size_t>(member - 1)] != 0)
                throw std::invalid_argument("quasi-permutation is not a letter arrangement");
            images[static_cast<std::size_t>(member - 1)] = pos;
        }
    }
    Surjection z{std::move(images)};
    if (!z.valid()) throw std::invalid_argument("quasi-permutation does not define a surjection");
    return z;
}

std::set<int> descent_set(const Surjection& zeta) {
    std::set<int> d;
    for (int k = 1; k < zeta.p(); ++k)
        if (zeta.images[static_cast<std::size_t>(k)] <= zeta.images[static_cast<std::size_t>(k - 1)])
            d.insert(k);
    return d;
}

int descent_count(const Surjection& zeta) { return static_cast<int>(descent_set(zeta).size()); }

Rational log_star_coeff(const Surjection& zeta) {
    const int p = zeta.p();
    const unsigned d = static_cast<unsigned>(descent_count(zeta));
    Rational c(d % 2 == 0 ? 1 : -1, p);
    return c / binomial_rat(static_cast<unsigned>(p - 1), d);
}

std::vector<std::pair<Surjection, Rational>> log_star_coeffs(int p) {
    std::vector<std::pair<Surjection, Rational>> out;
    for (const auto& z : surjections(p)) out.emplace_back(z, log_star_coeff(z));
    return out;
}

Poly apply_quasiperm(const QuasiPerm& sigma, const Word& w, BracketMode mode) {
    int p = 0;
    for (const auto& blk : sigma.pattern.letters()) p += blk.weight();
    if (p != static_cast<int>(w.length()))
        throw std::invalid_argument("quasi-permutation length mismatch");
    std::vector<Letter> out;
    for (const auto& blk : sigma.pattern.letters()) {
        const auto& members = blk.parts();
        Letter cur = w[static_cast<std::size_t>(members[0] - 1)];
        for (std::size_t j = 1; j < members.size(); ++j) {
            auto nxt = freealg::bracket_letter(cur, w[static_cast<std::size_t>(members[j] - 1)], mode);
            if (!nxt) return Poly::zero();
            cur = *nxt;
        }
        out.push_back(cur);
    }
    return Poly(Word(std::move(out)));
}

Poly apply_surjection(const Surjection& zeta, const Word& w, BracketMode mode) {
    return apply_quasiperm(surjection_to_quasiperm(zeta), w, mode);
}

Poly log_star_via_surjections(const Word& w, BracketMode mode) {
    if (w.empty()) return Poly::zero();
    Poly r;
    for (const auto& z : surjections(static_cast<int>(w.length())))
        r += apply_surjection(z, w, mode) * log_star_coeff(z);
    return r;
}

Poly conv_power_via_descents(int k, const Word& w, BracketMode mode) {
    if (k < 1) throw std::invalid_argument("conv_power_via_descents wants k >= 1");
    if (w.empty()) return Poly::zero();
    const int p = static_cast<int>(w.length());
    // precompute sigma(zeta) o w and Des(zeta)
    Poly r;
    std::vector<int> subset;
    auto descend = [&](auto&& self, int next, int remaining) -> void {
        if (remaining == 0) {
            std::set<int> s(subset.begin(), subset.end());
            for (const auto& z : surjections(p)) {
                auto des = descent_set(z);
                if (std::includes(s.begin(), s.end(), des.begin(), des.end()))
                    r += apply_surjection(z, w, mode);
            }
            return;
        }
        for (int v = next; v <= p - 1; ++v) {
            subset.push_back(v);
            self(self, v + 1, remaining - 1);
            subset.pop_back();
        }
    };
    descend(descend, 1, k - 1);
    return r;
}

// ---------------------------------------------------------------------------
// Series assembly

namespace {

// pi . w = a_{pi(1)} ... a_{pi(p)} for a permutation in one-line notation
Word permute(const std::vector<int>& pi, const Word& w) {
    std::vector<Letter> ls;
    ls.reserve(pi.size());
    for (int j : pi) ls.push_back(w[static_cast<std::size_t>(j - 1)]);
    return Word(std::move(ls));
}

std::vector<int> inverse_perm(const std::vector<int>& pi) {
    std::vector<int> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) inv[static_cast<std::size_t>(pi[i] - 1)] = static_cast<int>(i) + 1;
    return inv;
}

int perm_descents(const std::vector<int>& pi) {
    int d = 0;
    for (std::size_t k = 0; k + 1 < pi.size(); ++k)
        if (pi[k + 1] < pi[k]) ++d;
    return d;
}

Rational chen_strichartz_coeff(const std::vector<int>& pi) {
    const int p = static_cast<int>(pi.size());
    const unsigned d = static_cast<unsigned>(perm_descents(pi));
    Rational c(d % 2 == 0 ? 1 : -1, p);
    return c / binomial_rat(static_cast<unsigned>(p - 1), d);
}

template <typename F>
void for_each_permutation(int p, F&& f) {
    std::vector<int> pi(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) pi[static_cast<std::size_t>(i)] = i + 1;
    do {
        f(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
}

std::vector<Word> series_words(int d, int max_weight) {
    Alphabet a{d, BracketMode::Continuous};
    return a.words_up_to_weight(max_weight);
}

}  // namespace

LieSeries strat_lie_series(int d, int max_weight) {
    if (d < 1 || max_weight < 1) throw std::invalid_argument("series wants d >= 1, weight >= 1");
    LieSeries s{SeriesFlavor::Stratonovich, ItoForm::Expanded, d, max_weight, {}};
    for (const auto& w : series_words(d, max_weight)) {
        Poly ip = hopf::log_shuffle(w) * Rational(1, static_cast<long>(w.length()));
        if (ip.is_zero()) continue;
        LiePoly br = hopf::left_bracketing(w);
        if (br.expand().is_zero()) continue;
        s.terms.push_back({w, std::move(ip), std::move(br)});
    }
    return s;
}

LieSeries ito_lie_series(int d, int max_weight, ItoForm form) {
    if (d < 1 || max_weight < 1) throw std::invalid_argument("series wants d >= 1, weight >= 1");
    LieSeries s{SeriesFlavor::Ito, form, d, max_weight, {}};
    for (const auto& w : series_words(d, max_weight)) {
        const long p = static_cast<long>(w.length());
        if (form == ItoForm::Expanded) {
            // sum_sigma (c_sigma/|sigma|) I_{exp_H(sigma^{-1}(w))} against [w]_L
            LiePoly br = hopf::left_bracketing(w);
            if (br.expand().is_zero()) continue;
            Poly ip;
            for_each_permutation(static_cast<int>(p), [&](const std::vector<int>& pi) {
                Rational c = chen_strichartz_coeff(pi) / Rational(p);
                ip += hoffman::ito_strat_word_conversion(permute(inverse_perm(pi), w)) * c;
            });
            if (ip.is_zero()) continue;
            s.terms.push_back({w, std::move(ip), std::move(br)});
        } else {
            // I_w against sum_sigma (c_sigma/|sigma|)[sigma(w)]_L plus the
            // ]]w[[ resummation corrections
            LiePoly br;
            auto add_theta_sum = [&](const Word& u, const Rational& scale) {
                const long q = static_cast<long>(u.length());
                for_each_permutation(static_cast<int>(q), [&](const std::vector<int>& pi) {
                    br.add(permute(pi, u), scale * chen_strichartz_coeff(pi) / Rational(q));
                });
            };
            add_theta_sum(w, 1);
            for (const auto& u : hoffman::bracket_expansions(w)) {
                const long grow = static_cast<long>(u.length()) - p;
                add_theta_sum(u, Rational(1, 1L << grow));
            }
            if (br.expand().is_zero()) continue;
            s.terms.push_back({w, Poly(w), std::move(br)});
        }
    }
    return s;
}

TensorPoly flowmap_expansion(int d, int max_weight) {
    TensorPoly s;
    s.add(Word(), Word(), 1);
    for (const auto& w : series_words(d, max_weight)) s.add(w, w, 1);
    return s;
}

namespace {

TensorPoly tensor_mul_trunc(const TensorPoly& a, const TensorPoly& b, int max_weight,
                            freealg::Product left) {
    TensorPoly r;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.first.weight() + kb.first.weight() > max_weight) continue;
            Poly lp = freealg::word_product(ka.first, kb.first, left);
            const Word right = ka.second + kb.second;
            for (const auto& [u, c] : lp.terms()) r.add(u, right, ca * cb * c);
        }
    }
    return r;
}

}  // namespace

TensorPoly tensor_log(const TensorPoly& s, int max_weight, freealg::Product left) {
    TensorPoly x = s;
    x.add(Word(), Word(), -1);
    TensorPoly r;
    TensorPoly power;
    power.add(Word(), Word(), 1);
    for (int k = 1; k <= max_weight; ++k) {
        power = tensor_mul_trunc(power, x, max_weight, left);
        TensorPoly t = power;
        t *= Rational(k % 2 == 1 ? 1 : -1, k);
        r += t;
    }
    return r;
}

TensorPoly tensor_exp(const TensorPoly& s, int max_weight, freealg::Product left) {
    TensorPoly r;
    r.add(Word(), Word(), 1);
    TensorPoly power;
    power.add(Word(), Word(), 1);
    Rational inv_fact(1);
    for (int k = 1; k <= max_weight; ++k) {
        power = tensor_mul_trunc(power, s, max_weight, left);
        inv_fact /= k;
        TensorPoly t = power;
        t *= inv_fact;
        r += t;
    }
    return r;
}

TensorPoly canonical_expansion(const LieSeries& series) {
    TensorPoly out;
    for (const auto& term : series.terms) {
        Poly left = series.flavor == SeriesFlavor::Stratonovich
                        ? hoffman::ito_strat_word_conversion(term.integral_poly)
                        : term.integral_poly;
        Poly right = hoffman::hoffman_log_adjoint(term.bracket.expand(), BracketMode::Continuous);
        for (const auto& [u, cu] : left.terms())
            for (const auto& [v, cv] : right.terms()) out.add(u, v, cu * cv);
    }
    return out;
}

}  // namespace qslie::strichartz
