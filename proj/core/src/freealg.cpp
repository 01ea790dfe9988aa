#include "qslie/freealg.hpp"

#include <map>
#include <tuple>

namespace qslie::freealg {

std::optional<Letter> bracket_letter(const Letter& a, const Letter& b, BracketMode mode) {
    if (mode == BracketMode::Free) return Letter::merge(a, b);
    // Continuous: nilpotent of degree 3, orthogonal drivers. Only [i,i] of a
    // base letter with itself survives.
    if (a.is_base() && b.is_base() && a == b)
        return Letter::bracket({a.base_index(), a.base_index()});
    return std::nullopt;
}

Poly bracket(const Letter& a, const Letter& b, BracketMode mode) {
    auto c = bracket_letter(a, b, mode);
    if (!c) return Poly::zero();
    return Poly(Word({*c}));
}

namespace {

std::optional<Letter> product_bracket(const Letter& a, const Letter& b, Product prod) {
    switch (prod) {
        case Product::Shuffle: return std::nullopt;
        case Product::QuasiContinuous: return bracket_letter(a, b, BracketMode::Continuous);
        case Product::QuasiFree: return bracket_letter(a, b, BracketMode::Free);
    }
    return std::nullopt;
}

using Key = std::tuple<Word, Word, Product>;

Poly word_product_memo(const Word& u, const Word& v, Product prod, std::map<Key, Poly>& memo) {
    if (u.empty()) return Poly(v);
    if (v.empty()) return Poly(u);
    Key key{u, v, prod};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const Letter a = u.letters().back();
    const Letter b = v.letters().back();
    const Word uh = u.prefix(u.length() - 1);
    const Word vh = v.prefix(v.length() - 1);

    Poly r;
    for (const auto& [w, c] : word_product_memo(uh, v, prod, memo).terms()) r.add(w.appended(a), c);
    for (const auto& [w, c] : word_product_memo(u, vh, prod, memo).terms()) r.add(w.appended(b), c);
    if (auto br = product_bracket(a, b, prod))
        for (const auto& [w, c] : word_product_memo(uh, vh, prod, memo).terms())
            r.add(w.appended(*br), c);

    memo.emplace(std::move(key), r);
    return r;
}

std::map<Key, Poly>& cache() {
    thread_local std::map<Key, Poly> memo;
    return memo;
}

}  // namespace

Poly word_product(const Word& u, const Word& v, Product prod) {
    return word_product_memo(u, v, prod, cache());
}

Poly qshuffle(const Word& u, const Word& v, BracketMode mode) {
    return word_product(u, v, product_of(mode));
}

Poly qshuffle(const Poly& p, const Poly& q, BracketMode mode) {
    Poly r;
    for (const auto& [u, cu] : p.terms())
        for (const auto& [v, cv] : q.terms()) r += qshuffle(u, v, mode) * (cu * cv);
    return r;
}

Poly shuffle(const Word& u, const Word& v) { return word_product(u, v, Product::Shuffle); }

Poly shuffle(const Poly& p, const Poly& q) {
    Poly r;
    for (const auto& [u, cu] : p.terms())
        for (const auto& [v, cv] : q.terms()) r += shuffle(u, v) * (cu * cv);
    return r;
}

Rational pairing(const Poly& p, const Poly& q) {
    // iterate the smaller term map
    const Poly& a = p.size() <= q.size() ? p : q;
    const Poly& b = p.size() <= q.size() ? q : p;
    Rational s(0);
    for (const auto& [w, c] : a.terms()) s += c * b.coeff(w);
    return s;
}

Rational pairing(const TensorPoly& p, const Word& u, const Word& v) { return p.coeff(u, v); }

TensorPoly deconcat(const Word& w) {
    TensorPoly r;
    for (std::size_t i = 0; i <= w.length(); ++i) r.add(w.prefix(i), w.suffix_from(i), 1);
    return r;
}

namespace {

// Delta'(a) for a single letter: a (x) e + e (x) a + sum_{[b,c]=a} b (x) c.
// The candidate pairs (b,c) are the ordered two-block splits of the bracket
// multiset; base letters admit none.
TensorPoly dequasishuffle_letter(const Letter& a, BracketMode mode) {
    TensorPoly r;
    const Word wa({a});
    r.add(wa, Word(), 1);
    r.add(Word(), wa, 1);
    if (a.is_bracket()) {
        if (mode == BracketMode::Continuous) {
            // only [i,i] occurs; its sole split is (i, i)
            const Word wi({Letter::base(a.parts()[0])});
            r.add(wi, wi, 1);
        } else {
            // ordered splits of the multiset into two nonempty sub-multisets,
            // enumerated by multiplicity vectors
            std::vector<std::pair<int, int>> mult;  // (value, count)
            for (int v : a.parts()) {
                if (!mult.empty() && mult.back().first == v)
                    ++mult.back().second;
                else
                    mult.emplace_back(v, 1);
            }
            const std::size_t m = mult.size();
            std::vector<int> take(m, 0);
            while (true) {
                // advance odometer
                std::size_t i = 0;
                while (i < m && take[i] == mult[i].second) take[i++] = 0;
                if (i == m) break;
                ++take[i];
                std::vector<int> left, right;
                for (std::size_t j = 0; j < m; ++j) {
                    for (int k = 0; k < take[j]; ++k) left.push_back(mult[j].first);
                    for (int k = take[j]; k < mult[j].second; ++k) right.push_back(mult[j].first);
                }
                if (left.empty() || right.empty()) continue;
                auto mk = [](const std::vector<int>& ix) {
                    return ix.size() == 1 ? Letter::base(ix[0]) : Letter::bracket(ix);
                };
                r.add(Word({mk(left)}), Word({mk(right)}), 1);
            }
        }
    }
    return r;
}

// componentwise concatenation product on TensorPoly
TensorPoly conc_tensor_mul(const TensorPoly& a, const TensorPoly& b) {
    TensorPoly r;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

}  // namespace

TensorPoly dequasishuffle(const Word& w, BracketMode mode) {
    TensorPoly r;
    r.add(Word(), Word(), 1);
    for (const auto& a : w.letters()) r = conc_tensor_mul(r, dequasishuffle_letter(a, mode));
    return r;
}

TensorPoly dequasishuffle(const Poly& p, BracketMode mode) {
    TensorPoly r;
    for (const auto& [w, c] : p.terms()) {
        TensorPoly t = dequasishuffle(w, mode);
        t *= c;
        r += t;
    }
    return r;
}

TensorPoly deshuffle(const Word& w) {
    const std::size_t n = w.length();
    TensorPoly r;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Letter> u, v;
        for (std::size_t i = 0; i < n; ++i)
            ((mask >> i) & 1 ? u : v).push_back(w[i]);
        r.add(Word(std::move(u)), Word(std::move(v)), 1);
    }
    return r;
}

TensorPoly deshuffle(const Poly& p) {
    TensorPoly r;
    for (const auto& [w, c] : p.terms()) {
        TensorPoly t = deshuffle(w);
        t *= c;
        r += t;
    }
    return r;
}

}  // namespace qslie::freealg

namespace qslie {

std::vector<Word> Alphabet::words_up_to_weight(int max_weight) const {
    std::vector<Word> out;
    std::vector<Word> frontier{Word()};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (int k = 1; k + w.weight() <= max_weight; ++k) {
                for (const auto& a : letters_of_weight(k)) {
                    Word ww = w.appended(a);
                    out.push_back(ww);
                    next.push_back(std::move(ww));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> Alphabet::words_of_weight(int n) const {
    std::vector<Word> out;
    for (const auto& w : words_up_to_weight(n))
        if (w.weight() == n) out.push_back(w);
    return out;
}

}  // namespace qslie
