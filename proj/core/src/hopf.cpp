#include "qslie/hopf.hpp"

#include <memory>
#include <stdexcept>

namespace qslie::hopf {

using freealg::word_product;

Poly aug_proj(const Word& w) { return w.empty() ? Poly::zero() : Poly(w); }

Poly conv_product(const GradedEndo& X, const GradedEndo& Y, const Word& w, Product prod) {
    Poly r;
    for (std::size_t i = 0; i <= w.length(); ++i) {
        Poly xu = X(w.prefix(i));
        if (xu.is_zero()) continue;
        Poly yv = Y(w.suffix_from(i));
        if (yv.is_zero()) continue;
        for (const auto& [u, cu] : xu.terms())
            for (const auto& [v, cv] : yv.terms()) r += word_product(u, v, prod) * (cu * cv);
    }
    return r;
}

Poly conv_qshuffle(const GradedEndo& X, const GradedEndo& Y, const Word& w, BracketMode mode) {
    return conv_product(X, Y, w, freealg::product_of(mode));
}

Poly conv_power(int k, const Word& w, Product prod) {
    if (k < 1) throw std::invalid_argument("convolution power wants k >= 1");
    const int n = static_cast<int>(w.length());
    if (k > n) return Poly::zero();
    if (k == 1) return aug_proj(w);
    Poly r;
    // first nonempty part, then recurse on the tail with k-1 parts
    for (int i = 1; i <= n - k + 1; ++i) {
        const Word head = w.prefix(i);
        for (const auto& [v, c] : conv_power(k - 1, w.suffix_from(i), prod).terms())
            r += word_product(head, v, prod) * c;
    }
    return r;
}

Poly conv_power_qshuffle(int k, const Word& w, BracketMode mode) {
    return conv_power(k, w, freealg::product_of(mode));
}

Poly log_conv(const Word& w, Product prod) {
    Poly r;
    for (int k = 1; k <= static_cast<int>(w.length()); ++k)
        r += conv_power(k, w, prod) * Rational(k % 2 == 1 ? 1 : -1, k);
    return r;
}

Poly log_star(const Word& w, BracketMode mode) { return log_conv(w, freealg::product_of(mode)); }

Poly log_shuffle(const Word& w) { return log_conv(w, Product::Shuffle); }

namespace {

// k-fold deshuffle splittings with all parts nonempty, concatenated back.
// Each letter position is assigned one of k slots; slots keep position order.
void eulerian_parts(const Word& w, int k, Poly& out, const Rational& coeff) {
    const std::size_t n = w.length();
    std::vector<int> slot(n, 0);
    while (true) {
        std::vector<std::vector<Letter>> parts(k);
        for (std::size_t i = 0; i < n; ++i) parts[slot[i]].push_back(w[i]);
        bool ok = true;
        for (const auto& p : parts)
            if (p.empty()) {
                ok = false;
                break;
            }
        if (ok) {
            std::vector<Letter> cat;
            for (const auto& p : parts) cat.insert(cat.end(), p.begin(), p.end());
            out.add(Word(std::move(cat)), coeff);
        }
        std::size_t i = 0;
        while (i < n && slot[i] == k - 1) slot[i++] = 0;
        if (i == n) break;
        ++slot[i];
    }
}

}  // namespace

Poly eulerian(const Word& w) {
    Poly r;
    for (int k = 1; k <= static_cast<int>(w.length()); ++k)
        eulerian_parts(w, k, r, Rational(k % 2 == 1 ? 1 : -1, k));
    return r;
}

Poly left_bracketing_expand(const Word& w) {
    if (w.empty()) throw std::invalid_argument("left bracketing of the empty word");
    if (w.length() == 1) return Poly(w);
    Poly rest = left_bracketing_expand(w.suffix_from(1));
    const Word head = w.prefix(1);
    Poly r;
    for (const auto& [v, c] : rest.terms()) {
        r.add(head + v, c);
        r.add(v + head, -c);
    }
    return r;
}

LiePoly left_bracketing(const Word& w) {
    if (w.empty()) throw std::invalid_argument("left bracketing of the empty word");
    LiePoly p;
    p.add(w, 1);
    return p;
}

Poly dynkin(const Poly& p) {
    // theta(e) := 0, so the empty-word component is dropped; the rest must
    // be length-homogeneous.
    std::size_t len = 0;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        if (w.empty()) continue;
        if (first) {
            len = w.length();
            first = false;
        } else if (w.length() != len) {
            throw std::invalid_argument("dynkin wants length-homogeneous input");
        }
    }
    Poly r;
    for (const auto& [w, c] : p.terms()) {
        if (w.empty()) continue;
        r += left_bracketing_expand(w) * (c / Rational(static_cast<long>(w.length())));
    }
    return r;
}

GradedEndo adjoint_on_weight(const GradedEndo& X, int weight, const Alphabet& alphabet) {
    auto basis = std::make_shared<std::vector<Word>>(alphabet.words_of_weight(weight));
    // column images of X over the basis
    auto images = std::make_shared<std::vector<Poly>>();
    images->reserve(basis->size());
    for (const auto& v : *basis) images->push_back(X(v));
    return [basis, images, weight](const Word& u) {
        if (u.weight() != weight)
            throw std::invalid_argument("adjoint endomorphism applied off its weight");
        Poly r;
        for (std::size_t j = 0; j < basis->size(); ++j) {
            Rational c = (*images)[j].coeff(u);  // <u, X(v_j)>
            r.add((*basis)[j], c);
        }
        return r;
    };
}

bool is_lie_element(const Poly& p) {
    std::map<std::size_t, Poly> by_length;
    for (const auto& [w, c] : p.terms()) {
        if (w.empty()) return false;
        by_length[w.length()].add(w, c);
    }
    for (const auto& [len, comp] : by_length)
        if (dynkin(comp) != comp) return false;
    return true;
}

bool is_primitive_deshuffle(const Poly& p) {
    TensorPoly d = freealg::deshuffle(p);
    for (const auto& [w, c] : p.terms()) {
        d.add(w, Word(), -c);
        d.add(Word(), w, -c);
    }
    return d.is_zero();
}

Poly antipode_signed_reversal(const Poly& p) {
    Poly r;
    for (const auto& [w, c] : p.terms())
        r.add(w.reversed(), w.length() % 2 == 0 ? c : -c);
    return r;
}

}  // namespace qslie::hopf
