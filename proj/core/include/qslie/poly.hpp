#pragma once

#include <map>
#include <utility>

#include "qslie/rational.hpp"
#include "qslie/word.hpp"

namespace qslie {

// Finite linear combination of words with exact rational coefficients.
// Zero coefficients are never stored; the term map iterates in canonical
// word order, so printing and serialization are deterministic.
class Poly {
  public:
    using Terms = std::map<Word, Rational>;

    Poly() = default;
    explicit Poly(const Word& w) { terms_[w] = 1; }
    Poly(const Word& w, Rational c) { add(w, std::move(c)); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Word()); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // ref-qualified so iterating a temporary's terms stays valid
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }

    Rational coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Word& w, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, v] : terms_) v *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }

    friend bool operator==(const Poly& a, const Poly& b) = default;

    int max_weight() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.weight();
    }

  private:
    Terms terms_;
};

// Concatenation product, extended bilinearly.
inline Poly concat_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) r.add(u + v, cu * cv);
    return r;
}

// Finite linear combination of word pairs u (x) v. Houses coproduct outputs
// and the flowmap-logarithm computations.
class TensorPoly {
  public:
    using Key = std::pair<Word, Word>;
    using Terms = std::map<Key, Rational>;

    TensorPoly() = default;

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }

    Rational coeff(const Word& u, const Word& v) const {
        auto it = terms_.find({u, v});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Word& u, const Word& v, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(Key{u, v}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TensorPoly& operator+=(const TensorPoly& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    TensorPoly& operator-=(const TensorPoly& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
        return *this;
    }
    TensorPoly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }

    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator*(TensorPoly a, const Rational& c) { return a *= c; }

    friend bool operator==(const TensorPoly& a, const TensorPoly& b) = default;

  private:
    Terms terms_;
};

inline TensorPoly tensor(const Poly& a, const Poly& b) {
    TensorPoly r;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) r.add(u, v, cu * cv);
    return r;
}

}  // namespace qslie
