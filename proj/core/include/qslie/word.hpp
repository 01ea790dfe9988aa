#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qslie {

// Bracket arithmetic of the alphabet generator [.,.].
//
// Continuous: the generator is nilpotent of degree 3 and orthogonal across
// distinct drivers, so the only surviving brackets are [i,i] of base letters.
// Free: the generator merges multisets and never vanishes; no nilpotency.
enum class BracketMode { Continuous, Free };

// A letter is either a base driver index i >= 1 or a bracket letter
// [k1,...,kn] holding a sorted multiset of base indices (n >= 2). Sorting is
// the canonical form; equality of letters is equality of canonical forms.
class Letter {
  public:
    static Letter base(int index) {
        if (index < 1) throw std::invalid_argument("base letter index must be >= 1");
        return Letter(std::vector<int>{index});
    }

    static Letter bracket(std::vector<int> indices) {
        if (indices.size() < 2) throw std::invalid_argument("bracket letter needs >= 2 indices");
        for (int i : indices)
            if (i < 1) throw std::invalid_argument("bracket letter index must be >= 1");
        std::sort(indices.begin(), indices.end());
        return Letter(std::move(indices));
    }

    bool is_base() const { return parts_.size() == 1; }
    bool is_bracket() const { return parts_.size() >= 2; }
    int base_index() const { return parts_.front(); }

    // Weight: 1 for a base letter, multiset size for a bracket letter.
    int weight() const { return static_cast<int>(parts_.size()); }

    const std::vector<int>& parts() const { return parts_; }

    // Multiset merge; the Free-mode bracket product of two letters.
    static Letter merge(const Letter& a, const Letter& b) {
        std::vector<int> m;
        m.reserve(a.parts_.size() + b.parts_.size());
        std::merge(a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
                   std::back_inserter(m));
        return Letter(std::move(m));
    }

    friend bool operator==(const Letter& a, const Letter& b) = default;
    friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
        if (auto c = a.weight() <=> b.weight(); c != 0) return c;
        return a.parts_ <=> b.parts_;
    }

  private:
    explicit Letter(std::vector<int> parts) : parts_(std::move(parts)) {}
    std::vector<int> parts_;
};

// A finite sequence of letters; the empty word is the unit of concatenation.
// Words order by (weight, length, letter sequence), which fixes every
// serialized and printed term order in the project.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}

    bool empty() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    int weight() const {
        int w = 0;
        for (const auto& a : letters_) w += a.weight();
        return w;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    Word prefix(std::size_t n) const {
        return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + n));
    }
    Word suffix_from(std::size_t n) const {
        return Word(std::vector<Letter>(letters_.begin() + n, letters_.end()));
    }

    Word appended(const Letter& a) const {
        auto ls = letters_;
        ls.push_back(a);
        return Word(std::move(ls));
    }

    Word reversed() const {
        return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
    }

    friend Word operator+(const Word& u, const Word& v) {
        std::vector<Letter> ls = u.letters_;
        ls.insert(ls.end(), v.letters_.begin(), v.letters_.end());
        return Word(std::move(ls));
    }

    friend bool operator==(const Word& a, const Word& b) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.weight() <=> b.weight(); c != 0) return c;
        if (auto c = a.length() <=> b.length(); c != 0) return c;
        return a.letters_ <=> b.letters_;
    }

  private:
    std::vector<Letter> letters_;
};

inline Word word_of(std::initializer_list<int> base_indices) {
    std::vector<Letter> ls;
    ls.reserve(base_indices.size());
    for (int i : base_indices) ls.push_back(Letter::base(i));
    return Word(std::move(ls));
}

// The alphabet of a d-driver system. Continuous mode carries the base
// letters and their quadratic-variation letters [i,i]; Free mode carries all
// bracket multisets, enumerated on demand by weight.
struct Alphabet {
    int d = 1;
    BracketMode mode = BracketMode::Continuous;

    std::vector<Letter> letters_of_weight(int k) const {
        std::vector<Letter> out;
        if (k == 1) {
            for (int i = 1; i <= d; ++i) out.push_back(Letter::base(i));
        } else if (mode == BracketMode::Continuous) {
            if (k == 2)
                for (int i = 1; i <= d; ++i) out.push_back(Letter::bracket({i, i}));
        } else {
            // all multisets of size k over {1..d}, lexicographic
            std::vector<int> cur;
            enumerate_multisets(1, k, cur, out);
        }
        return out;
    }

    // All nonempty words of weight <= max_weight, in canonical word order.
    std::vector<Word> words_up_to_weight(int max_weight) const;
    // All words of weight exactly n, in canonical word order.
    std::vector<Word> words_of_weight(int n) const;

  private:
    void enumerate_multisets(int min, int left, std::vector<int>& cur,
                             std::vector<Letter>& out) const {
        if (left == 0) {
            out.push_back(Letter::bracket(cur));
            return;
        }
        for (int i = min; i <= d; ++i) {
            cur.push_back(i);
            enumerate_multisets(i, left - 1, cur, out);
            cur.pop_back();
        }
    }
};

}  // namespace qslie
