#include "qslie/hoffman.hpp"

#include <optional>
#include <stdexcept>

#include "qslie/freealg.hpp"

namespace qslie::hoffman {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("composition needs at least one part");
    for (int p : parts_)
        if (p < 1) throw std::invalid_argument("composition parts must be positive");
}

int Composition::sum() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
}

long Composition::product() const {
    long s = 1;
    for (int p : parts_) s *= p;
    return s;
}

Rational Composition::factorial_product() const {
    Rational g(1);
    for (int p : parts_) g *= factorial_rat(static_cast<unsigned>(p));
    return g;
}

std::vector<Composition> compositions(int n) {
    if (n < 1) throw std::invalid_argument("compositions of n wants n >= 1");
    std::vector<Composition> out;
    std::vector<int> cur;
    // lexicographic by parts: smallest first part first
    auto rec = [&](auto&& self, int left) -> void {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = 1; p <= left; ++p) {
            cur.push_back(p);
            self(self, left - p);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

namespace {

// bracket a block of letters together; nullopt = the block vanishes
std::optional<Letter> bracket_block(const Word& w, std::size_t from, std::size_t len,
                                    BracketMode mode) {
    Letter cur = w[from];
    for (std::size_t j = 1; j < len; ++j) {
        auto next = freealg::bracket_letter(cur, w[from + j], mode);
        if (!next) return std::nullopt;
        cur = *next;
    }
    return cur;
}

}  // namespace

Poly comp_action(const Composition& lambda, const Word& w, BracketMode mode) {
    if (lambda.sum() != static_cast<int>(w.length()))
        throw std::invalid_argument("composition action: Sigma(lambda) != |w|");
    std::vector<Letter> out;
    std::size_t pos = 0;
    for (int part : lambda.parts()) {
        auto blk = bracket_block(w, pos, static_cast<std::size_t>(part), mode);
        if (!blk) return Poly::zero();
        out.push_back(*blk);
        pos += static_cast<std::size_t>(part);
    }
    return Poly(Word(std::move(out)));
}

Poly hoffman_exp(const Word& w, BracketMode mode) {
    if (w.empty()) return Poly::one();
    Poly r;
    for (const auto& lambda : compositions(static_cast<int>(w.length())))
        r += comp_action(lambda, w, mode) * (Rational(1) / lambda.factorial_product());
    return r;
}

Poly hoffman_log(const Word& w, BracketMode mode) {
    if (w.empty()) return Poly::one();
    Poly r;
    for (const auto& lambda : compositions(static_cast<int>(w.length()))) {
        const int sign_exp = lambda.sum() - lambda.num_parts();
        Rational c(sign_exp % 2 == 0 ? 1 : -1, lambda.product());
        r += comp_action(lambda, w, mode) * c;
    }
    return r;
}

Poly hoffman_exp(const Poly& p, BracketMode mode) {
    Poly r;
    for (const auto& [w, c] : p.terms()) r += hoffman_exp(w, mode) * c;
    return r;
}

Poly hoffman_log(const Poly& p, BracketMode mode) {
    Poly r;
    for (const auto& [w, c] : p.terms()) r += hoffman_log(w, mode) * c;
    return r;
}

namespace {

// Ordered factorizations of a letter: all tuples (a1,...,an) of letters with
// [a1,...,an] = a, together with n. Base letters factor only as themselves.
void letter_factorizations(const Letter& a,
                           const std::function<void(const std::vector<Letter>&)>& emit) {
    if (a.is_base()) {
        emit({a});
        return;
    }
    // ordered multiset partitions of a's parts into nonempty blocks
    std::vector<std::pair<int, int>> mult;
    for (int v : a.parts()) {
        if (!mult.empty() && mult.back().first == v)
            ++mult.back().second;
        else
            mult.emplace_back(v, 1);
    }
    const std::size_t m = mult.size();
    std::vector<Letter> seq;
    std::vector<int> rem(m);
    for (std::size_t j = 0; j < m; ++j) rem[j] = mult[j].second;
    auto rec = [&](auto&& self) -> void {
        bool done = true;
        for (std::size_t j = 0; j < m; ++j)
            if (rem[j] > 0) done = false;
        if (done) {
            emit(seq);
            return;
        }
        // next block: any nonempty sub-multiset of the remainder
        std::vector<int> take(m, 0);
        while (true) {
            std::size_t i = 0;
            while (i < m && take[i] == rem[i]) take[i++] = 0;
            if (i == m) break;
            ++take[i];
            std::vector<int> ix;
            for (std::size_t j = 0; j < m; ++j)
                for (int k = 0; k < take[j]; ++k) ix.push_back(mult[j].first);
            seq.push_back(ix.size() == 1 ? Letter::base(ix[0]) : Letter::bracket(ix));
            for (std::size_t j = 0; j < m; ++j) rem[j] -= take[j];
            self(self);
            for (std::size_t j = 0; j < m; ++j) rem[j] += take[j];
            seq.pop_back();
        }
    };
    rec(rec);
}

Poly adjoint_letter(const Letter& a, bool exp_flavor) {
    Poly r;
    letter_factorizations(a, [&](const std::vector<Letter>& seq) {
        const unsigned n = static_cast<unsigned>(seq.size());
        Rational c = exp_flavor ? Rational(1) / factorial_rat(n)
                                : Rational(n % 2 == 1 ? 1 : -1, static_cast<long>(n));
        r.add(Word(seq), c);
    });
    return r;
}

Poly adjoint_word(const Word& w, BracketMode mode, bool exp_flavor) {
    if (mode == BracketMode::Continuous) {
        for (const auto& a : w.letters())
            if (a.is_bracket() && (a.weight() != 2 || a.parts()[0] != a.parts()[1]))
                throw std::invalid_argument("continuous-mode word with a non-[i,i] bracket");
    }
    Poly r = Poly::one();
    for (const auto& a : w.letters()) r = concat_mul(r, adjoint_letter(a, exp_flavor));
    return r;
}

}  // namespace

Poly hoffman_exp_adjoint(const Word& w, BracketMode mode) { return adjoint_word(w, mode, true); }
Poly hoffman_log_adjoint(const Word& w, BracketMode mode) { return adjoint_word(w, mode, false); }

Poly hoffman_exp_adjoint(const Poly& p, BracketMode mode) {
    Poly r;
    for (const auto& [w, c] : p.terms()) r += hoffman_exp_adjoint(w, mode) * c;
    return r;
}

Poly hoffman_log_adjoint(const Poly& p, BracketMode mode) {
    Poly r;
    for (const auto& [w, c] : p.terms()) r += hoffman_log_adjoint(w, mode) * c;
    return r;
}

namespace {

void require_continuous_word(const Word& w, const char* what) {
    for (const auto& a : w.letters())
        if (a.is_bracket() && (a.weight() != 2 || a.parts()[0] != a.parts()[1]))
            throw std::invalid_argument(std::string(what) + " wants a continuous-alphabet word");
}

}  // namespace

std::set<Word> bracket_contractions(const Word& w) {
    require_continuous_word(w, "bracket_contractions");
    std::set<Word> out;
    std::vector<Word> frontier{w};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& u : frontier) {
            for (std::size_t i = 0; i + 1 < u.length(); ++i) {
                if (u[i].is_base() && u[i] == u[i + 1]) {
                    std::vector<Letter> ls(u.letters().begin(), u.letters().begin() + i);
                    ls.push_back(Letter::bracket({u[i].base_index(), u[i].base_index()}));
                    ls.insert(ls.end(), u.letters().begin() + i + 2, u.letters().end());
                    Word v(std::move(ls));
                    if (out.insert(v).second) next.push_back(std::move(v));
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::set<Word> bracket_expansions(const Word& w) {
    require_continuous_word(w, "bracket_expansions");
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < w.length(); ++i)
        if (w[i].is_bracket()) slots.push_back(i);
    std::set<Word> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << slots.size()); ++mask) {
        std::vector<Letter> ls;
        for (std::size_t i = 0; i < w.length(); ++i) {
            bool expand = false;
            for (std::size_t j = 0; j < slots.size(); ++j)
                if (slots[j] == i && ((mask >> j) & 1)) expand = true;
            if (expand) {
                ls.push_back(Letter::base(w[i].parts()[0]));
                ls.push_back(Letter::base(w[i].parts()[0]));
            } else {
                ls.push_back(w[i]);
            }
        }
        out.insert(Word(std::move(ls)));
    }
    return out;
}

Poly ito_strat_word_conversion(const Word& w) {
    require_continuous_word(w, "ito_strat_word_conversion");
    Poly r(w);
    const long n = static_cast<long>(w.length());
    for (const auto& u : bracket_contractions(w)) {
        const long drop = n - static_cast<long>(u.length());
        r.add(u, Rational(1, 1L << drop));
    }
    return r;
}

Poly ito_strat_word_conversion(const Poly& p) {
    Poly r;
    for (const auto& [w, c] : p.terms()) r += ito_strat_word_conversion(w) * c;
    return r;
}

}  // namespace qslie::hoffman
