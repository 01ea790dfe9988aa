#include "qslie/sm/integrals.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qslie/freealg.hpp"

namespace qslie::sm {

namespace {

int letter_index(const Letter& a, int d) {
    if (a.is_base()) {
        if (a.base_index() > d) throw std::invalid_argument("letter outside alphabet");
        return a.base_index() - 1;
    }
    if (a.weight() != 2 || a.parts()[0] != a.parts()[1] || a.parts()[0] > d)
        throw std::invalid_argument("iterated integrals want continuous-mode words");
    return d + a.parts()[0] - 1;
}

}  // namespace

IntegralPlan::IntegralPlan(const std::vector<Word>& words, int d) : d_(d) {
    std::set<Word> closure;
    for (const auto& w : words) {
        if (w.empty()) continue;
        for (std::size_t i = 1; i <= w.length(); ++i) closure.insert(w.prefix(i));
    }
    words_.assign(closure.begin(), closure.end());
    nodes_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const Word& w = words_[i];
        Node& n = nodes_[i];
        n.len = w.length();
        n.letter = letter_index(w.letters().back(), d_);
        if (w.length() == 1) {
            n.parent = -1;
        } else {
            Word p = w.prefix(w.length() - 1);
            auto it = std::lower_bound(words_.begin(), words_.end(), p);
            n.parent = static_cast<int>(it - words_.begin());
        }
    }
    update_order_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) update_order_[i] = static_cast<int>(i);
    std::sort(update_order_.begin(), update_order_.end(),
              [this](int a, int b) { return nodes_[static_cast<std::size_t>(a)].len >
                                            nodes_[static_cast<std::size_t>(b)].len; });
}

void IntegralPlan::reset(double* values) const {
    std::fill(values, values + nodes_.size(), 0.0);
}

void IntegralPlan::substep(double* values, const double* dw, double dt_sub) const {
    // longest words first so parents still hold their left-point values
    for (int idx : update_order_) {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        const double parent = n.parent < 0 ? 1.0 : values[static_cast<std::size_t>(n.parent)];
        const double dx = n.letter < d_ ? dw[n.letter] : dt_sub;
        values[static_cast<std::size_t>(idx)] += parent * dx;
    }
}

double IntegralPlan::value(const double* values, const Word& w) const {
    if (w.empty()) return 1.0;
    return values[static_cast<std::size_t>(index_of(w))];
}

int IntegralPlan::index_of(const Word& w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) throw std::invalid_argument("word missing from plan");
    return static_cast<int>(it - words_.begin());
}

IteratedIntegralTable iterated_integrals(const DriverPath& path, const std::vector<Word>& words,
                                         std::uint64_t refinement) {
    if (!is_power_of_two(refinement) || refinement > path.n_steps ||
        path.n_steps % refinement != 0)
        throw std::invalid_argument("refinement must be a power of two dividing n_steps");
    DriverPath grid = refinement == path.n_steps ? path : path.coarsened(path.n_steps / refinement);
    IntegralPlan plan(words, path.d);
    std::vector<double> values(plan.node_count());
    plan.reset(values.data());
    const double dt = grid.dt();
    for (std::uint64_t k = 0; k < grid.n_steps; ++k)
        plan.substep(values.data(), &grid.increments[k * static_cast<std::uint64_t>(grid.d)], dt);
    IteratedIntegralTable table;
    table[Word()] = 1.0;
    for (const auto& w : words)
        if (!w.empty()) table[w] = plan.value(values.data(), w);
    return table;
}

double quasi_shuffle_residual(const DriverPath& path, const Word& u, const Word& v,
                              std::uint64_t refinement) {
    if (u.empty() || v.empty()) return 0.0;
    Poly product = freealg::qshuffle(u, v, BracketMode::Continuous);
    std::vector<Word> needed{u, v};
    for (const auto& [w, c] : product.terms()) needed.push_back(w);
    auto table = iterated_integrals(path, needed, refinement);
    double rhs = 0;
    for (const auto& [w, c] : product.terms()) rhs += mpq_get_d(c.get_mpq_t()) * table.at(w);
    return std::abs(table.at(u) * table.at(v) - rhs);
}

}  // namespace qslie::sm
