#include "qslie/sm/stepper.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "qslie/hoffman.hpp"

namespace qslie::sm {

void LinearSystem::validate() const {
    if (N < 1) throw std::invalid_argument("system dimension must be >= 1");
    if (A.empty()) throw std::invalid_argument("system needs at least one field matrix");
    for (const auto& m : A)
        if (m.rows() != N || m.cols() != N)
            throw std::invalid_argument("field matrix dimensions disagree with N");
}

Eigen::MatrixXd letter_matrix(const LinearSystem& sys, const Letter& a, BracketFields bf) {
    if (a.is_base()) {
        if (a.base_index() > sys.d()) throw std::invalid_argument("letter outside system alphabet");
        return sys.A[static_cast<std::size_t>(a.base_index() - 1)];
    }
    if (a.weight() != 2 || a.parts()[0] != a.parts()[1] || a.parts()[0] > sys.d())
        throw std::invalid_argument("linear systems carry only [i,i] bracket letters");
    if (bf == BracketFields::Zero) return Eigen::MatrixXd::Zero(sys.N, sys.N);
    const auto& Ai = sys.A[static_cast<std::size_t>(a.parts()[0] - 1)];
    return -0.5 * (Ai * Ai);
}

Eigen::MatrixXd word_matrix(const LinearSystem& sys, const Word& w, BracketFields bf) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(sys.N, sys.N);
    // anti-homomorphism: last letter's matrix multiplies from the left
    for (const auto& a : w.letters()) m = letter_matrix(sys, a, bf) * m;
    return m;
}

Eigen::MatrixXd lie_poly_matrix(const LinearSystem& sys, const hopf::LiePoly& bracket,
                                BracketFields bf) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sys.N, sys.N);
    for (const auto& [w, c] : bracket.expand().terms())
        m.noalias() += mpq_get_d(c.get_mpq_t()) * word_matrix(sys, w, bf);
    return m;
}

bool scheme_keeps_word(const Word& w, int truncation_weight) {
    return w.weight() <= truncation_weight || w.length() == 1;
}

CompiledSeries compile_series(const strichartz::LieSeries& series, const LinearSystem& sys,
                              BracketFields bf, int truncation_weight) {
    sys.validate();
    CompiledSeries out;
    out.N = sys.N;

    // gather integral words in the Ito basis
    std::map<Word, int> index;
    auto intern = [&](const Word& w) {
        auto [it, fresh] = index.emplace(w, 0);
        (void)fresh;
        return it;
    };
    struct Pending {
        std::map<Word, double> coeffs;
        Eigen::MatrixXd matrix;
    };
    std::vector<Pending> pending;

    for (const auto& term : series.terms) {
        if (!scheme_keeps_word(term.base_word, truncation_weight)) continue;
        Eigen::MatrixXd m = lie_poly_matrix(sys, term.bracket, bf);
        if (m.cwiseAbs().maxCoeff() == 0.0) continue;
        Poly ito = series.flavor == strichartz::SeriesFlavor::Stratonovich
                       ? hoffman::ito_strat_word_conversion(term.integral_poly)
                       : term.integral_poly;
        if (ito.is_zero()) continue;
        Pending p;
        p.matrix = std::move(m);
        for (const auto& [w, c] : ito.terms()) {
            intern(w);
            p.coeffs[w] += mpq_get_d(c.get_mpq_t());
        }
        pending.push_back(std::move(p));
    }

    int next = 0;
    for (auto& [w, idx] : index) idx = next++;
    out.integral_words.reserve(index.size());
    for (const auto& [w, idx] : index) out.integral_words.push_back(w);

    for (auto& p : pending) {
        CompiledSeries::Term t;
        t.matrix = std::move(p.matrix);
        for (const auto& [w, c] : p.coeffs) t.coeffs.emplace_back(index.at(w), c);
        out.terms.push_back(std::move(t));
    }
    return out;
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) { return m.exp(); }

void apply_exp_taylor(const Eigen::MatrixXd& L, Eigen::VectorXd& y, int order) {
    // v = y + L(y + L(y + ...)/k)/1, Horner over k = order..1
    Eigen::VectorXd v = y;
    for (int k = order; k >= 1; --k) v = y + (L * v) / static_cast<double>(k);
    y = v;
}

Eigen::MatrixXd lie_series_step(const strichartz::LieSeries& series, const LinearSystem& sys,
                                const IteratedIntegralTable& integrals, BracketFields bf,
                                int truncation_weight) {
    CompiledSeries cs = compile_series(series, sys, bf, truncation_weight);
    std::vector<double> vals(cs.integral_words.size());
    for (std::size_t i = 0; i < cs.integral_words.size(); ++i) {
        auto it = integrals.find(cs.integral_words[i]);
        if (it == integrals.end())
            throw std::invalid_argument("integral table misses a required word");
        vals[i] = it->second;
    }
    return matrix_exp(cs.generator(vals.data()));
}

}  // namespace qslie::sm
