// qslie: algebra queries, exponential Lie series generation and
// verification, and the numerical studies.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "qslie/hoffman.hpp"
#include "qslie/series_io.hpp"
#include "qslie/sm/study.hpp"
#include "qslie/strichartz.hpp"
#include "qslie/wordfmt.hpp"

using namespace qslie;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

BracketMode parse_mode(const std::string& m) {
    if (m == "continuous") return BracketMode::Continuous;
    if (m == "free") return BracketMode::Free;
    throw CLI::ValidationError("--mode", "must be continuous or free");
}

void print_poly(const Poly& p, bool as_json) {
    if (as_json) {
        ordered_json j;
        for (const auto& [w, c] : p.terms()) j[wordfmt::print_word(w)] = to_fraction_string(c);
        std::cout << j.dump(2) << "\n";
    } else {
        std::string s = wordfmt::print_poly(p);
        if (!s.empty()) std::cout << s << "\n";
    }
}

void print_tensor(const TensorPoly& t, bool as_json) {
    if (as_json) {
        ordered_json j;
        for (const auto& [k, c] : t.terms())
            j[wordfmt::print_word(k.first) + "|" + wordfmt::print_word(k.second)] =
                to_fraction_string(c);
        std::cout << j.dump(2) << "\n";
    } else {
        std::string s = wordfmt::print_tensor(t);
        if (!s.empty()) std::cout << s << "\n";
    }
}

struct Failure {
    std::string what;
};

int report(const std::vector<Failure>& failures, const std::string& scope, std::size_t checked) {
    if (failures.empty()) {
        std::cout << "PASS " << scope << " (" << checked << " checks)\n";
        return kExitOk;
    }
    std::cout << "FAIL " << scope << ": " << failures.size() << " of " << checked
              << " checks failed\n";
    std::cout << "first counterexample: " << failures.front().what << "\n";
    return kExitVerifyFail;
}

// exhaustive words over {1..d} of length <= max_len
std::vector<Word> base_words(int d, int max_len) {
    std::vector<Word> out;
    std::vector<Word> frontier{Word()};
    for (int k = 0; k < max_len; ++k) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (int i = 1; i <= d; ++i) {
                Word ww = w.appended(Letter::base(i));
                out.push_back(ww);
                next.push_back(std::move(ww));
            }
        frontier = std::move(next);
    }
    return out;
}

int verify_coeffs(int max_p, bool inject_fault) {
    std::vector<Failure> failures;
    std::size_t checked = 0;
    // enumeration sizes: ordered Bell numbers
    static const long bell[] = {1, 1, 3, 13, 75, 541};
    for (int p = 1; p <= std::min(max_p, 5); ++p) {
        ++checked;
        if (strichartz::surjections(p).size() != static_cast<std::size_t>(bell[p]))
            failures.push_back({"surjection count at p=" + std::to_string(p)});
    }
    for (BracketMode mode : {BracketMode::Continuous, BracketMode::Free}) {
        for (const auto& w : base_words(3, std::min(max_p, 4))) {
            ++checked;
            Poly lhs = strichartz::log_star_via_surjections(w, mode);
            if (inject_fault && w.length() == 2)
                lhs += Poly(w, Rational(1, 1000000));
            if (lhs != hopf::log_star(w, mode)) {
                failures.push_back({"log_star mismatch on word " + wordfmt::print_word(w)});
                continue;
            }
            for (int k = 1; k <= std::min(max_p, 4); ++k) {
                ++checked;
                if (strichartz::conv_power_via_descents(k, w, mode) !=
                    hopf::conv_power_qshuffle(k, w, mode))
                    failures.push_back({"conv power mismatch k=" + std::to_string(k) + " on " +
                                        wordfmt::print_word(w)});
            }
        }
    }
    return report(failures, "coeffs", checked);
}

int verify_algebra(int max_weight, bool inject_fault) {
    std::vector<Failure> failures;
    std::size_t checked = 0;
    auto expect = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok) failures.push_back({what});
    };

    for (BracketMode mode : {BracketMode::Continuous, BracketMode::Free}) {
        Alphabet alpha{2, mode};
        auto words = alpha.words_up_to_weight(max_weight);
        auto small = alpha.words_up_to_weight(std::min(3, max_weight));

        for (const auto& u : small)
            for (const auto& v : small) {
                if (u.weight() + v.weight() > max_weight) continue;
                Poly uv = freealg::qshuffle(u, v, mode);
                if (inject_fault) uv += Poly(u + v, Rational(1, 1000000));
                expect(uv == freealg::qshuffle(v, u, mode),
                       "commutativity at " + wordfmt::print_word(u) + " * " +
                           wordfmt::print_word(v));
            }

        for (const auto& w : words) {
            // duality of the de-quasi-shuffle coproduct
            TensorPoly dq = freealg::dequasishuffle(w, mode);
            for (const auto& u : small)
                for (const auto& v : small)
                    if (u.weight() + v.weight() == w.weight()) {
                        expect(dq.coeff(u, v) == freealg::qshuffle(u, v, mode).coeff(w),
                               "coproduct duality at " + wordfmt::print_word(w));
                    }
            // Hoffman inverse round trips
            expect(hoffman::hoffman_log(hoffman::hoffman_exp(w, mode), mode) == Poly(w),
                   "hoffman log(exp) != id at " + wordfmt::print_word(w));
            expect(hoffman::hoffman_log_adjoint(hoffman::hoffman_exp_adjoint(w, mode), mode) ==
                       Poly(w),
                   "hoffman adjoint log(exp) != id at " + wordfmt::print_word(w));
        }
    }

    // eulerian outputs are Lie; dynkin is idempotent
    Alphabet alpha{3, BracketMode::Continuous};
    for (const auto& w : base_words(3, std::min(4, max_weight))) {
        Poly e = hopf::eulerian(w);
        expect(hopf::dynkin(e) == e, "DFSW fixed point at " + wordfmt::print_word(w));
        Poly d1 = hopf::dynkin(Poly(w));
        expect(hopf::dynkin(d1) == d1, "dynkin idempotence at " + wordfmt::print_word(w));
    }
    (void)alpha;
    return report(failures, "algebra", checked);
}

int verify_coincidence(int d, int max_weight, bool inject_fault) {
    std::vector<Failure> failures;
    std::size_t checked = 0;
    using namespace strichartz;
    TensorPoly direct =
        tensor_log(flowmap_expansion(d, max_weight), max_weight, freealg::Product::QuasiContinuous);
    if (inject_fault) direct.add(Word({Letter::base(1)}), Word({Letter::base(1)}), Rational(1, 7));
    auto check = [&](const LieSeries& s, const std::string& name) {
        ++checked;
        if (canonical_expansion(s) != direct)
            failures.push_back({name + " disagrees with the direct tensor logarithm"});
    };
    check(strat_lie_series(d, max_weight), "stratonovich series");
    check(ito_lie_series(d, max_weight, ItoForm::Expanded), "ito expanded series");
    check(ito_lie_series(d, max_weight, ItoForm::Resummed), "ito resummed series");
    return report(failures, "coincidence", checked);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-shuffle exponential Lie series toolkit"};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    std::string mode_str = "continuous";
    bool as_json = false;

    // ---- alg ----
    auto* alg = app.add_subcommand("alg", "algebra queries on words");
    alg->require_subcommand(1);
    struct AlgState {
        std::string u, v, w;
    } algs;
    auto add_binary = [&](const char* name, const char* desc) {
        auto* c = alg->add_subcommand(name, desc);
        c->add_option("u", algs.u, "left word")->required();
        c->add_option("v", algs.v, "right word")->required();
        c->add_option("--mode", mode_str, "bracket mode: continuous|free");
        c->add_flag("--json", as_json, "emit a JSON map");
        return c;
    };
    auto add_unary = [&](const char* name, const char* desc) {
        auto* c = alg->add_subcommand(name, desc);
        c->add_option("w", algs.w, "word")->required();
        c->add_option("--mode", mode_str, "bracket mode: continuous|free");
        c->add_flag("--json", as_json, "emit a JSON map");
        return c;
    };
    auto* c_qsh = add_binary("qshuffle", "quasi-shuffle product u * v");
    auto* c_sh = add_binary("shuffle", "shuffle product");
    auto* c_logstar = add_unary("logstar", "quasi-shuffle convolution logarithm on w");
    auto* c_hexp = add_unary("hexp", "Hoffman exponential of w");
    auto* c_hlog = add_unary("hlog", "Hoffman logarithm of w");
    auto* c_decon = add_unary("decon", "deconcatenation coproduct of w");
    auto* c_dequasi = add_unary("dequasi", "de-quasi-shuffle coproduct of w");

    // ---- series ----
    auto* series = app.add_subcommand("series", "generate and compare Lie series files");
    series->require_subcommand(1);
    auto* gen = series->add_subcommand("gen", "generate a series and write JSON");
    std::string flavor = "stratonovich";
    int gen_d = 2, gen_weight = 2;
    std::string out_path;
    gen->add_option("--flavor", flavor, "stratonovich|ito-expanded|ito-resummed");
    gen->add_option("--d", gen_d, "number of drivers")->check(CLI::Range(1, 9));
    gen->add_option("--max-weight", gen_weight, "truncation weight")->check(CLI::Range(1, 8));
    gen->add_option("--out", out_path, "output path (default stdout)");
    auto* chk = series->add_subcommand("check", "compare two series files canonically");
    std::string file_a, file_b;
    chk->add_option("a", file_a, "first series file")->required();
    chk->add_option("b", file_b, "second series file")->required();

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "oracle suites");
    verify->require_subcommand(1);
    bool inject_fault = false;
    int max_weight = 4, max_p = 4, coin_d = 2, coin_weight = 3;
    auto* v_alg = verify->add_subcommand("algebra", "Hopf/Hoffman property suite");
    v_alg->add_option("--max-weight", max_weight, "weight bound");
    v_alg->add_flag("--inject-fault", inject_fault,
                    "corrupt one coefficient to exercise failure reporting");
    auto* v_coeff = verify->add_subcommand("coeffs", "surjection coefficient formula oracle");
    v_coeff->add_option("--max-p", max_p, "maximum word length");
    v_coeff->add_flag("--inject-fault", inject_fault,
                      "corrupt one coefficient to exercise failure reporting");
    auto* v_coin = verify->add_subcommand("coincidence", "Ito/Stratonovich series coincidence");
    v_coin->add_option("--d", coin_d, "number of drivers");
    v_coin->add_option("--max-weight", coin_weight, "truncation weight");
    v_coin->add_flag("--inject-fault", inject_fault,
                     "corrupt one coefficient to exercise failure reporting");

    // ---- num ----
    auto* num = app.add_subcommand("num", "run a numerical study from a JSON config");
    std::string config_path, results_path;
    num->add_option("config", config_path, "experiment config JSON")->required();
    num->add_option("--out", results_path, "results JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (alg->parsed()) {
            BracketMode mode = parse_mode(mode_str);
            if (c_qsh->parsed())
                print_poly(freealg::qshuffle(wordfmt::parse_word(algs.u),
                                             wordfmt::parse_word(algs.v), mode),
                           as_json);
            else if (c_sh->parsed())
                print_poly(freealg::shuffle(wordfmt::parse_word(algs.u),
                                            wordfmt::parse_word(algs.v)),
                           as_json);
            else if (c_logstar->parsed())
                print_poly(hopf::log_star(wordfmt::parse_word(algs.w), mode), as_json);
            else if (c_hexp->parsed())
                print_poly(hoffman::hoffman_exp(wordfmt::parse_word(algs.w), mode), as_json);
            else if (c_hlog->parsed())
                print_poly(hoffman::hoffman_log(wordfmt::parse_word(algs.w), mode), as_json);
            else if (c_decon->parsed())
                print_tensor(freealg::deconcat(wordfmt::parse_word(algs.w)), as_json);
            else if (c_dequasi->parsed())
                print_tensor(freealg::dequasishuffle(wordfmt::parse_word(algs.w), mode), as_json);
            return kExitOk;
        }

        if (series->parsed()) {
            if (gen->parsed()) {
                strichartz::LieSeries s;
                if (flavor == "stratonovich")
                    s = strichartz::strat_lie_series(gen_d, gen_weight);
                else if (flavor == "ito-expanded")
                    s = strichartz::ito_lie_series(gen_d, gen_weight, strichartz::ItoForm::Expanded);
                else if (flavor == "ito-resummed")
                    s = strichartz::ito_lie_series(gen_d, gen_weight, strichartz::ItoForm::Resummed);
                else
                    throw CLI::ValidationError("--flavor", "unknown flavor " + flavor);
                std::string text = series_io::to_json(s);
                if (out_path.empty())
                    std::cout << text;
                else
                    series_io::save(s, out_path);
                return kExitOk;
            }
            auto sa = series_io::load(file_a);
            auto sb = series_io::load(file_b);
            if (strichartz::canonical_expansion(sa) == strichartz::canonical_expansion(sb)) {
                std::cout << "PASS series canonically equal\n";
                return kExitOk;
            }
            std::cout << "FAIL series differ under canonical expansion\n";
            return kExitVerifyFail;
        }

        if (verify->parsed()) {
            if (v_alg->parsed()) return verify_algebra(max_weight, inject_fault);
            if (v_coeff->parsed()) return verify_coeffs(max_p, inject_fault);
            if (v_coin->parsed()) return verify_coincidence(coin_d, coin_weight, inject_fault);
        }

        if (num->parsed()) {
            std::ifstream is(config_path);
            if (!is) {
                std::cerr << "cannot open config: " << config_path << "\n";
                return kExitUsage;
            }
            std::string text((std::istreambuf_iterator<char>(is)),
                             std::istreambuf_iterator<char>());
            sm::ExperimentConfig cfg = sm::load_config(text);
            std::string results = sm::run_study_json(cfg);
            if (results_path.empty()) {
                std::cout << results;
            } else {
                std::ofstream os(results_path);
                os << results;
                std::cout << "wrote " << results_path << "\n";
            }
            return kExitOk;
        }
    } catch (const wordfmt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
