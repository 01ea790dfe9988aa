#include "qslie/sm/study.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "qslie/wordfmt.hpp"

namespace qslie::sm {

using nlohmann::json;
using nlohmann::ordered_json;

unsigned worker_threads() {
    if (const char* env = std::getenv("QSLIE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("slope fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

// Paths split into fixed chunks; workers pull chunks by atomic index and
// results combine in chunk order, so aggregates cannot depend on the thread
// count.
template <typename Chunk, typename Work>
std::vector<Chunk> run_chunked(std::uint64_t paths, std::uint64_t chunk_size, Work&& work) {
    const std::uint64_t n_chunks = (paths + chunk_size - 1) / chunk_size;
    std::vector<Chunk> results(n_chunks);
    std::atomic<std::uint64_t> next{0};
    auto runner = [&]() {
        while (true) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t begin = c * chunk_size;
            const std::uint64_t end = std::min(paths, begin + chunk_size);
            results[c] = work(begin, end);
        }
    };
    unsigned n_threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(n_chunks));
    if (n_threads <= 1) {
        runner();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(runner);
        for (auto& t : pool) t.join();
    }
    return results;
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// value extraction order from an IntegralPlan for a CompiledSeries
std::vector<int> plan_indices(const IntegralPlan& plan, const CompiledSeries& cs) {
    std::vector<int> idx;
    idx.reserve(cs.integral_words.size());
    for (const auto& w : cs.integral_words) idx.push_back(plan.index_of(w));
    return idx;
}

void extract(const std::vector<int>& idx, const double* plan_values, std::vector<double>& out) {
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[i] = plan_values[static_cast<std::size_t>(idx[i])];
}

Eigen::VectorXd initial_state(const ExperimentConfig& cfg) {
    if (cfg.y0.size() > 0) {
        if (cfg.y0.size() != cfg.system.N)
            throw std::invalid_argument("y0 dimension disagrees with system N");
        return cfg.y0;
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cfg.system.N);
    y(0) = 1.0;
    return y;
}

strichartz::LieSeries build_series(const ExperimentConfig& cfg, int weight) {
    const int w = std::max(weight, 2);  // bracket letters live at weight 2
    if (cfg.flavor == strichartz::SeriesFlavor::Stratonovich)
        return strichartz::strat_lie_series(cfg.system.d(), w);
    return strichartz::ito_lie_series(cfg.system.d(), w, cfg.ito_form);
}

}  // namespace

StrongOrderResult strong_error_study(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.system.validate();
    if (cfg.h_exponents.empty()) throw std::invalid_argument("h_exponents is empty");
    if (cfg.ref_factor_exp < 1) throw std::invalid_argument("ref_factor_exp must be >= 1");
    if (!is_power_of_two(static_cast<std::uint64_t>(cfg.ref_substeps)))
        throw std::invalid_argument("ref_substeps must be a power of two");
    if (cfg.paths < 1000)
        throw std::invalid_argument("strong order study wants >= 1000 paths for a usable fit");

    const int d = cfg.system.d();
    int e_max = 0;
    for (int e : cfg.h_exponents) {
        if (e < 1 || e > 26) throw std::invalid_argument("h_exponents entries must be in [1,26]");
        e_max = std::max(e_max, e);
    }
    const int e_ref = e_max + cfg.ref_factor_exp;
    const std::uint64_t n_ref = std::uint64_t{1} << e_ref;
    const std::uint64_t master = n_ref * static_cast<std::uint64_t>(cfg.ref_substeps);
    const double master_dt = cfg.T / static_cast<double>(master);

    const int max_weight = *std::max_element(cfg.truncation_weights.begin(),
                                             cfg.truncation_weights.end());
    strichartz::LieSeries series = build_series(cfg, std::max(max_weight, 2));

    // one compiled series per requested truncation weight, plus the weight-2
    // reference
    std::vector<CompiledSeries> schemes;
    for (int w : cfg.truncation_weights)
        schemes.push_back(compile_series(series, cfg.system, cfg.bracket_fields, w));
    CompiledSeries ref_cs = compile_series(series, cfg.system, cfg.bracket_fields, 2);

    // every scheme shares one plan covering all words
    std::vector<Word> all_words = ref_cs.integral_words;
    for (const auto& cs : schemes)
        all_words.insert(all_words.end(), cs.integral_words.begin(), cs.integral_words.end());
    IntegralPlan plan(all_words, d);
    std::vector<std::vector<int>> scheme_idx;
    for (const auto& cs : schemes) scheme_idx.push_back(plan_indices(plan, cs));
    std::vector<int> ref_idx = plan_indices(plan, ref_cs);

    const Eigen::VectorXd y0 = initial_state(cfg);
    const NormalSource rng(cfg.seed, d);
    const std::size_t n_levels = cfg.h_exponents.size();
    const std::size_t n_schemes = schemes.size();

    struct Chunk {
        std::vector<double> sq_err;  // [level * n_schemes + scheme]
    };

    auto chunks = run_chunked<Chunk>(
        cfg.paths, 64, [&](std::uint64_t begin, std::uint64_t end) {
            Chunk acc;
            acc.sq_err.assign(n_levels * n_schemes, 0.0);
            std::vector<double> master_inc(master * static_cast<std::uint64_t>(d));
            std::vector<double> plan_vals(plan.node_count());
            std::vector<double> term_vals(plan.node_count());
            Eigen::MatrixXd L(cfg.system.N, cfg.system.N);
            Eigen::VectorXd y_ref(cfg.system.N), tmp(cfg.system.N);
            std::vector<Eigen::VectorXd> y_lvl(n_levels * n_schemes);

            for (std::uint64_t path = begin; path < end; ++path) {
                rng.fill_increments(path, master, d, master_dt, master_inc.data());

                // reference: weight-2 scheme, Taylor-truncated exponentials;
                // per-step error O(||L||^5) with ||L|| = O(sqrt(h_ref))
                y_ref = y0;
                plan.reset(plan_vals.data());
                const std::uint64_t m_ref = static_cast<std::uint64_t>(cfg.ref_substeps);
                for (std::uint64_t k = 0; k < master; ++k) {
                    plan.substep(plan_vals.data(), &master_inc[k * static_cast<std::uint64_t>(d)],
                                 master_dt);
                    if ((k + 1) % m_ref == 0) {
                        term_vals.resize(ref_cs.integral_words.size());
                        extract(ref_idx, plan_vals.data(), term_vals);
                        L.setZero();
                        for (const auto& t : ref_cs.terms) {
                            double v = 0;
                            for (const auto& [idx, c] : t.coeffs)
                                v += c * term_vals[static_cast<std::size_t>(idx)];
                            L.noalias() += v * t.matrix;
                        }
                        // Horner Taylor exp on the state
                        tmp = y_ref;
                        for (int o = 4; o >= 1; --o)
                            tmp = y_ref + (L * tmp) / static_cast<double>(o);
                        y_ref = tmp;
                        plan.reset(plan_vals.data());
                    }
                }

                // measured schemes at each h
                for (std::size_t lvl = 0; lvl < n_levels; ++lvl) {
                    const std::uint64_t n_steps = std::uint64_t{1}
                                                  << cfg.h_exponents[lvl];
                    const std::uint64_t m = master / n_steps;
                    for (std::size_t s = 0; s < n_schemes; ++s) y_lvl[lvl * n_schemes + s] = y0;
                    plan.reset(plan_vals.data());
                    for (std::uint64_t k = 0; k < master; ++k) {
                        plan.substep(plan_vals.data(),
                                     &master_inc[k * static_cast<std::uint64_t>(d)], master_dt);
                        if ((k + 1) % m == 0) {
                            for (std::size_t s = 0; s < n_schemes; ++s) {
                                term_vals.resize(schemes[s].integral_words.size());
                                extract(scheme_idx[s], plan_vals.data(), term_vals);
                                L.setZero();
                                for (const auto& t : schemes[s].terms) {
                                    double v = 0;
                                    for (const auto& [idx, c] : t.coeffs)
                                        v += c * term_vals[static_cast<std::size_t>(idx)];
                                    L.noalias() += v * t.matrix;
                                }
                                y_lvl[lvl * n_schemes + s] =
                                    matrix_exp(L) * y_lvl[lvl * n_schemes + s];
                            }
                            plan.reset(plan_vals.data());
                        }
                    }
                    for (std::size_t s = 0; s < n_schemes; ++s) {
                        double e2 = (y_lvl[lvl * n_schemes + s] - y_ref).squaredNorm();
                        acc.sq_err[lvl * n_schemes + s] += e2;
                    }
                }
            }
            return acc;
        });

    std::vector<double> sq(n_levels * n_schemes, 0.0);
    for (const auto& c : chunks)
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] += c.sq_err[i];

    StrongOrderResult out;
    for (std::size_t s = 0; s < n_schemes; ++s) {
        StrongOrderScheme sch;
        sch.truncation_weight = cfg.truncation_weights[s];
        std::vector<double> lx, ly;
        for (std::size_t lvl = 0; lvl < n_levels; ++lvl) {
            const double h = cfg.T / std::pow(2.0, cfg.h_exponents[lvl]);
            const double rms = std::sqrt(sq[lvl * n_schemes + s] / static_cast<double>(cfg.paths));
            sch.points.push_back({h, rms});
            lx.push_back(std::log2(h));
            ly.push_back(std::log2(rms));
        }
        sch.slope = least_squares_slope(lx, ly);
        out.schemes.push_back(std::move(sch));
    }
    out.wall_seconds = wall_since(t0);
    return out;
}

InvariantResult invariant_study(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.system.validate();
    if (!is_power_of_two(cfg.n_steps) || !is_power_of_two(cfg.refinement))
        throw std::invalid_argument("n_steps and refinement must be powers of two");

    bool skew = true;
    for (const auto& A : cfg.system.A)
        if ((A + A.transpose()).cwiseAbs().maxCoeff() > 0) skew = false;
    if (cfg.require_skew && !skew)
        throw std::invalid_argument("invariant study configured for skew-symmetric fields");

    const int d = cfg.system.d();
    const int max_weight = *std::max_element(cfg.truncation_weights.begin(),
                                             cfg.truncation_weights.end());
    strichartz::LieSeries series = build_series(cfg, std::max(max_weight, 2));

    std::vector<CompiledSeries> schemes;
    for (int w : cfg.truncation_weights)
        schemes.push_back(compile_series(series, cfg.system, cfg.bracket_fields, w));
    std::vector<Word> all_words;
    for (const auto& cs : schemes)
        all_words.insert(all_words.end(), cs.integral_words.begin(), cs.integral_words.end());
    IntegralPlan plan(all_words, d);
    std::vector<std::vector<int>> scheme_idx;
    for (const auto& cs : schemes) scheme_idx.push_back(plan_indices(plan, cs));

    const Eigen::VectorXd y0 = initial_state(cfg);
    const double norm0 = y0.norm();
    const NormalSource rng(cfg.seed, d);
    const std::uint64_t fine = cfg.n_steps * cfg.refinement;
    const double fine_dt = cfg.T / static_cast<double>(fine);

    struct Chunk {
        std::vector<double> max_dev;
    };
    auto chunks = run_chunked<Chunk>(cfg.paths, 64, [&](std::uint64_t begin, std::uint64_t end) {
        Chunk acc;
        acc.max_dev.assign(schemes.size(), 0.0);
        std::vector<double> inc(fine * static_cast<std::uint64_t>(d));
        std::vector<double> plan_vals(plan.node_count());
        std::vector<double> term_vals;
        Eigen::MatrixXd L(cfg.system.N, cfg.system.N);
        for (std::uint64_t path = begin; path < end; ++path) {
            rng.fill_increments(path, fine, d, fine_dt, inc.data());
            for (std::size_t s = 0; s < schemes.size(); ++s) {
                Eigen::VectorXd y = y0;
                plan.reset(plan_vals.data());
                for (std::uint64_t k = 0; k < fine; ++k) {
                    plan.substep(plan_vals.data(), &inc[k * static_cast<std::uint64_t>(d)],
                                 fine_dt);
                    if ((k + 1) % cfg.refinement == 0) {
                        term_vals.resize(schemes[s].integral_words.size());
                        extract(scheme_idx[s], plan_vals.data(), term_vals);
                        L.setZero();
                        for (const auto& t : schemes[s].terms) {
                            double v = 0;
                            for (const auto& [idx, c] : t.coeffs)
                                v += c * term_vals[static_cast<std::size_t>(idx)];
                            L.noalias() += v * t.matrix;
                        }
                        y = matrix_exp(L) * y;
                        acc.max_dev[s] = std::max(acc.max_dev[s], std::abs(y.norm() - norm0));
                        plan.reset(plan_vals.data());
                    }
                }
            }
        }
        return acc;
    });

    InvariantResult out;
    out.skew_verified = skew;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        double dev = 0;
        for (const auto& c : chunks) dev = std::max(dev, c.max_dev[s]);
        out.weights.push_back({cfg.truncation_weights[s], dev});
    }
    out.wall_seconds = wall_since(t0);
    return out;
}

QShuffleCheckResult quasi_shuffle_check_study(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.refinements.empty()) throw std::invalid_argument("refinements is empty");
    std::uint64_t finest = 0;
    for (auto r : cfg.refinements) {
        if (!is_power_of_two(r)) throw std::invalid_argument("refinements must be powers of two");
        finest = std::max(finest, r);
    }
    const int d = std::max(cfg.system.A.empty() ? 1 : cfg.system.d(), [&] {
        int m = 1;
        for (const auto& a : cfg.qs_u.letters()) m = std::max(m, a.parts().back());
        for (const auto& a : cfg.qs_v.letters()) m = std::max(m, a.parts().back());
        return m;
    }());

    struct Chunk {
        std::vector<double> sq;
    };
    auto chunks = run_chunked<Chunk>(cfg.paths, 64, [&](std::uint64_t begin, std::uint64_t end) {
        Chunk acc;
        acc.sq.assign(cfg.refinements.size(), 0.0);
        for (std::uint64_t path = begin; path < end; ++path) {
            DriverPath p = simulate_brownian(d, cfg.T, finest, cfg.seed, path);
            for (std::size_t i = 0; i < cfg.refinements.size(); ++i) {
                double r = quasi_shuffle_residual(p, cfg.qs_u, cfg.qs_v, cfg.refinements[i]);
                acc.sq[i] += r * r;
            }
        }
        return acc;
    });

    QShuffleCheckResult out;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < cfg.refinements.size(); ++i) {
        double sq = 0;
        for (const auto& c : chunks) sq += c.sq[i];
        const double rms = std::sqrt(sq / static_cast<double>(cfg.paths));
        out.points.push_back({cfg.refinements[i], rms});
        lx.push_back(std::log2(static_cast<double>(cfg.refinements[i])));
        ly.push_back(std::log2(rms));
    }
    out.slope = least_squares_slope(lx, ly);
    out.wall_seconds = wall_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Config / results JSON

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
    throw std::invalid_argument("config field '" + path + "': " + why);
}

template <typename T>
T field(const json& j, const std::string& path, const char* name) {
    if (!j.contains(name)) bad_field(path + name, "missing");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        bad_field(path + name, e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* name, T def) {
    if (!j.contains(name)) return def;
    return j.at(name).get<T>();
}

}  // namespace

ExperimentConfig load_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    const std::string study = field<std::string>(j, "", "study");
    if (study == "strong_order")
        cfg.study = StudyKind::StrongOrder;
    else if (study == "invariant")
        cfg.study = StudyKind::Invariant;
    else if (study == "qshuffle_check")
        cfg.study = StudyKind::QShuffleCheck;
    else
        bad_field("study", "must be strong_order, invariant or qshuffle_check");

    cfg.seed = field_or<std::uint64_t>(j, "seed", 1);
    cfg.paths = field<std::uint64_t>(j, "", "paths");
    cfg.T = field<double>(j, "", "T");
    if (!(cfg.T > 0)) bad_field("T", "must be positive");

    if (j.contains("system")) {
        const json& js = j.at("system");
        cfg.system.N = field<int>(js, "system.", "N");
        auto mats = field<std::vector<std::vector<double>>>(js, "system.", "matrices");
        for (std::size_t i = 0; i < mats.size(); ++i) {
            if (mats[i].size() != static_cast<std::size_t>(cfg.system.N) *
                                      static_cast<std::size_t>(cfg.system.N))
                bad_field("system.matrices[" + std::to_string(i) + "]",
                          "needs N*N row-major entries");
            Eigen::MatrixXd m(cfg.system.N, cfg.system.N);
            for (int r = 0; r < cfg.system.N; ++r)
                for (int c = 0; c < cfg.system.N; ++c)
                    m(r, c) = mats[i][static_cast<std::size_t>(r * cfg.system.N + c)];
            cfg.system.A.push_back(std::move(m));
        }
    } else if (study != "qshuffle_check") {
        bad_field("system", "missing");
    }

    const std::string flavor = field_or<std::string>(j, "flavor", "stratonovich");
    if (flavor == "stratonovich") {
        cfg.flavor = strichartz::SeriesFlavor::Stratonovich;
    } else if (flavor == "ito-expanded") {
        cfg.flavor = strichartz::SeriesFlavor::Ito;
        cfg.ito_form = strichartz::ItoForm::Expanded;
    } else if (flavor == "ito-resummed") {
        cfg.flavor = strichartz::SeriesFlavor::Ito;
        cfg.ito_form = strichartz::ItoForm::Resummed;
    } else {
        bad_field("flavor", "must be stratonovich, ito-expanded or ito-resummed");
    }

    const std::string bf = field_or<std::string>(j, "bracket_fields", "ito-correction");
    if (bf == "ito-correction")
        cfg.bracket_fields = BracketFields::ItoCorrection;
    else if (bf == "zero")
        cfg.bracket_fields = BracketFields::Zero;
    else
        bad_field("bracket_fields", "must be ito-correction or zero");

    cfg.truncation_weights = field_or<std::vector<int>>(j, "truncation_weights", {1, 2});
    for (int w : cfg.truncation_weights)
        if (w < 1 || w > 6) bad_field("truncation_weights", "entries must be in [1,6]");

    cfg.h_exponents = field_or<std::vector<int>>(j, "h_exponents", {4, 5, 6, 7, 8, 9});
    cfg.ref_factor_exp = field_or<int>(j, "ref_factor_exp", 6);
    cfg.ref_substeps = field_or<int>(j, "ref_substeps", 2);
    cfg.n_steps = field_or<std::uint64_t>(j, "n_steps", 64);
    cfg.refinement = field_or<std::uint64_t>(j, "refinement", 16);
    cfg.require_skew = field_or<bool>(j, "require_skew", true);

    if (cfg.study == StudyKind::QShuffleCheck) {
        cfg.qs_u = wordfmt::parse_word(field<std::string>(j, "", "u"));
        cfg.qs_v = wordfmt::parse_word(field<std::string>(j, "", "v"));
        auto refs = field_or<std::vector<std::uint64_t>>(j, "refinements",
                                                         {128, 256, 512, 1024});
        cfg.refinements = std::move(refs);
    }

    if (j.contains("y0")) {
        auto v = field<std::vector<double>>(j, "", "y0");
        cfg.y0 = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
    }
    return cfg;
}

std::string run_study_json(const ExperimentConfig& cfg) {
    ordered_json out;
    switch (cfg.study) {
        case StudyKind::StrongOrder: {
            auto r = strong_error_study(cfg);
            out["study"] = "strong_order";
            ordered_json schemes = ordered_json::array();
            for (const auto& s : r.schemes) {
                ordered_json js;
                js["truncation_weight"] = s.truncation_weight;
                ordered_json pts = ordered_json::array();
                for (const auto& p : s.points)
                    pts.push_back({{"h", p.h}, {"rms_error", p.rms_error}});
                js["points"] = std::move(pts);
                js["slope"] = s.slope;
                schemes.push_back(std::move(js));
            }
            out["schemes"] = std::move(schemes);
            out["wall_seconds"] = r.wall_seconds;
            break;
        }
        case StudyKind::Invariant: {
            auto r = invariant_study(cfg);
            out["study"] = "invariant";
            out["skew_verified"] = r.skew_verified;
            ordered_json ws = ordered_json::array();
            for (const auto& w : r.weights)
                ws.push_back({{"truncation_weight", w.truncation_weight},
                              {"max_deviation", w.max_deviation}});
            out["weights"] = std::move(ws);
            out["wall_seconds"] = r.wall_seconds;
            break;
        }
        case StudyKind::QShuffleCheck: {
            auto r = quasi_shuffle_check_study(cfg);
            out["study"] = "qshuffle_check";
            ordered_json pts = ordered_json::array();
            for (const auto& p : r.points)
                pts.push_back({{"refinement", p.refinement}, {"rms_residual", p.rms_residual}});
            out["points"] = std::move(pts);
            out["slope"] = r.slope;
            out["wall_seconds"] = r.wall_seconds;
            break;
        }
    }
    return out.dump(2) + "\n";
}

}  // namespace qslie::sm
