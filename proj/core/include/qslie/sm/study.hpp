#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qslie/sm/stepper.hpp"

namespace qslie::sm {

enum class StudyKind { StrongOrder, Invariant, QShuffleCheck };

struct ExperimentConfig {
    StudyKind study = StudyKind::StrongOrder;
    std::uint64_t seed = 1;
    std::uint64_t paths = 1000;
    double T = 1.0;

    LinearSystem system;
    strichartz::SeriesFlavor flavor = strichartz::SeriesFlavor::Stratonovich;
    strichartz::ItoForm ito_form = strichartz::ItoForm::Resummed;
    BracketFields bracket_fields = BracketFields::ItoCorrection;
    std::vector<int> truncation_weights{1, 2};

    // strong order: h = T * 2^-e for e in h_exponents; the reference runs
    // the weight-2 scheme at min(h) / 2^ref_factor_exp with ref_substeps
    // integral substeps per reference step
    std::vector<int> h_exponents{4, 5, 6, 7, 8, 9};
    int ref_factor_exp = 6;
    int ref_substeps = 2;

    // invariant study
    std::uint64_t n_steps = 64;
    std::uint64_t refinement = 16;  // substeps per step
    bool require_skew = true;

    // quasi-shuffle residual study
    Word qs_u, qs_v;
    std::vector<std::uint64_t> refinements{128, 256, 512, 1024};

    Eigen::VectorXd y0;  // empty = first basis vector
};

// JSON config loader; throws std::invalid_argument with the offending field
// path on bad input.
ExperimentConfig load_config(const std::string& json_text);

struct StrongOrderPoint {
    double h;
    double rms_error;
};

struct StrongOrderScheme {
    int truncation_weight;
    std::vector<StrongOrderPoint> points;
    double slope;  // log2(rms) against log2(h) least squares
};

struct StrongOrderResult {
    std::vector<StrongOrderScheme> schemes;
    double wall_seconds;
};

struct InvariantResult {
    struct PerWeight {
        int truncation_weight;
        double max_deviation;  // max | ||Y|| - ||Y0|| | over steps and paths
    };
    std::vector<PerWeight> weights;
    bool skew_verified;
    double wall_seconds;
};

struct QShuffleCheckResult {
    struct Point {
        std::uint64_t refinement;
        double rms_residual;
    };
    std::vector<Point> points;
    double slope;  // log2(rms) against log2(refinement)
    double wall_seconds;
};

StrongOrderResult strong_error_study(const ExperimentConfig& cfg);
InvariantResult invariant_study(const ExperimentConfig& cfg);
QShuffleCheckResult quasi_shuffle_check_study(const ExperimentConfig& cfg);

// run the configured study, return the results as JSON
std::string run_study_json(const ExperimentConfig& cfg);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// worker count: QSLIE_THREADS environment variable, else hardware concurrency
unsigned worker_threads();

}  // namespace qslie::sm
