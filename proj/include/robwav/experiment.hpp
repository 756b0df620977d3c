// Monte Carlo risk experiments for the robust estimators.
//
// Losses are measured on the T-point bin grid where the fit is defined; the
// truth there is f at each bin's mean design location (see bin_centers()).
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robwav/block_shrinkage.hpp"
#include "robwav/noise_models.hpp"

namespace robwav {

enum class LossMode { mise, pointwise, quadratic };

struct ExperimentSpec {
    std::string signal_id = "sine";
    NoiseModel noise = NoiseModel::gaussian(1.0);
    std::vector<std::size_t> n_list;
    std::size_t reps = 100;
    EstimatorConfig estimator;
    std::uint64_t seed = 1;
    LossMode mode = LossMode::mise;
    double t0 = 0.5;  // pointwise mode only; snapped to the nearest bin
    unsigned threads = 0;

    void validate() const;
};

struct RiskRow {
    std::size_t n = 0;
    double risk = 0.0;
    double std_error = 0.0;  // sample std of losses / sqrt(reps)
    std::size_t reps = 0;
    std::vector<double> losses;  // per replicate, in replicate order

    double median_loss() const;
};

/// One replicate's fit at the largest n, kept for plotting.
struct FitExample {
    std::size_t n = 0;
    Eigen::VectorXd grid;
    Eigen::VectorXd fitted;
    Eigen::VectorXd truth;
};

struct RiskTable {
    std::vector<RiskRow> rows;
    ExperimentSpec spec;
    std::optional<FitExample> example;
};

/// Replicate r uses noise stream stream_key(seed, r), so the table is a pure function
/// of the spec whatever the thread count.
RiskTable run_experiment(const ExperimentSpec& spec);

struct RateFit {
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Pure-noise check of the pair-difference estimate of 1/h^2(0).
struct CalibrationRow {
    VarianceConstant constant = VarianceConstant::calibrated;
    double median_h_inv_sq = 0.0;  // over replicates
    double expected = 0.0;         // what the constant targets: (c / 4) / h^2(0), c = 4 or 8
    double ratio = 0.0;            // median_h_inv_sq / expected
    std::size_t reps = 0;
};

/// One row per constant (calibrated first). Replicate r uses stream_key(seed, r).
std::vector<CalibrationRow> variance_calibration(const NoiseModel& noise, std::size_t n, std::size_t m_target,
                                                 std::size_t reps, std::uint64_t seed, unsigned threads = 0);

/// Least-squares slope of log(risk) on log(n). Needs >= 3 rows with
/// positive risk.
RateFit fit_rate_slope(const RiskTable& table);

}  // namespace robwav
