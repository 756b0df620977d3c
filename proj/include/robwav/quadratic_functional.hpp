// Robust estimation of Q(f) = int f^2 from binned medians.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "robwav/block_shrinkage.hpp"
#include "robwav/noise_models.hpp"

namespace robwav {

struct QuadraticResult {
    double q_hat = 0.0;
    int Jq = 0;
    double sigma2_used = 0.0;
    std::size_t terms_count = 0;  // 2^{Jq + 1}
};

/// Sum over father coefficients and detail levels j0..Jq of (y^2 - sigma2),
/// Jq = floor(log2 sqrt(usable_n)). Signed: small signals can give q_hat < 0.
QuadraticResult estimate_quadratic(const Eigen::Ref<const Eigen::VectorXd>& y, const EstimatorConfig& cfg);

struct QuadraticRiskRow {
    std::size_t n = 0;
    std::size_t reps = 0;
    double q_true = 0.0;
    double mean_qhat = 0.0;
    double n_mse = 0.0;   // n * mean (q_hat - Q)^2
    double std_error = 0.0;  // Monte Carlo standard error of n_mse
};

/// n E(q_hat - Q(f))^2 per sample size; replicate r draws its noise from
/// seed stream stream_key(seed, r). Requires reps >= 100.
std::vector<QuadraticRiskRow> quadratic_risk(const NoiseModel& model, const std::string& signal_id,
                                             const std::vector<std::size_t>& n_list, std::size_t reps,
                                             std::uint64_t seed, const EstimatorConfig& cfg = {},
                                             unsigned threads = 0);

}  // namespace robwav
