// CSV and SVG outputs for experiments, coupling profiles and the
// demonstration figures.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "robwav/experiment.hpp"
#include "robwav/median_coupling.hpp"
#include "robwav/quadratic_functional.hpp"

namespace robwav {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Header `n,reps,risk,stderr`.
std::string risk_table_csv(const RiskTable& table);
/// Header `n,reps,q_true,mean_qhat,n_mse,stderr`.
std::string quadratic_risk_csv(const std::vector<QuadraticRiskRow>& rows);
/// Header `m,eps,sup_normalized_error,argmax_z`.
std::string coupling_profile_csv(const std::vector<CouplingProfileRow>& rows);
/// Header `constant,reps,median_h_inv_sq,expected,ratio`.
std::string calibration_csv(const std::vector<CalibrationRow>& rows);

/// Throws std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// risk.csv always; risk_loglog.svg when the table has rows; fit_overlay.svg
/// when the table carries an example fit. Returns the files written.
std::vector<std::filesystem::path> emit_report(const RiskTable& table, const std::filesystem::path& out_dir);

struct FigureSpec {
    int figure = 1;  // 1: noisy / direct / robust; 2: six-panel pipeline walk-through
    std::string signal_id = "spikes";
    NoiseModel noise = NoiseModel::cauchy(1.0);
    std::size_t n = 4096;
    EstimatorConfig estimator;
    std::uint64_t seed = 1;
};

/// Writes figure<k>.svg into out_dir and returns its path.
std::filesystem::path emit_figure(const FigureSpec& spec, const std::filesystem::path& out_dir);

}  // namespace robwav
