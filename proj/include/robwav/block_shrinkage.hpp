// Blockwise James-Stein thresholding of empirical wavelet coefficients and
// the end-to-end robust denoiser: bin -> median -> DWT -> BlockJS -> IDWT.
#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

#include "robwav/median_binning.hpp"
#include "robwav/wavelet_filter.hpp"
#include "robwav/wavelet_transform.hpp"

namespace robwav {

/// Root > 1 of lambda - ln(lambda) = 3 (about 4.50524), by safeguarded
/// Newton iteration on the bracket [4, 5].
double solve_lambda_star();

/// Block length: automatic picks the largest power of two <= ln(usable_n).
struct BlockLengthRule {
    std::optional<int> fixed;

    static BlockLengthRule automatic() { return {}; }
    static BlockLengthRule fixed_length(int length) { return {length}; }
    int resolve(std::size_t usable_n) const;
};

/// Finest thresholded level. Default keeps every level (Jstar = J - 1);
/// cutoff_b selects floor(log2(T / ln^{1+b} n)), clamped into [j0, J - 1].
struct LevelCutoffRule {
    std::optional<double> cutoff_b;

    static LevelCutoffRule all_levels() { return {}; }
    static LevelCutoffRule log_cutoff(double b) { return {b}; }
    int resolve(const BinPlan& plan, int j0) const;
};

/// Noise level plug-in: estimated from median pairs, or a known sigma_n^2.
struct SigmaRule {
    std::optional<double> known_sigma2;

    static SigmaRule estimate() { return {}; }
    static SigmaRule known(double sigma2) { return {sigma2}; }
};

struct EstimatorConfig {
    std::size_t m_target = 8;
    WaveletFilter filter = daubechies8();
    int j0 = 3;
    BlockLengthRule block = BlockLengthRule::automatic();
    double lambda_star = solve_lambda_star();
    LevelCutoffRule cutoff = LevelCutoffRule::all_levels();
    SigmaRule sigma = SigmaRule::estimate();
    VarianceConstant constant = VarianceConstant::calibrated;
};

/// Father coefficients pass through; each detail block of level j <= jstar
/// is multiplied by (1 - lambda L sigma2 / S^2)_+ (zero when S^2 = 0);
/// levels above jstar are zeroed. Levels shorter than L form one block.
Pyramid<double> threshold_blocks(const Pyramid<double>& pyramid, double sigma2, int block_length,
                                 double lambda_star, int jstar);

struct DenoiseResult {
    Eigen::VectorXd fitted_grid;
    Eigen::VectorXd medians;
    Pyramid<double> pyramid_before;
    Pyramid<double> pyramid_after;
    double sigma2_used = 0.0;
    int block_length = 0;
    int jstar = 0;
    BinPlan plan;
};

DenoiseResult denoise(const Eigen::Ref<const Eigen::VectorXd>& y, const EstimatorConfig& cfg);

}  // namespace robwav
