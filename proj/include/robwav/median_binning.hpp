// Reduction of n raw observations to T = 2^J bin medians, and the
// difference-based estimate of the median noise level.
#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace robwav {

struct BinPlan {
    std::size_t n_raw = 0;
    std::size_t bins = 0;      // T = 2^J
    int levels = 0;            // J
    std::size_t bin_size = 0;  // m
    std::size_t usable_n = 0;  // T * m
};

/// T = 2^floor(log2(n / m_target)), m = floor(n / T). The trailing
/// n - T m < T observations are discarded. Requires n >= 2 m_target.
BinPlan plan_bins(std::size_t n, std::size_t m_target);

struct MedianSeries {
    Eigen::VectorXd medians;
    BinPlan plan;
};

/// Median of each consecutive block of m values (midpoint of the two middle
/// order statistics for even m).
MedianSeries bin_medians(const Eigen::Ref<const Eigen::VectorXd>& y, const BinPlan& plan);

/// Grid point of each bin: the mean design location of the observations it
/// holds, ((j - 1) m + (m + 1) / 2) / n_raw for bin j = 1..T.
Eigen::VectorXd bin_centers(const BinPlan& plan);

/// Which multiplier to use in the pair-difference estimate of h^{-2}(0).
enum class VarianceConstant {
    calibrated,  // 4m/T: unbiased for 1/h^2(0) when Var(X_j) = 1/(4 m h^2(0))
    literal,     // 8m/T: the printed constant, twice the target
};

struct VarianceEstimate {
    double h_inv_sq = 0.0;  // estimate of 1/h^2(0)
    double sigma2 = 0.0;    // estimate of sigma_n^2 = 1/(4 h^2(0) n)
};

/// S = sum_k (X_{2k-1} - X_{2k})^2 over the T/2 disjoint pairs;
/// h_inv_sq = c m S / T and sigma2 = h_inv_sq / (4 T m). Requires T >= 4.
VarianceEstimate estimate_sigma2(const MedianSeries& series,
                                 VarianceConstant constant = VarianceConstant::calibrated);

}  // namespace robwav
