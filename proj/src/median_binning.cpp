#include "robwav/median_binning.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace robwav {

BinPlan plan_bins(std::size_t n, std::size_t m_target)
{
    if (m_target == 0)
        throw std::invalid_argument("plan_bins: bin size must be positive");
    if (n < 2 * m_target)
        throw std::invalid_argument("plan_bins: n = " + std::to_string(n) +
                                    " is too small to form two bins of size " + std::to_string(m_target));
    BinPlan plan;
    plan.n_raw = n;
    const std::size_t ratio = n / m_target;
    plan.levels = 0;
    while ((std::size_t{2} << plan.levels) <= ratio)
        ++plan.levels;
    plan.bins = std::size_t{1} << plan.levels;
    plan.bin_size = n / plan.bins;
    plan.usable_n = plan.bins * plan.bin_size;
    return plan;
}

MedianSeries bin_medians(const Eigen::Ref<const Eigen::VectorXd>& y, const BinPlan& plan)
{
    if (static_cast<std::size_t>(y.size()) < plan.usable_n)
        throw std::invalid_argument("bin_medians: " + std::to_string(y.size()) +
                                    " observations, plan needs " + std::to_string(plan.usable_n));
    const std::size_t m = plan.bin_size;
    MedianSeries out;
    out.plan = plan;
    out.medians.resize(static_cast<Eigen::Index>(plan.bins));
    std::vector<double> buf(m);
    const auto mid = static_cast<std::ptrdiff_t>(m / 2);
    for (std::size_t j = 0; j < plan.bins; ++j) {
        const double* first = y.data() + j * m;
        std::copy(first, first + m, buf.begin());
        std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
        double med = buf[static_cast<std::size_t>(mid)];
        if (m % 2 == 0) {
            const double lower = *std::max_element(buf.begin(), buf.begin() + mid);
            med = 0.5 * (lower + med);
        }
        out.medians[static_cast<Eigen::Index>(j)] = med;
    }
    return out;
}

Eigen::VectorXd bin_centers(const BinPlan& plan)
{
    Eigen::VectorXd t(static_cast<Eigen::Index>(plan.bins));
    const double m = static_cast<double>(plan.bin_size);
    const double n = static_cast<double>(plan.n_raw);
    for (Eigen::Index j = 0; j < t.size(); ++j)
        t[j] = (static_cast<double>(j) * m + 0.5 * (m + 1.0)) / n;
    return t;
}

VarianceEstimate estimate_sigma2(const MedianSeries& series, VarianceConstant constant)
{
    const std::size_t T = series.plan.bins;
    if (T % 2 != 0)
        throw std::invalid_argument("estimate_sigma2: number of bins must be even");
    if (T < 4)
        throw std::invalid_argument("estimate_sigma2: need at least 4 bins");
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < T; k += 2) {
        const double d = series.medians[static_cast<Eigen::Index>(k)] -
                         series.medians[static_cast<Eigen::Index>(k + 1)];
        s += d * d;
    }
    const double m = static_cast<double>(series.plan.bin_size);
    const double bins = static_cast<double>(T);
    const double c = constant == VarianceConstant::calibrated ? 4.0 : 8.0;
    VarianceEstimate est;
    est.h_inv_sq = c * m / bins * s;
    est.sigma2 = est.h_inv_sq / (4.0 * bins * m);
    return est;
}

}  // namespace robwav
