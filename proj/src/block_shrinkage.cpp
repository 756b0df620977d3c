#include "robwav/block_shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace robwav {

double solve_lambda_star()
{
    auto f = [](double x) { return x - std::log(x) - 3.0; };
    double lo = 4.0;
    double hi = 5.0;
    double x = 4.5;
    for (int iter = 0; iter < 100; ++iter) {
        const double fx = f(x);
        if (fx == 0.0)
            return x;
        // f is increasing for x > 1.
        if (fx < 0.0)
            lo = x;
        else
            hi = x;
        double next = x - fx / (1.0 - 1.0 / x);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * x) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

int BlockLengthRule::resolve(std::size_t usable_n) const
{
    if (fixed) {
        if (*fixed < 1 || (*fixed & (*fixed - 1)) != 0)
            throw std::invalid_argument("block length must be a positive power of two, got " +
                                        std::to_string(*fixed));
        return *fixed;
    }
    const double limit = std::log(static_cast<double>(usable_n));
    int length = 1;
    while (2.0 * length <= limit)
        length *= 2;
    return length;
}

int LevelCutoffRule::resolve(const BinPlan& plan, int j0) const
{
    const int top = plan.levels - 1;
    if (!cutoff_b)
        return top;
    const double log_n = std::log(static_cast<double>(plan.n_raw));
    const double ratio = static_cast<double>(plan.bins) / std::pow(log_n, 1.0 + *cutoff_b);
    const int jstar = ratio >= 1.0 ? static_cast<int>(std::floor(std::log2(ratio))) : j0;
    return std::clamp(jstar, j0, top);
}

Pyramid<double> threshold_blocks(const Pyramid<double>& pyramid, double sigma2, int block_length,
                                 double lambda_star, int jstar)
{
    pyramid.validate();
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("threshold_blocks: sigma2 must be finite and nonnegative");
    if (block_length < 1)
        throw std::invalid_argument("threshold_blocks: block length must be positive");
    if (jstar < pyramid.j0 || jstar > pyramid.J - 1)
        throw std::invalid_argument("threshold_blocks: need j0 <= jstar <= J - 1");

    Pyramid<double> out = pyramid;
    const double threshold = lambda_star * block_length * sigma2;
    for (int j = pyramid.j0; j < pyramid.J; ++j) {
        auto& level = out.level(j);
        if (j > jstar) {
            level.setZero();
            continue;
        }
        const Eigen::Index len = level.size();
        const Eigen::Index block = std::min<Eigen::Index>(block_length, len);
        if (len % block != 0)
            throw std::invalid_argument("threshold_blocks: block length " + std::to_string(block_length) +
                                        " does not divide level " + std::to_string(j));
        for (Eigen::Index start = 0; start < len; start += block) {
            auto seg = level.segment(start, block);
            const double energy = seg.squaredNorm();
            const double factor = energy > 0.0 ? std::max(0.0, 1.0 - threshold / energy) : 0.0;
            seg *= factor;
        }
    }
    return out;
}

DenoiseResult denoise(const Eigen::Ref<const Eigen::VectorXd>& y, const EstimatorConfig& cfg)
{
    DenoiseResult result;
    result.plan = plan_bins(static_cast<std::size_t>(y.size()), cfg.m_target);
    auto series = bin_medians(y, result.plan);

    if (cfg.sigma.known_sigma2) {
        result.sigma2_used = *cfg.sigma.known_sigma2;
    } else {
        result.sigma2_used = estimate_sigma2(series, cfg.constant).sigma2;
    }

    result.pyramid_before = forward(series.medians, cfg.filter, cfg.j0);
    result.block_length = cfg.block.resolve(result.plan.usable_n);
    result.jstar = cfg.cutoff.resolve(result.plan, cfg.j0);
    result.pyramid_after = threshold_blocks(result.pyramid_before, result.sigma2_used, result.block_length,
                                            cfg.lambda_star, result.jstar);
    result.fitted_grid = synthesize_function(result.pyramid_after, cfg.filter,
                                             static_cast<Eigen::Index>(result.plan.bins));
    result.medians = std::move(series.medians);
    return result;
}

}  // namespace robwav
