#include "robwav/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robwav/parallel.hpp"
#include "robwav/quadratic_functional.hpp"
#include "robwav/test_signals.hpp"

namespace robwav {

void ExperimentSpec::validate() const
{
    if (reps < 1)
        throw std::invalid_argument("experiment: reps must be >= 1");
    if (n_list.empty())
        throw std::invalid_argument("experiment: n list is empty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("experiment: n list must be strictly increasing");
    if (mode == LossMode::pointwise && !(t0 > 0.0 && t0 < 1.0))
        throw std::invalid_argument("experiment: t0 must lie in (0, 1)");
    evaluate_signal(signal_id, 0.5);
}

double RiskRow::median_loss() const
{
    if (losses.empty())
        return 0.0;
    std::vector<double> sorted = losses;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    return sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

RiskTable run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    RiskTable table;
    table.spec = spec;
    const double q_true = spec.mode == LossMode::quadratic ? signal_energy(spec.signal_id) : 0.0;

    for (const std::size_t n : spec.n_list) {
        const auto signal = sample_signal(spec.signal_id, n);
        const BinPlan plan = plan_bins(n, spec.estimator.m_target);
        const Eigen::VectorXd grid = bin_centers(plan);
        Eigen::VectorXd truth(grid.size());
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            truth[i] = evaluate_signal(spec.signal_id, grid[i]);
        Eigen::Index probe = 0;
        (grid.array() - spec.t0).abs().minCoeff(&probe);

        const bool keep_example = n == spec.n_list.back() && spec.mode != LossMode::quadratic;
        Eigen::VectorXd example_fit;

        RiskRow row;
        row.n = n;
        row.reps = spec.reps;
        row.losses.assign(spec.reps, 0.0);
        parallel_for(spec.reps, spec.threads, [&](std::size_t r) {
            const Eigen::VectorXd y = signal.values + sample_noise(spec.noise, n, stream_key(spec.seed, r));
            switch (spec.mode) {
            case LossMode::mise: {
                auto fit = denoise(y, spec.estimator);
                row.losses[r] = (fit.fitted_grid - truth).squaredNorm() / static_cast<double>(truth.size());
                if (keep_example && r == 0)
                    example_fit = std::move(fit.fitted_grid);
                break;
            }
            case LossMode::pointwise: {
                auto fit = denoise(y, spec.estimator);
                const double diff = fit.fitted_grid[probe] - truth[probe];
                row.losses[r] = diff * diff;
                if (keep_example && r == 0)
                    example_fit = std::move(fit.fitted_grid);
                break;
            }
            case LossMode::quadratic: {
                const double diff = estimate_quadratic(y, spec.estimator).q_hat - q_true;
                row.losses[r] = diff * diff;
                break;
            }
            }
        });

        double sum = 0.0;
        for (double loss : row.losses)
            sum += loss;
        const double count = static_cast<double>(spec.reps);
        row.risk = sum / count;
        if (spec.reps > 1) {
            double ss = 0.0;
            for (double loss : row.losses)
                ss += (loss - row.risk) * (loss - row.risk);
            row.std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
        }
        table.rows.push_back(std::move(row));

        if (keep_example)
            table.example = FitExample{n, grid, std::move(example_fit), truth};
    }
    return table;
}

std::vector<CalibrationRow> variance_calibration(const NoiseModel& noise, std::size_t n, std::size_t m_target,
                                                 std::size_t reps, std::uint64_t seed, unsigned threads)
{
    if (reps < 1)
        throw std::invalid_argument("variance_calibration: reps must be >= 1");
    const BinPlan plan = plan_bins(n, m_target);
    std::vector<double> calibrated(reps), literal(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        const auto series = bin_medians(sample_noise(noise, n, stream_key(seed, r)), plan);
        calibrated[r] = estimate_sigma2(series, VarianceConstant::calibrated).h_inv_sq;
        literal[r] = estimate_sigma2(series, VarianceConstant::literal).h_inv_sq;
    });
    const double h0 = density_at_zero(noise);
    auto row = [&](VarianceConstant c, std::vector<double>& values, double multiple) {
        RiskRow scratch;
        scratch.losses = std::move(values);
        CalibrationRow out;
        out.constant = c;
        out.median_h_inv_sq = scratch.median_loss();
        out.expected = multiple / (h0 * h0);
        out.ratio = out.median_h_inv_sq / out.expected;
        out.reps = reps;
        return out;
    };
    return {row(VarianceConstant::calibrated, calibrated, 1.0), row(VarianceConstant::literal, literal, 2.0)};
}

RateFit fit_rate_slope(const RiskTable& table)
{
    if (table.rows.size() < 3)
        throw std::invalid_argument("fit_rate_slope: need at least 3 rows");
    const auto count = static_cast<Eigen::Index>(table.rows.size());
    Eigen::VectorXd x(count), y(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        const auto& row = table.rows[static_cast<std::size_t>(i)];
        if (!(row.risk > 0.0))
            throw std::invalid_argument("fit_rate_slope: risk at n = " + std::to_string(row.n) +
                                        " is not positive");
        x[i] = std::log(static_cast<double>(row.n));
        y[i] = std::log(row.risk);
    }
    const Eigen::VectorXd xc = x.array() - x.mean();
    const Eigen::VectorXd yc = y.array() - y.mean();
    const double sxx = xc.squaredNorm();
    const double syy = yc.squaredNorm();
    RateFit fit;
    fit.slope = xc.dot(yc) / sxx;
    const double ss_res = (yc - fit.slope * xc).squaredNorm();
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace robwav
