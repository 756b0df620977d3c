#include "robwav/quadratic_functional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "robwav/parallel.hpp"
#include "robwav/test_signals.hpp"

namespace robwav {

namespace {

// floor(log2 sqrt(n)) = largest j with 4^j <= n.
int half_log2(std::size_t n)
{
    int j = 0;
    while ((std::size_t{1} << (2 * (j + 1))) <= n)
        ++j;
    return j;
}

}  // namespace

QuadraticResult estimate_quadratic(const Eigen::Ref<const Eigen::VectorXd>& y, const EstimatorConfig& cfg)
{
    const BinPlan plan = plan_bins(static_cast<std::size_t>(y.size()), cfg.m_target);
    const int Jq = half_log2(plan.usable_n);
    if (Jq < cfg.j0 || Jq > plan.levels - 1)
        throw std::invalid_argument("estimate_quadratic: Jq = " + std::to_string(Jq) + " outside [j0, J - 1] = [" +
                                    std::to_string(cfg.j0) + ", " + std::to_string(plan.levels - 1) + "]");
    const auto series = bin_medians(y, plan);

    QuadraticResult result;
    result.Jq = Jq;
    result.sigma2_used = cfg.sigma.known_sigma2 ? *cfg.sigma.known_sigma2
                                                : estimate_sigma2(series, cfg.constant).sigma2;

    const auto pyramid = forward(series.medians, cfg.filter, cfg.j0);
    double total = pyramid.father.squaredNorm();
    std::size_t terms = static_cast<std::size_t>(pyramid.father.size());
    for (int j = cfg.j0; j <= Jq; ++j) {
        total += pyramid.level(j).squaredNorm();
        terms += static_cast<std::size_t>(pyramid.level(j).size());
    }
    result.terms_count = terms;
    result.q_hat = total - static_cast<double>(terms) * result.sigma2_used;
    return result;
}

std::vector<QuadraticRiskRow> quadratic_risk(const NoiseModel& model, const std::string& signal_id,
                                             const std::vector<std::size_t>& n_list, std::size_t reps,
                                             std::uint64_t seed, const EstimatorConfig& cfg, unsigned threads)
{
    if (reps < 100)
        throw std::invalid_argument("quadratic_risk: need at least 100 replicates");
    const double q_true = signal_energy(signal_id);

    std::vector<QuadraticRiskRow> rows;
    for (const std::size_t n : n_list) {
        const auto signal = sample_signal(signal_id, n);
        std::vector<double> qhat(reps);
        parallel_for(reps, threads, [&](std::size_t r) {
            const Eigen::VectorXd y = signal.values + sample_noise(model, n, stream_key(seed, r));
            qhat[r] = estimate_quadratic(y, cfg).q_hat;
        });

        QuadraticRiskRow row;
        row.n = n;
        row.reps = reps;
        row.q_true = q_true;
        const double dn = static_cast<double>(n);
        double sum_q = 0.0;
        double sum_loss = 0.0;
        for (double q : qhat) {
            sum_q += q;
            sum_loss += dn * (q - q_true) * (q - q_true);
        }
        const double count = static_cast<double>(reps);
        row.mean_qhat = sum_q / count;
        row.n_mse = sum_loss / count;
        double var = 0.0;
        for (double q : qhat) {
            const double loss = dn * (q - q_true) * (q - q_true);
            var += (loss - row.n_mse) * (loss - row.n_mse);
        }
        row.std_error = std::sqrt(var / (count - 1.0) / count);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace robwav
