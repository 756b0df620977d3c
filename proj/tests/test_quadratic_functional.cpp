#include "doctest.h"

#include <cmath>

#include "robwav/median_binning.hpp"
#include "robwav/quadratic_functional.hpp"
#include "robwav/test_signals.hpp"

using namespace robwav;

namespace {

struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

Moments q_moments(const Eigen::VectorXd& f, const NoiseModel& noise, int reps, double sign)
{
    std::vector<double> q(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const Eigen::VectorXd y = f + sign * sample_noise(noise, static_cast<std::size_t>(f.size()), 500 + r);
        q[static_cast<std::size_t>(r)] = estimate_quadratic(y, EstimatorConfig{}).q_hat;
    }
    Moments out;
    for (double v : q)
        out.mean += v;
    out.mean /= reps;
    double ss = 0.0;
    for (double v : q)
        ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (reps - 1) / reps);
    return out;
}

}  // namespace

TEST_CASE("trivial inputs")
{
    const auto z = estimate_quadratic(Eigen::VectorXd::Zero(4096), EstimatorConfig{});
    CHECK(z.q_hat == 0.0);
    CHECK(z.sigma2_used == 0.0);
    CHECK(z.Jq == 6);
    CHECK(z.terms_count == 128);

    const auto one = estimate_quadratic(Eigen::VectorXd::Ones(4096), EstimatorConfig{});
    CHECK(one.q_hat == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("noiseless input keeps exactly the retained energy")
{
    const Eigen::VectorXd f = sample_signal("bumps", 4096).values;
    EstimatorConfig cfg;
    cfg.sigma = SigmaRule::known(0.0);
    const auto r = estimate_quadratic(f, cfg);
    const auto plan = plan_bins(4096, cfg.m_target);
    const auto p = forward(bin_medians(f, plan).medians, cfg.filter, cfg.j0);
    double kept = p.father.squaredNorm();
    for (int j = cfg.j0; j <= r.Jq; ++j)
        kept += p.level(j).squaredNorm();
    CHECK(r.q_hat == doctest::Approx(kept).epsilon(1e-12));
    CHECK(p.squared_norm() - r.q_hat >= 0.0);
}

TEST_CASE("unbiased for the sine under Gaussian noise")
{
    const auto m = q_moments(sample_signal("sine", 4096).values, NoiseModel::gaussian(1.0), 500, 1.0);
    CHECK(std::abs(m.mean - 0.5) < 3.0 * m.se);
}

TEST_CASE("flipping the noise sign leaves the mean unchanged")
{
    const Eigen::VectorXd f = sample_signal("sine", 2048).values;
    const auto plus = q_moments(f, NoiseModel::student_t(3.0, 1.0), 300, 1.0);
    const auto minus = q_moments(f, NoiseModel::student_t(3.0, 1.0), 300, -1.0);
    CHECK(std::abs(plus.mean - minus.mean) < 3.0 * std::hypot(plus.se, minus.se));
}

TEST_CASE("zero noise risk is the squared truncation bias")
{
    const auto rows = quadratic_risk(NoiseModel::uniform(0.0), "blocks", {1024, 4096, 16384}, 100, 3);
    REQUIRE(rows.size() == 3);
    const double q = signal_energy("blocks");
    for (const auto& row : rows) {
        CHECK(row.q_true == doctest::Approx(q));
        CHECK(row.n_mse == doctest::Approx(row.n * std::pow(row.mean_qhat - q, 2)).epsilon(1e-9));
        CHECK(row.std_error == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(rows[1].n_mse / rows[1].n < rows[0].n_mse / rows[0].n);
    CHECK(rows[2].n_mse / rows[2].n < rows[1].n_mse / rows[1].n);
}

TEST_CASE("argument checks")
{
    EstimatorConfig cfg;
    cfg.j0 = 8;
    CHECK_THROWS(estimate_quadratic(Eigen::VectorXd::Zero(4096), cfg));
    CHECK_THROWS(quadratic_risk(NoiseModel::gaussian(1.0), "sine", {1024}, 99, 1));
}
