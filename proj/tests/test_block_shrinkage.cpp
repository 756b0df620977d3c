#include "doctest.h"

#include <cmath>

#include "robwav/block_shrinkage.hpp"
#include "robwav/noise_models.hpp"
#include "robwav/test_signals.hpp"

using namespace robwav;

TEST_CASE("lambda star")
{
    const double lambda = solve_lambda_star();
    CHECK(lambda == doctest::Approx(4.50524).epsilon(1e-4 / 4.5));
    CHECK(std::abs(lambda - std::log(lambda) - 3.0) < 1e-12);
    auto f = [](double x) { return x - std::log(x) - 3.0; };
    // the small root sits in (0.05, 1); the solver must not return it
    CHECK(f(0.05) > 0.0);
    CHECK(f(1.0) < 0.0);
    CHECK(lambda > 1.0);
}

TEST_CASE("hand-worked block")
{
    auto p = Pyramid<double>::zeros(1, 3);
    p.level(1) << 3.0, 4.0;
    const double lambda = 4.50524;
    const auto out = threshold_blocks(p, 1.0, 2, lambda, 2);
    CHECK(out.level(1)[0] == doctest::Approx(1.918742).epsilon(1e-6));
    CHECK(out.level(1)[1] == doctest::Approx(2.558323).epsilon(1e-6));

    auto small = Pyramid<double>::zeros(1, 3);
    small.level(2) << 0.5, -0.5, 2.0, 0.1;
    const auto killed = threshold_blocks(small, 1.0, 2, lambda, 2);
    CHECK(killed.level(2).isZero(0.0));
}

TEST_CASE("zero variance and level cutoff")
{
    auto p = Pyramid<double>::zeros(2, 6);
    std::srand(3);
    p.father = Eigen::VectorXd::Random(4);
    for (auto& d : p.details)
        d = Eigen::VectorXd::Random(d.size());
    const auto same = threshold_blocks(p, 0.0, 4, solve_lambda_star(), 4);
    CHECK(same.father == p.father);
    for (int j = 2; j <= 4; ++j)
        CHECK(same.level(j) == p.level(j));
    CHECK(same.level(5).isZero(0.0));
    CHECK_THROWS(threshold_blocks(p, -1.0, 4, 4.5, 4));
    CHECK_THROWS(threshold_blocks(p, 1.0, 3, 4.5, 4));
}

TEST_CASE("shrinkage never adds energy and is monotone in sigma2")
{
    std::srand(9);
    auto p = Pyramid<double>::zeros(3, 9);
    for (auto& d : p.details)
        d = Eigen::VectorXd::Random(d.size()) * 0.3;
    const int L = 8;
    Pyramid<double> previous = p;
    for (double s2 : {0.0, 1e-4, 1e-3, 3e-3, 1e-2, 0.1}) {
        const auto out = threshold_blocks(p, s2, L, solve_lambda_star(), 8);
        for (int j = 3; j < 9; ++j) {
            const Eigen::Index len = std::min<Eigen::Index>(L, p.level(j).size());
            for (Eigen::Index b = 0; b < p.level(j).size(); b += len) {
                const double before = p.level(j).segment(b, len).norm();
                const double after = out.level(j).segment(b, len).norm();
                const double prev = previous.level(j).segment(b, len).norm();
                CHECK(after <= before + 1e-15);
                CHECK(after <= prev + 1e-15);
            }
        }
        previous = out;
    }
}

TEST_CASE("block length and cutoff rules")
{
    CHECK(BlockLengthRule::automatic().resolve(4096) == 8);
    CHECK(BlockLengthRule::automatic().resolve(1024) == 4);
    CHECK(BlockLengthRule::automatic().resolve(65536) == 8);
    CHECK(BlockLengthRule::fixed_length(16).resolve(4096) == 16);
    CHECK_THROWS(BlockLengthRule::fixed_length(3).resolve(4096));

    const auto plan = plan_bins(4096, 8);
    CHECK(LevelCutoffRule::all_levels().resolve(plan, 3) == 8);
    CHECK(LevelCutoffRule::log_cutoff(1.0).resolve(plan, 3) == 3);
    const auto big = plan_bins(1 << 22, 1);
    // log2(2^22 / ln(2^22)^1.5) = 22 - 1.5 log2(15.25)
    CHECK(LevelCutoffRule::log_cutoff(0.5).resolve(big, 3) == 16);
}

TEST_CASE("denoise on trivial inputs")
{
    const auto zero = denoise(Eigen::VectorXd::Zero(4096), EstimatorConfig{});
    CHECK(zero.fitted_grid.size() == 512);
    CHECK(zero.fitted_grid.isZero(0.0));
    CHECK(zero.sigma2_used == 0.0);
    CHECK(zero.block_length == 8);
    CHECK(zero.jstar == 8);

    const auto flat = denoise(Eigen::VectorXd::Constant(1024, 2.0), EstimatorConfig{});
    CHECK((flat.fitted_grid.array() - 2.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("scale and shift equivariance")
{
    const Eigen::VectorXd y = sample_signal("doppler", 2048).values + sample_noise(NoiseModel::gaussian(0.2), 2048, 8);
    EstimatorConfig cfg;
    cfg.sigma = SigmaRule::known(0.04 / 2048 * 4);
    const auto base = denoise(y, cfg);
    EstimatorConfig scaled = cfg;
    scaled.sigma = SigmaRule::known(4.0 * *cfg.sigma.known_sigma2);
    CHECK(denoise((2.0 * y).eval(), scaled).fitted_grid == 2.0 * base.fitted_grid);
    scaled.sigma = SigmaRule::known(9.0 * *cfg.sigma.known_sigma2);
    CHECK((denoise((3.0 * y).eval(), scaled).fitted_grid - 3.0 * base.fitted_grid).cwiseAbs().maxCoeff() < 1e-12);

    const auto est = denoise(y, EstimatorConfig{});
    const auto moved = denoise((y.array() + 5.0).matrix(), EstimatorConfig{});
    CHECK((moved.fitted_grid.array() - 5.0 - est.fitted_grid.array()).abs().maxCoeff() < 1e-8);
}

TEST_CASE("noiseless sine is recovered with shrinking error")
{
    double previous = 1.0;
    for (std::size_t n : {1024, 4096, 16384}) {
        const auto fit = denoise(sample_signal("sine", n).values, EstimatorConfig{});
        const auto grid = bin_centers(fit.plan);
        double mise = 0.0;
        for (Eigen::Index i = 0; i < grid.size(); ++i)
            mise += std::pow(fit.fitted_grid[i] - evaluate_signal("sine", grid[i]), 2);
        mise /= static_cast<double>(grid.size());
        CHECK(mise < previous);
        CHECK(mise < 1e-3);
        previous = mise;
    }
}

TEST_CASE("denoise rejects bad configuration")
{
    EstimatorConfig cfg;
    cfg.j0 = 9;
    CHECK_THROWS(denoise(Eigen::VectorXd::Zero(4096), cfg));
    CHECK_THROWS(denoise(Eigen::VectorXd::Zero(8), EstimatorConfig{}));
}
