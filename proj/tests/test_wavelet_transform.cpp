#include "doctest.h"

#include <cmath>

#include "robwav/wavelet_filter.hpp"
#include "robwav/wavelet_transform.hpp"

using namespace robwav;

namespace {

const WaveletFilter filters[] = {haar(), daubechies8(), daubechies16()};

Eigen::VectorXd random_vector(Eigen::Index n, unsigned seed)
{
    std::srand(seed);
    return Eigen::VectorXd::Random(n);
}

}  // namespace

TEST_CASE("filter tables")
{
    for (const auto& f : filters) {
        const auto& h = f.lowpass;
        const auto g = f.highpass();
        double sum = 0.0;
        for (double v : h)
            sum += v;
        CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        // orthonormality of even shifts
        for (std::size_t s = 0; s < h.size(); s += 2) {
            double dot = 0.0;
            for (std::size_t i = 0; i + s < h.size(); ++i)
                dot += h[i] * h[i + s];
            CHECK(dot == doctest::Approx(s == 0 ? 1.0 : 0.0).epsilon(1e-12));
        }
        // vanishing moments of the mother wavelet
        for (int p = 0; p < f.regularity; ++p) {
            double moment = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i)
                moment += std::pow(static_cast<double>(i), p) * g[i];
            CHECK(std::abs(moment) < 1e-8 * std::pow(static_cast<double>(g.size()), p));
        }
    }
    CHECK(daubechies8().length() == 8);
    CHECK(daubechies16().length() == 16);
    CHECK(filter_by_name("d8").name == "d8");
    CHECK_THROWS_AS(filter_by_name("sym4"), std::invalid_argument);
}

TEST_CASE("zero and constant inputs")
{
    const auto p = forward(Eigen::VectorXd::Zero(64), daubechies8(), 3);
    CHECK(p.flatten().isZero(0.0));
    CHECK(inverse(Pyramid<double>::zeros(3, 6), daubechies8()).isZero(0.0));

    const double c = 1.75;
    const auto q = forward(Eigen::Vector4d::Constant(c), haar(), 0);
    CHECK(q.father.size() == 1);
    CHECK(q.father[0] == doctest::Approx(c).epsilon(1e-15));
    CHECK(q.level(0).isZero(1e-15));
    CHECK(q.level(1).isZero(1e-15));
    CHECK(q.scale_factor == doctest::Approx(0.5));
}

TEST_CASE("perfect reconstruction and Parseval at every filter and j0")
{
    for (const auto& f : filters) {
        for (int J : {4, 6, 9}) {
            for (int j0 = 0; j0 < J; ++j0) {
                const Eigen::VectorXd x = random_vector(Eigen::Index{1} << J, 31 * J + j0);
                const auto p = forward(x, f, j0);
                CHECK_NOTHROW(p.validate());
                CHECK((inverse(p, f) - x).cwiseAbs().maxCoeff() < 1e-10);
                CHECK(std::abs(p.squared_norm() - x.squaredNorm() / x.size()) < 1e-10);
            }
        }
    }
}

TEST_CASE("linearity")
{
    const Eigen::VectorXd x = random_vector(256, 1), y = random_vector(256, 2);
    const auto lhs = forward((2.5 * x - 0.5 * y).eval(), daubechies8(), 3).flatten();
    const auto rhs = (2.5 * forward(x, daubechies8(), 3).flatten() - 0.5 * forward(y, daubechies8(), 3).flatten()).eval();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("basis vectors are orthonormal")
{
    for (const auto& f : filters) {
        const int J = 6, j0 = 2;
        const Eigen::Index T = Eigen::Index{1} << J;
        Eigen::MatrixXd basis(T, T);
        for (Eigen::Index i = 0; i < T; ++i) {
            auto unit = Pyramid<double>::zeros(j0, J);
            Eigen::VectorXd flat = Eigen::VectorXd::Zero(T);
            flat[i] = 1.0;
            unit.father = flat.head(unit.father.size());
            Eigen::Index offset = unit.father.size();
            for (auto& d : unit.details) {
                d = flat.segment(offset, d.size());
                offset += d.size();
            }
            basis.col(i) = inverse(unit, f);
        }
        const Eigen::MatrixXd gram = basis.transpose() * basis;
        CHECK((gram - Eigen::MatrixXd::Identity(T, T)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("synthesis and truncation")
{
    Eigen::VectorXd x(128);
    for (int i = 0; i < 128; ++i)
        x[i] = std::sin(6.0 * (i + 1) / 128.0) + 0.1 * (i % 7);
    const auto p = forward(x, daubechies8(), 3);
    CHECK((synthesize_function(p, daubechies8(), 128) - x).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(synthesize_function(Pyramid<double>::zeros(3, 7), daubechies8(), 128).isZero(0.0));
    CHECK_THROWS(synthesize_function(p, daubechies8(), 64));

    auto cut = p;
    cut.level(6).setZero();
    cut.level(5).setZero();
    const auto grid = synthesize_function(cut, daubechies8(), 128);
    CHECK((grid - inverse(cut, daubechies8())).cwiseAbs().maxCoeff() == 0.0);
    CHECK(grid.squaredNorm() <= x.squaredNorm() + 1e-12);
}

TEST_CASE("single precision instantiation")
{
    const Eigen::VectorXf x = Eigen::VectorXf::LinSpaced(64, -1.0f, 2.0f);
    const auto p = forward(x, daubechies8(), 2);
    CHECK((inverse(p, daubechies8()) - x).cwiseAbs().maxCoeff() < 1e-5f);
}

TEST_CASE("shape errors")
{
    CHECK_THROWS_AS(forward(Eigen::VectorXd::Zero(48), haar(), 1), std::invalid_argument);
    CHECK_THROWS_AS(forward(Eigen::VectorXd::Zero(64), haar(), 6), std::invalid_argument);
    auto bad = Pyramid<double>::zeros(2, 5);
    bad.level(3).resize(5);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(inverse(bad, haar()), std::invalid_argument);
}
