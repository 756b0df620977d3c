// Test functions sampled on the regression design grid t_i = i/n, i = 1..n,
// and the Besov sequence norm of a coefficient pyramid.
//
// Note: part of the wavelet literature samples at (i - 1/2)/n instead; this
// module always uses i/n.
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "robwav/wavelet_transform.hpp"

namespace robwav {

struct SignalGrid {
    Eigen::VectorXd values;
    std::size_t n = 0;
    std::string signal_id;
    /// Declared smoothness, only used to book-keep expected rate slopes.
    std::optional<double> nominal_alpha;
};

/// f(t) for a signal id: zero, constant:c, linear, sine[:freq], spikes,
/// doppler, blocks, bumps. Throws std::invalid_argument for unknown ids.
double evaluate_signal(std::string_view signal_id, double t);

/// Values f(i/n), i = 1..n. Requires n >= 2.
SignalGrid sample_signal(std::string_view signal_id, std::size_t n);

/// Q(f) = int_0^1 f^2 by adaptive quadrature.
double signal_energy(std::string_view signal_id);

/// Reads a CSV with a header row containing column `y` and optionally
/// `f_true`. Returns the y column; f_true (if present) goes to `truth`.
Eigen::VectorXd load_signal_csv(const std::filesystem::path& path,
                                std::optional<Eigen::VectorXd>* truth = nullptr);

/// ||father||_p + (sum_j (2^{js} ||theta_j||_p)^q)^{1/q}, s = alpha + 1/2 - 1/p.
template <typename Scalar>
Scalar besov_seq_norm(const Pyramid<Scalar>& pyramid, double alpha, double p, double q)
{
    if (!(p >= 1.0) || !(q >= 1.0))
        throw std::invalid_argument("besov_seq_norm: need p >= 1 and q >= 1");
    const double s = alpha + 0.5 - 1.0 / p;
    if (!(s > 0.0))
        throw std::invalid_argument("besov_seq_norm: need s = alpha + 1/2 - 1/p > 0");

    auto lp = [p](const VectorX<Scalar>& v) {
        using std::abs;
        using std::pow;
        Scalar total(0);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            total += pow(abs(v[i]), Scalar(p));
        return pow(total, Scalar(1.0 / p));
    };

    Scalar tail(0);
    for (int j = pyramid.j0; j < pyramid.J; ++j) {
        using std::pow;
        tail += pow(Scalar(std::exp2(j * s)) * lp(pyramid.level(j)), Scalar(q));
    }
    using std::pow;
    return lp(pyramid.father) + pow(tail, Scalar(1.0 / q));
}

}  // namespace robwav
