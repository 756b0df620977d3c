// Exact law of the sample median of m = 2k + 1 i.i.d. errors, its quantile
// coupling with a standard normal, and deterministic profiles of the
// coupling error.
//
// With H the error CDF, the median has
//   G(x) = P(Bin(m, H(x)) >= k + 1) = I_{H(x)}(k + 1, k + 1),
//   g(x) = (2k + 1)! / (k!)^2 H^k (1 - H)^k h(x),
// and the coupled median of Z ~ N(0, 1) is G^{-1}(Phi(Z)).
#pragma once

#include <vector>

#include "robwav/noise_models.hpp"

namespace robwav {

struct MedianLaw {
    NoiseModel model;
    int m = 1;
    int k = 0;

    /// Rejects even or nonpositive m.
    static MedianLaw make(const NoiseModel& model, int m);
};

double exact_median_cdf(const MedianLaw& law, double x);
/// 1 - G(x), accurate in the upper tail.
double exact_median_sf(const MedianLaw& law, double x);
/// Evaluated through log-gamma so large k does not overflow.
double exact_median_pdf(const MedianLaw& law, double x);

/// G^{-1}(p) = H^{-1}(I^{-1}_p(k + 1, k + 1)).
double median_quantile(const MedianLaw& law, double p);

/// Quantile coupling G^{-1}(Phi(z)). Monotone in z; evaluated in the lower
/// tail and reflected for z > 0 so both tails keep full precision.
double couple(const MedianLaw& law, double z);

/// |2 h(0) sqrt(m) couple(z) - z|.
double coupling_error(const MedianLaw& law, double z);

/// log(G(-x) / Phi(-c)) at x = c / (2 h(0) sqrt(m)).
double moderate_deviation_log_ratio(const MedianLaw& law, double c);

struct CouplingProfileRow {
    int m = 0;
    double eps = 0.0;
    double sup_normalized_error = 0.0;  // sup m |2h(0)sqrt(m) couple(z) - z| / (1 + |z|^3)
    double argmax_z = 0.0;
};

/// For each odd m >= 3: the supremum over `grid` equispaced z in
/// [-eps sqrt(m), eps sqrt(m)] of the normalized coupling error.
std::vector<CouplingProfileRow> coupling_error_profile(const NoiseModel& model, const std::vector<int>& m_list,
                                                       double eps = 0.5, int grid = 2001);

struct BinomialCouplingRow {
    int m = 0;
    double sup_normalized_error = 0.0;  // sup sqrt(m) |X~ - Y| / (1 + X~^2), |X~| <= sqrt(m)/2
    double argmax_y = 0.0;
    /// max |X~ - Y| over the Y values mapped onto the atom nearest 0.
    double central_error = 0.0;
};

/// Quantile-couples X = 2(W - m/2)/sqrt(m), W ~ Bin(m, 1/2), with Y ~ N(0, 1)
/// over `grid` equispaced Y in [-(sqrt(m)/2 + 1), sqrt(m)/2 + 1].
BinomialCouplingRow kmt_binomial_coupling_check(int m, int grid = 4001);

}  // namespace robwav
