#include "robwav/median_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "robwav/special_functions.hpp"

namespace robwav {

MedianLaw MedianLaw::make(const NoiseModel& model, int m)
{
    if (m < 1 || m % 2 == 0)
        throw std::invalid_argument("median law: m must be odd and positive, got " + std::to_string(m));
    return {model, m, (m - 1) / 2};
}

double exact_median_cdf(const MedianLaw& law, double x)
{
    const double a = law.k + 1.0;
    return beta_inc(a, a, law.model.cdf(x), law.model.sf(x));
}

double exact_median_sf(const MedianLaw& law, double x)
{
    const double a = law.k + 1.0;
    return beta_inc(a, a, law.model.sf(x), law.model.cdf(x));
}

double exact_median_pdf(const MedianLaw& law, double x)
{
    const double h = law.model.density(x);
    if (law.k == 0)
        return h;
    const double lower = law.model.cdf(x);
    const double upper = law.model.sf(x);
    if (h == 0.0 || lower == 0.0 || upper == 0.0)
        return 0.0;
    const double k = law.k;
    const double log_coeff = std::lgamma(2.0 * k + 2.0) - 2.0 * std::lgamma(k + 1.0);
    return std::exp(log_coeff + k * (std::log(lower) + std::log(upper)) + std::log(h));
}

double median_quantile(const MedianLaw& law, double p)
{
    const double a = law.k + 1.0;
    const auto [u, uc] = beta_inc_inv(a, a, p, 1.0 - p);
    return u <= 0.5 ? law.model.quantile(u) : 2.0 * law.model.location() - law.model.quantile(uc);
}

double couple(const MedianLaw& law, double z)
{
    if (z > 0.0)
        return 2.0 * law.model.location() - couple(law, -z);
    const double a = law.k + 1.0;
    const auto [u, uc] = beta_inc_inv(a, a, normal_cdf(z), normal_sf(z));
    (void)uc;
    return law.model.quantile(u);
}

double coupling_error(const MedianLaw& law, double z)
{
    const double scale = 2.0 * density_at_zero(law.model) * std::sqrt(static_cast<double>(law.m));
    return std::abs(scale * couple(law, z) - z);
}

double moderate_deviation_log_ratio(const MedianLaw& law, double c)
{
    const double x = c / (2.0 * density_at_zero(law.model) * std::sqrt(static_cast<double>(law.m)));
    return std::log(exact_median_cdf(law, -x)) - std::log(normal_cdf(-c));
}

std::vector<CouplingProfileRow> coupling_error_profile(const NoiseModel& model, const std::vector<int>& m_list,
                                                       double eps, int grid)
{
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("coupling_error_profile: eps must lie in (0, 1]");
    if (grid < 2)
        throw std::invalid_argument("coupling_error_profile: grid needs at least 2 points");
    std::vector<CouplingProfileRow> rows;
    for (const int m : m_list) {
        if (m < 3 || m % 2 == 0)
            throw std::invalid_argument("coupling_error_profile: m must be odd and >= 3, got " + std::to_string(m));
        const auto law = MedianLaw::make(model, m);
        const double reach = eps * std::sqrt(static_cast<double>(m));
        CouplingProfileRow row;
        row.m = m;
        row.eps = eps;
        for (int i = 0; i < grid; ++i) {
            const double z = -reach + 2.0 * reach * i / (grid - 1);
            const double value = m * coupling_error(law, z) / (1.0 + std::abs(z * z * z));
            if (value > row.sup_normalized_error) {
                row.sup_normalized_error = value;
                row.argmax_z = z;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

BinomialCouplingRow kmt_binomial_coupling_check(int m, int grid)
{
    if (m < 1)
        throw std::invalid_argument("kmt_binomial_coupling_check: m must be positive");
    if (grid < 2)
        throw std::invalid_argument("kmt_binomial_coupling_check: grid needs at least 2 points");

    const double root_m = std::sqrt(static_cast<double>(m));
    // Lower CDF of W ~ Bin(m, 1/2) and the matching upper tail P(W > w).
    std::vector<double> pmf(static_cast<std::size_t>(m) + 1);
    const double log_half_m = m * std::log(0.5);
    for (int w = 0; w <= m; ++w)
        pmf[static_cast<std::size_t>(w)] =
            std::exp(std::lgamma(m + 1.0) - std::lgamma(w + 1.0) - std::lgamma(m - w + 1.0) + log_half_m);
    std::vector<double> lower(pmf.size());
    double acc = 0.0;
    for (std::size_t w = 0; w < pmf.size(); ++w)
        lower[w] = (acc += pmf[w]);

    auto atom = [&](int w) { return 2.0 * (w - 0.5 * m) / root_m; };
    // Smallest w with P(W <= w) >= Phi(y).
    auto coupled_index = [&](double y) {
        const double p = normal_cdf(y);
        const auto it = std::lower_bound(lower.begin(), lower.end(), p);
        return static_cast<int>(std::min<std::ptrdiff_t>(it - lower.begin(), m));
    };

    BinomialCouplingRow row;
    row.m = m;
    const double reach = 0.5 * root_m + 1.0;
    for (int i = 0; i < grid; ++i) {
        const double y = -reach + 2.0 * reach * i / (grid - 1);
        const double x = atom(coupled_index(y));
        if (std::abs(x) > 0.5 * root_m)
            continue;
        const double value = root_m * std::abs(x - y) / (1.0 + x * x);
        if (value > row.sup_normalized_error) {
            row.sup_normalized_error = value;
            row.argmax_y = y;
        }
    }

    // The atom nearest zero (the lower one when two are equally close) and
    // the Y interval (Phi^{-1}(F(w-1)), Phi^{-1}(F(w))] it receives.
    const int w_star = m / 2;
    const double x_star = atom(w_star);
    const double y_lo = std::max(-reach, w_star == 0 ? -std::numeric_limits<double>::infinity()
                                                     : normal_quantile(lower[static_cast<std::size_t>(w_star - 1)]));
    const double p_hi = lower[static_cast<std::size_t>(w_star)];
    const double y_hi = std::min(reach, p_hi >= 1.0 ? std::numeric_limits<double>::infinity() : normal_quantile(p_hi));
    row.central_error = std::max(std::abs(x_star - y_lo), std::abs(x_star - y_hi));
    return row;
}

}  // namespace robwav
