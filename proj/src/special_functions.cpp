#include "robwav/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace robwav {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Acklam's rational approximation for the lower half (p <= 0.5).
double acklam_lower(double p)
{
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    if (p < 0.02425) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 100000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h;
    }
    throw std::runtime_error("beta_cf: continued fraction did not converge");
}

// log of the directly-evaluated branch: x^a y^b / (a B(a,b)) * cf.
double log_direct(double a, double b, double x, double y)
{
    return a * std::log(x) + b * std::log(y) - log_beta(a, b) - std::log(a) +
           std::log(beta_cf(a, b, x));
}

bool use_direct(double a, double b, double x)
{
    return x < (a + 1.0) / (a + b + 2.0);
}

void check_args(double a, double b, double x, double y)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete beta: shape parameters must be positive");
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw std::domain_error("incomplete beta: argument outside [0, 1]");
}

// Solves I_x(a, b) = p for p <= 1/2 by Newton iteration on u = log x.
std::pair<double, double> solve_lower(double a, double b, double p)
{
    const double target = std::log(p);
    const double lbeta = log_beta(a, b);
    auto residual = [&](double u) {
        const double x = std::exp(u);
        const double y = -std::expm1(u);
        return log_beta_inc(a, b, x, y) - target;
    };

    double hi = 0.0;
    double lo = -1.0;
    while (residual(lo) > 0.0) {
        lo *= 2.0;
        if (lo < -1500.0)
            return {0.0, 1.0};
    }

    double u = (target + std::log(a) + lbeta) / a;
    if (!(u > lo && u < hi))
        u = 0.5 * (lo + hi);

    for (int iter = 0; iter < 200; ++iter) {
        const double f = residual(u);
        if (f == 0.0)
            break;
        if (f < 0.0)
            lo = u;
        else
            hi = u;
        const double y = -std::expm1(u);
        const double log_i = f + target;
        // d(log I)/du = x * x^{a-1} y^{b-1} / (B I)
        const double slope = std::exp(a * u + (b - 1.0) * std::log(y) - lbeta - log_i);
        double next = u - f / slope;
        if (!(next > lo && next < hi) || !std::isfinite(next))
            next = 0.5 * (lo + hi);
        const double step = std::abs(next - u);
        u = next;
        if (step <= 1e-15 * std::max(1.0, std::abs(u)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(u)))
            break;
    }
    return {std::exp(u), -std::expm1(u)};
}

}  // namespace

double normal_pdf(double z)
{
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0)
            return -std::numeric_limits<double>::infinity();
        if (p == 1.0)
            return std::numeric_limits<double>::infinity();
        throw std::domain_error("normal_quantile: p outside [0, 1]");
    }
    if (p > 0.5)
        return -normal_quantile(1.0 - p);
    double x = acklam_lower(p);
    for (int i = 0; i < 2; ++i) {
        const double pdf = normal_pdf(x);
        if (pdf == 0.0)
            break;
        const double u = (normal_cdf(x) - p) / pdf;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double log_beta(double a, double b)
{
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_inc(double a, double b, double x, double y)
{
    check_args(a, b, x, y);
    if (x == 0.0)
        return 0.0;
    if (y == 0.0)
        return 1.0;
    if (use_direct(a, b, x))
        return std::exp(log_direct(a, b, x, y));
    return -std::expm1(log_direct(b, a, y, x));
}

double log_beta_inc(double a, double b, double x, double y)
{
    check_args(a, b, x, y);
    if (x == 0.0)
        return -std::numeric_limits<double>::infinity();
    if (y == 0.0)
        return 0.0;
    if (use_direct(a, b, x))
        return log_direct(a, b, x, y);
    return std::log1p(-std::exp(log_direct(b, a, y, x)));
}

std::pair<double, double> beta_inc_inv(double a, double b, double p, double q)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta_inc_inv: shape parameters must be positive");
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
        throw std::domain_error("beta_inc_inv: probability outside [0, 1]");
    if (p == 0.0)
        return {0.0, 1.0};
    if (q == 0.0)
        return {1.0, 0.0};
    if (p <= q)
        return solve_lower(a, b, p);
    const auto [y, x] = solve_lower(b, a, q);
    return {x, y};
}

}  // namespace robwav
