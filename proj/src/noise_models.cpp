#include "robwav/noise_models.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "robwav/special_functions.hpp"

namespace robwav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_number(std::string_view token, std::string_view whole)
{
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw std::invalid_argument("noise spec '" + std::string(whole) + "': bad number '" +
                                    std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

std::string shortest(double value)
{
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

}  // namespace

NoiseModel::NoiseModel(NoiseFamily family, double scale, double dof)
    : family_(family), scale_(scale), dof_(dof)
{
    if (!(scale >= 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("noise model: scale must be finite and nonnegative");
    if (family == NoiseFamily::student_t && !(dof > 0.0))
        throw std::invalid_argument("noise model: Student t needs positive degrees of freedom");
}

NoiseModel NoiseModel::gaussian(double scale) { return {NoiseFamily::gaussian, scale, 0.0}; }
NoiseModel NoiseModel::cauchy(double scale) { return {NoiseFamily::cauchy, scale, 0.0}; }
NoiseModel NoiseModel::student_t(double dof, double scale) { return {NoiseFamily::student_t, scale, dof}; }
NoiseModel NoiseModel::laplace(double scale) { return {NoiseFamily::laplace, scale, 0.0}; }
NoiseModel NoiseModel::uniform(double halfwidth) { return {NoiseFamily::uniform, halfwidth, 0.0}; }

NoiseModel NoiseModel::parse(std::string_view text)
{
    const auto parts = split(text, ':');
    const auto name = parts.front();
    auto expect = [&](std::size_t count) {
        if (parts.size() != count)
            throw std::invalid_argument("noise spec '" + std::string(text) + "': expected " +
                                        std::to_string(count - 1) + " parameter(s)");
    };
    if (name == "gaussian" || name == "normal") {
        expect(2);
        return gaussian(parse_number(parts[1], text));
    }
    if (name == "cauchy") {
        expect(2);
        return cauchy(parse_number(parts[1], text));
    }
    if (name == "t" || name == "student_t") {
        expect(3);
        return student_t(parse_number(parts[1], text), parse_number(parts[2], text));
    }
    if (name == "laplace") {
        expect(2);
        return laplace(parse_number(parts[1], text));
    }
    if (name == "uniform") {
        expect(2);
        return uniform(parse_number(parts[1], text));
    }
    throw std::invalid_argument("noise spec '" + std::string(text) + "': unknown family '" +
                                std::string(name) + "'");
}

NoiseModel NoiseModel::shifted(double location) const
{
    NoiseModel copy = *this;
    copy.location_ = location;
    return copy;
}

std::string NoiseModel::to_string() const
{
    std::string out;
    switch (family_) {
    case NoiseFamily::gaussian: out = "gaussian:" + shortest(scale_); break;
    case NoiseFamily::cauchy: out = "cauchy:" + shortest(scale_); break;
    case NoiseFamily::student_t: out = "t:" + shortest(dof_) + ":" + shortest(scale_); break;
    case NoiseFamily::laplace: out = "laplace:" + shortest(scale_); break;
    case NoiseFamily::uniform: out = "uniform:" + shortest(scale_); break;
    }
    if (location_ != 0.0)
        out += "@" + shortest(location_);
    return out;
}

double NoiseModel::std_density(double x) const
{
    switch (family_) {
    case NoiseFamily::gaussian:
        return normal_pdf(x);
    case NoiseFamily::cauchy:
        return 1.0 / (std::numbers::pi * (1.0 + x * x));
    case NoiseFamily::student_t: {
        const double log_norm = std::lgamma(0.5 * (dof_ + 1.0)) - std::lgamma(0.5 * dof_) -
                                0.5 * std::log(dof_ * std::numbers::pi);
        return std::exp(log_norm - 0.5 * (dof_ + 1.0) * std::log1p(x * x / dof_));
    }
    case NoiseFamily::laplace:
        return 0.5 * std::exp(-std::abs(x));
    case NoiseFamily::uniform:
        return std::abs(x) <= 1.0 ? 0.5 : 0.0;
    }
    return 0.0;
}

// Lower-tail accurate CDF, only called with x <= 0.
double NoiseModel::std_cdf(double x) const
{
    switch (family_) {
    case NoiseFamily::gaussian:
        return normal_cdf(x);
    case NoiseFamily::cauchy:
        return std::atan2(1.0, -x) / std::numbers::pi;
    case NoiseFamily::student_t: {
        const double denom = dof_ + x * x;
        return 0.5 * beta_inc(0.5 * dof_, 0.5, dof_ / denom, x * x / denom);
    }
    case NoiseFamily::laplace:
        return 0.5 * std::exp(x);
    case NoiseFamily::uniform:
        return x <= -1.0 ? 0.0 : 0.5 * (x + 1.0);
    }
    return 0.0;
}

// Lower-tail quantile, only called with p <= 1/2.
double NoiseModel::std_quantile_lower(double p) const
{
    switch (family_) {
    case NoiseFamily::gaussian:
        return normal_quantile(p);
    case NoiseFamily::cauchy:
        return p == 0.5 ? 0.0 : -1.0 / std::tan(std::numbers::pi * p);
    case NoiseFamily::student_t: {
        if (p == 0.5)
            return 0.0;
        const auto [x, y] = beta_inc_inv(0.5 * dof_, 0.5, 2.0 * p, 1.0 - 2.0 * p);
        return -std::sqrt(dof_ * y / x);
    }
    case NoiseFamily::laplace:
        return std::log(2.0 * p);
    case NoiseFamily::uniform:
        return 2.0 * p - 1.0;
    }
    return 0.0;
}

double NoiseModel::density(double x) const
{
    if (degenerate())
        return x == location_ ? kInf : 0.0;
    return std_density((x - location_) / scale_) / scale_;
}

double NoiseModel::cdf(double x) const
{
    if (degenerate())
        return x >= location_ ? 1.0 : 0.0;
    const double z = (x - location_) / scale_;
    return z <= 0.0 ? std_cdf(z) : 1.0 - std_cdf(-z);
}

double NoiseModel::sf(double x) const
{
    if (degenerate())
        return x >= location_ ? 0.0 : 1.0;
    const double z = (x - location_) / scale_;
    return z >= 0.0 ? std_cdf(-z) : 1.0 - std_cdf(z);
}

double NoiseModel::quantile(double p) const
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("quantile: probability outside [0, 1]");
    if (degenerate())
        return location_;
    if (p <= 0.5)
        return location_ + scale_ * std_quantile_lower(p);
    return location_ - scale_ * std_quantile_lower(1.0 - p);
}

double NoiseModel::draw(Rng& rng) const
{
    if (degenerate())
        return location_;
    switch (family_) {
    case NoiseFamily::gaussian:
        return location_ + scale_ * rng.normal();
    case NoiseFamily::student_t: {
        // Bailey's polar method.
        double u, v, w;
        do {
            u = 2.0 * rng.uniform() - 1.0;
            v = 2.0 * rng.uniform() - 1.0;
            w = u * u + v * v;
        } while (w >= 1.0 || w == 0.0);
        const double r2 = dof_ * (std::pow(w, -2.0 / dof_) - 1.0);
        return location_ + scale_ * u * std::sqrt(r2 / w);
    }
    case NoiseFamily::cauchy:
    case NoiseFamily::laplace:
    case NoiseFamily::uniform:
        return quantile(rng.uniform());
    }
    return location_;
}

double density_at_zero(const NoiseModel& model) { return model.density(0.0); }

Eigen::VectorXd sample_noise(const NoiseModel& model, std::size_t count, std::uint64_t seed)
{
    if (count == 0)
        throw std::invalid_argument("sample_noise: count must be positive");
    Rng rng(seed);
    Eigen::VectorXd out(static_cast<Eigen::Index>(count));
    for (auto& v : out)
        v = model.draw(rng);
    return out;
}

double absolute_moment(const NoiseModel& model, double power)
{
    if (!(power > 0.0))
        throw std::invalid_argument("absolute_moment: power must be positive");
    if (model.degenerate())
        return std::pow(std::abs(model.location()), power);
    if (model.family() == NoiseFamily::cauchy && power >= 1.0)
        return kInf;
    if (model.family() == NoiseFamily::student_t && power >= model.dof())
        return kInf;

    // E|X|^s = int_0^1 |Q(u)|^s du, split at the median so that the only
    // singular endpoint is u = 0 and the upper half uses Q(1 - v) = 2 loc - Q(v).
    const double loc = model.location();
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto lower = [&](double u) { return std::pow(std::abs(model.quantile(u)), power); };
    auto upper = [&](double v) { return std::pow(std::abs(2.0 * loc - model.quantile(v)), power); };
    return integrator.integrate(lower, 0.0, 0.5, 1e-12) + integrator.integrate(upper, 0.0, 0.5, 1e-12);
}

MembershipReport family_membership(const NoiseModel& model, const MembershipTolerances& tol)
{
    if (!(tol.eps1 > 0.0 && tol.eps1 < 1.0) || !(tol.eps2 > 0.0) || !(tol.eps3 > 0.0) ||
        !(tol.eps4 > 0.0))
        throw std::invalid_argument("family_membership: tolerances must be positive and eps1 < 1");

    MembershipReport report;
    constexpr double exact_tol = 1e-12;

    {
        const double c0 = model.cdf(0.0);
        auto& r = report.median_zero;
        r.value = c0;
        r.margin = exact_tol - std::abs(c0 - 0.5);
        r.pass = r.margin >= 0.0;
    }

    const double h0 = model.density(0.0);
    {
        auto& r = report.density_bounds;
        r.value = h0;
        r.margin = std::isfinite(h0) ? std::min(h0 - tol.eps1, 1.0 / tol.eps1 - h0) : -kInf;
        r.pass = r.margin >= 0.0;
    }

    {
        constexpr int points = 2000;
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
            const double x = -tol.eps2 + 2.0 * tol.eps2 * (i + 0.5) / points;
            const double ratio = std::abs(model.density(x) - h0) * tol.eps1 / (x * x);
            worst = std::isnan(ratio) ? kInf : std::max(worst, ratio);
        }
        auto& r = report.local_quadratic;
        r.value = worst;
        r.margin = 1.0 - worst;
        r.pass = r.margin >= 0.0;
    }

    {
        auto& r = report.fractional_moment;
        r.value = absolute_moment(model, tol.eps3);
        r.margin = tol.eps4 - r.value;
        r.pass = r.margin > 0.0;
    }

    {
        constexpr int points = 1000;
        const double reach = 10.0 * std::max(model.scale(), 1.0);
        double worst = 0.0;
        for (int i = 1; i <= points; ++i) {
            const double x = reach * i / points;
            const double a = model.density(x);
            const double b = model.density(-x);
            const double diff = (std::isinf(a) || std::isinf(b)) ? (a == b ? 0.0 : kInf) : std::abs(a - b);
            worst = std::max(worst, diff);
        }
        auto& r = report.symmetry;
        r.value = worst;
        r.margin = exact_tol - worst;
        r.pass = r.margin >= 0.0;
    }

    {
        constexpr int points = 1001;
        constexpr double step = 1e-4;
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
            const double x = -tol.eps3 + 2.0 * tol.eps3 * i / (points - 1);
            const double d3 = (model.density(x + 2 * step) - 2 * model.density(x + step) +
                               2 * model.density(x - step) - model.density(x - 2 * step)) /
                              (2 * step * step * step);
            worst = std::isfinite(d3) ? std::max(worst, std::abs(d3)) : kInf;
        }
        auto& r = report.third_derivative;
        r.value = worst;
        r.margin = tol.eps4 - worst;
        r.pass = r.margin >= 0.0;
    }

    return report;
}

}  // namespace robwav
