// Symmetric error distributions used to corrupt regression samples.
//
// Every model is symmetric about its location (zero unless built with
// shifted()). Heavy-tailed members (Cauchy, Student t with small dof) have no
// mean, so this module deliberately offers no mean routine; downstream code
// works with medians only.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

#include "robwav/rng.hpp"

namespace robwav {

enum class NoiseFamily { gaussian, cauchy, student_t, laplace, uniform };

class NoiseModel {
public:
    static NoiseModel gaussian(double scale);
    static NoiseModel cauchy(double scale);
    static NoiseModel student_t(double dof, double scale);
    static NoiseModel laplace(double scale);
    /// Uniform on [-halfwidth, halfwidth]; halfwidth 0 is the point mass at 0.
    static NoiseModel uniform(double halfwidth);

    /// Parses "gaussian:1.0", "cauchy:1.0", "t:2:1.0", "laplace:1.0",
    /// "uniform:1.0". Throws std::invalid_argument on malformed input.
    static NoiseModel parse(std::string_view text);

    /// Same family translated so that it is symmetric about `location`.
    NoiseModel shifted(double location) const;

    std::string to_string() const;

    NoiseFamily family() const { return family_; }
    double scale() const { return scale_; }
    double dof() const { return dof_; }
    double location() const { return location_; }

    /// Point mass (scale or halfwidth zero).
    bool degenerate() const { return scale_ == 0.0; }

    double density(double x) const;
    double cdf(double x) const;
    /// 1 - cdf(x) without cancellation in the upper tail.
    double sf(double x) const;
    double quantile(double p) const;

    double draw(Rng& rng) const;

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;

private:
    NoiseModel(NoiseFamily family, double scale, double dof);

    // Standardized (location 0, scale 1) pieces.
    double std_density(double x) const;
    double std_cdf(double x) const;
    double std_quantile_lower(double p) const;

    NoiseFamily family_;
    double scale_;
    double dof_;
    double location_ = 0.0;
};

/// h(0), the error density at zero, in closed form.
double density_at_zero(const NoiseModel& model);

/// `count` i.i.d. draws. Identical (model, count, seed) gives bit-identical
/// output.
Eigen::VectorXd sample_noise(const NoiseModel& model, std::size_t count, std::uint64_t seed);

struct MembershipTolerances {
    double eps1 = 0.1;
    double eps2 = 0.5;
    double eps3 = 0.5;
    double eps4 = 10.0;
};

/// One condition of the error family. A positive margin means the condition
/// holds with room to spare; `value` is the quantity that was compared.
struct MembershipCondition {
    bool pass = false;
    double value = 0.0;
    double margin = 0.0;
};

struct MembershipReport {
    MembershipCondition median_zero;        // cdf(0) = 1/2
    MembershipCondition density_bounds;     // eps1 <= h(0) <= 1/eps1
    MembershipCondition local_quadratic;    // |h(x) - h(0)| <= x^2/eps1 on |x| < eps2
    MembershipCondition fractional_moment;  // int |x|^eps3 h < eps4
    MembershipCondition symmetry;           // h(x) = h(-x)
    MembershipCondition third_derivative;   // |h'''| <= eps4 on |x| <= eps3

    bool all() const
    {
        return median_zero.pass && density_bounds.pass && local_quadratic.pass &&
               fractional_moment.pass && symmetry.pass && third_derivative.pass;
    }
};

/// Checks the model against the symmetric error family numerically
/// (quadrature for the moment, central differences with step 1e-4 for h''').
MembershipReport family_membership(const NoiseModel& model, const MembershipTolerances& tol = {});

/// E|X|^power by quadrature over the quantile function. Infinite when the
/// moment does not exist.
double absolute_moment(const NoiseModel& model, double power);

}  // namespace robwav
