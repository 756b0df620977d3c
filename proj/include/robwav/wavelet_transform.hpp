// Periodized orthonormal discrete wavelet transform (Mallat pyramid).
//
// forward() stores T^{-1/2} W x, where W is the orthonormal DWT matrix and
// T = 2^J the input length, so coefficient noise levels come out on the
// per-coefficient scale directly. inverse() undoes both steps.
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "robwav/wavelet_filter.hpp"

namespace robwav {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Coefficients {father at j0; details at j0..J-1}. details[j - j0] has
/// length 2^j.
template <typename Scalar>
struct Pyramid {
    VectorX<Scalar> father;
    std::vector<VectorX<Scalar>> details;
    int j0 = 0;
    int J = 0;
    /// Multiplier applied to W x; 1 for a raw orthonormal pyramid.
    Scalar scale_factor = Scalar(1);

    static Pyramid zeros(int j0, int J, Scalar scale_factor = Scalar(1))
    {
        if (j0 < 0 || j0 >= J)
            throw std::invalid_argument("pyramid: need 0 <= j0 < J");
        Pyramid p;
        p.j0 = j0;
        p.J = J;
        p.scale_factor = scale_factor;
        p.father = VectorX<Scalar>::Zero(Eigen::Index{1} << j0);
        for (int j = j0; j < J; ++j)
            p.details.push_back(VectorX<Scalar>::Zero(Eigen::Index{1} << j));
        return p;
    }

    VectorX<Scalar>& level(int j) { return details.at(static_cast<std::size_t>(j - j0)); }
    const VectorX<Scalar>& level(int j) const { return details.at(static_cast<std::size_t>(j - j0)); }

    Eigen::Index size() const { return Eigen::Index{1} << J; }

    /// Throws std::invalid_argument unless level lengths match j0 and J.
    void validate() const
    {
        if (j0 < 0 || j0 >= J)
            throw std::invalid_argument("pyramid: need 0 <= j0 < J");
        if (father.size() != (Eigen::Index{1} << j0))
            throw std::invalid_argument("pyramid: father length must be 2^j0");
        if (details.size() != static_cast<std::size_t>(J - j0))
            throw std::invalid_argument("pyramid: expected J - j0 detail levels");
        for (int j = j0; j < J; ++j)
            if (level(j).size() != (Eigen::Index{1} << j))
                throw std::invalid_argument("pyramid: level " + std::to_string(j) +
                                            " must have length 2^" + std::to_string(j));
    }

    /// Father block followed by detail levels, coarse to fine.
    VectorX<Scalar> flatten() const
    {
        VectorX<Scalar> out(size());
        out.head(father.size()) = father;
        Eigen::Index offset = father.size();
        for (const auto& d : details) {
            out.segment(offset, d.size()) = d;
            offset += d.size();
        }
        return out;
    }

    Scalar squared_norm() const
    {
        Scalar total = father.squaredNorm();
        for (const auto& d : details)
            total += d.squaredNorm();
        return total;
    }
};

template <typename Scalar>
Pyramid<Scalar> operator*(Scalar c, Pyramid<Scalar> p)
{
    p.father *= c;
    for (auto& d : p.details)
        d *= c;
    return p;
}

namespace detail {

inline int dyadic_level(Eigen::Index n)
{
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("wavelet transform: length " + std::to_string(n) +
                                    " is not a power of two >= 2");
    int J = 0;
    while ((Eigen::Index{1} << J) < n)
        ++J;
    return J;
}

// One analysis step on the first 2*half entries of `a`.
template <typename Scalar>
void analysis_step(VectorX<Scalar>& a, VectorX<Scalar>& detail, Eigen::Index half,
                   const std::vector<double>& h, const std::vector<double>& g)
{
    const Eigen::Index n = 2 * half;
    const auto taps = static_cast<Eigen::Index>(h.size());
    VectorX<Scalar> smooth(half);
    detail.resize(half);
    for (Eigen::Index k = 0; k < half; ++k) {
        Scalar s(0), d(0);
        for (Eigen::Index i = 0; i < taps; ++i) {
            const Scalar v = a[(2 * k + i) % n];
            s += Scalar(h[i]) * v;
            d += Scalar(g[i]) * v;
        }
        smooth[k] = s;
        detail[k] = d;
    }
    a.head(half) = smooth;
}

template <typename Scalar>
VectorX<Scalar> synthesis_step(const VectorX<Scalar>& smooth, const VectorX<Scalar>& detail,
                               const std::vector<double>& h, const std::vector<double>& g)
{
    const Eigen::Index half = smooth.size();
    const Eigen::Index n = 2 * half;
    const auto taps = static_cast<Eigen::Index>(h.size());
    VectorX<Scalar> out = VectorX<Scalar>::Zero(n);
    for (Eigen::Index k = 0; k < half; ++k)
        for (Eigen::Index i = 0; i < taps; ++i)
            out[(2 * k + i) % n] += Scalar(h[i]) * smooth[k] + Scalar(g[i]) * detail[k];
    return out;
}

}  // namespace detail

/// Analysis down to primary level j0. Requires length 2^J and j0 < J.
template <typename Derived>
Pyramid<typename Derived::Scalar> forward(const Eigen::MatrixBase<Derived>& x,
                                          const WaveletFilter& filter, int j0)
{
    using Scalar = typename Derived::Scalar;
    const int J = detail::dyadic_level(x.size());
    if (j0 < 0 || j0 >= J)
        throw std::invalid_argument("wavelet transform: need 0 <= j0 < J (j0 = " +
                                    std::to_string(j0) + ", J = " + std::to_string(J) + ")");

    const auto g = filter.highpass();
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(x.size()));

    Pyramid<Scalar> p;
    p.j0 = j0;
    p.J = J;
    p.scale_factor = scale;
    p.details.resize(static_cast<std::size_t>(J - j0));

    VectorX<Scalar> a = x;
    for (int j = J - 1; j >= j0; --j) {
        auto& d = p.details[static_cast<std::size_t>(j - j0)];
        detail::analysis_step(a, d, Eigen::Index{1} << j, filter.lowpass, g);
        d *= scale;
    }
    p.father = a.head(Eigen::Index{1} << j0) * scale;
    return p;
}

/// Exact left inverse of forward(): undoes W and the stored scale factor.
template <typename Scalar>
VectorX<Scalar> inverse(const Pyramid<Scalar>& p, const WaveletFilter& filter)
{
    p.validate();
    if (!(p.scale_factor != Scalar(0)))
        throw std::invalid_argument("wavelet inverse: zero scale factor");
    const auto g = filter.highpass();
    const Scalar unscale = Scalar(1) / p.scale_factor;
    VectorX<Scalar> a = p.father * unscale;
    for (int j = p.j0; j < p.J; ++j)
        a = detail::synthesis_step<Scalar>(a, p.level(j) * unscale, filter.lowpass, g);
    return a;
}

/// Grid values T^{1/2} W^{-1} theta of the truncated expansion on the
/// 2^J-point sample grid.
template <typename Scalar>
VectorX<Scalar> synthesize_function(const Pyramid<Scalar>& p, const WaveletFilter& filter,
                                    Eigen::Index grid_size)
{
    if (grid_size != p.size())
        throw std::invalid_argument("synthesize_function: grid size " + std::to_string(grid_size) +
                                    " does not match pyramid size " + std::to_string(p.size()));
    return inverse(p, filter);
}

}  // namespace robwav
