// Compactly supported orthonormal wavelet filters, shipped as literal tables.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace robwav {

struct WaveletFilter {
    std::string name;
    std::vector<double> lowpass;
    /// Vanishing moments of the mother wavelet.
    int regularity = 1;

    /// Quadrature mirror: g[i] = (-1)^i h[L - 1 - i].
    std::vector<double> highpass() const;

    std::size_t length() const { return lowpass.size(); }
};

WaveletFilter haar();
/// Daubechies, 8 taps, 4 vanishing moments. The default filter.
WaveletFilter daubechies8();
/// Daubechies, 16 taps, 8 vanishing moments.
WaveletFilter daubechies16();

/// "haar", "d8" or "d16". Throws std::invalid_argument otherwise.
WaveletFilter filter_by_name(std::string_view name);

}  // namespace robwav
