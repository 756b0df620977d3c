#include "robwav/wavelet_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace robwav {

std::vector<double> WaveletFilter::highpass() const
{
    const std::size_t n = lowpass.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = (i % 2 == 0 ? 1.0 : -1.0) * lowpass[n - 1 - i];
    return g;
}

WaveletFilter haar()
{
    const double r = 1.0 / std::sqrt(2.0);
    return {"haar", {r, r}, 1};
}

WaveletFilter daubechies8()
{
    return {"d8",
            {0.2303778133088965, 0.7148465705529157, 0.6308807679298589, -0.027983769416859854,
             -0.18703481171909309, 0.030841381835560764, 0.0328830116668852,
             -0.010597401785069032},
            4};
}

WaveletFilter daubechies16()
{
    return {"d16",
            {0.05441584224310401, 0.31287159091429995, 0.6756307362972898, 0.5853546836542067,
             -0.015829105256349306, -0.2840155429615469, 0.0004724845739132828,
             0.12874742662047847, -0.017369301001807547, -0.044088253930794755,
             0.013981027917398282, 0.008746094047405777, -0.004870352993451574,
             -0.00039174037337694705, 0.0006754494064505693, -0.00011747678412476953},
            8};
}

WaveletFilter filter_by_name(std::string_view name)
{
    if (name == "haar")
        return haar();
    if (name == "d8")
        return daubechies8();
    if (name == "d16")
        return daubechies16();
    throw std::invalid_argument("unknown wavelet filter '" + std::string(name) +
                                "' (expected haar, d8 or d16)");
}

}  // namespace robwav
