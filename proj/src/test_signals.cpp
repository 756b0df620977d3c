#include "robwav/test_signals.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

namespace robwav {

namespace {

// Constants mirror data/test_signals.json.
constexpr double kSpikesScale = 15.6676;
constexpr std::array<double, 5> kSpikesWeight = {1.0, 2.0, 4.0, 3.0, 1.0};
constexpr std::array<double, 5> kSpikesCenter = {0.23, 0.33, 0.47, 0.69, 0.83};
constexpr std::array<double, 5> kSpikesRate = {500.0, 1000.0, 8000.0, 16000.0, 32000.0};

constexpr std::array<double, 11> kJumpLocation = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                                                  0.44, 0.65, 0.76, 0.78, 0.81};
constexpr std::array<double, 11> kBlocksHeight = {4.0, -5.0, 3.0, -4.0, 5.0, -4.2,
                                                  2.1, 4.3,  -3.1, 2.1, -4.2};
constexpr std::array<double, 11> kBumpsHeight = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                                 2.1, 4.3, 3.1, 5.1, 4.2};
constexpr std::array<double, 11> kBumpsWidth = {0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                                                0.01,  0.01,  0.005, 0.008, 0.005};

double spikes(double t)
{
    double total = 0.0;
    for (std::size_t i = 0; i < kSpikesWeight.size(); ++i) {
        const double d = t - kSpikesCenter[i];
        total += kSpikesWeight[i] * std::exp(-kSpikesRate[i] * d * d);
    }
    return kSpikesScale * total;
}

double doppler(double t)
{
    return std::sqrt(t * (1.0 - t)) * std::sin(2.0 * std::numbers::pi * 1.05 / (t + 0.05));
}

double blocks(double t)
{
    double total = 0.0;
    for (std::size_t i = 0; i < kJumpLocation.size(); ++i) {
        const double d = t - kJumpLocation[i];
        const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        total += kBlocksHeight[i] * 0.5 * (1.0 + sign);
    }
    return total;
}

double bumps(double t)
{
    double total = 0.0;
    for (std::size_t i = 0; i < kJumpLocation.size(); ++i)
        total += kBumpsHeight[i] * std::pow(1.0 + std::abs((t - kJumpLocation[i]) / kBumpsWidth[i]), -4.0);
    return total;
}

double parse_param(std::string_view id, std::string_view text)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("signal '" + std::string(id) + "': bad parameter");
    return value;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            return cells;
        start = pos + 1;
    }
}

}  // namespace

double evaluate_signal(std::string_view signal_id, double t)
{
    const auto colon = signal_id.find(':');
    const auto name = signal_id.substr(0, colon);
    const bool has_param = colon != std::string_view::npos;
    const auto param = has_param ? signal_id.substr(colon + 1) : std::string_view{};

    if (name == "zero" && !has_param)
        return 0.0;
    if (name == "constant" && has_param)
        return parse_param(signal_id, param);
    if (name == "linear" && !has_param)
        return t;
    if (name == "sine") {
        const double freq = has_param ? parse_param(signal_id, param) : 1.0;
        return std::sin(2.0 * std::numbers::pi * freq * t);
    }
    if (!has_param) {
        if (name == "spikes")
            return spikes(t);
        if (name == "doppler")
            return doppler(t);
        if (name == "blocks")
            return blocks(t);
        if (name == "bumps")
            return bumps(t);
    }
    throw std::invalid_argument("unknown signal '" + std::string(signal_id) + "'");
}

SignalGrid sample_signal(std::string_view signal_id, std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("sample_signal: need n >= 2");
    SignalGrid grid;
    grid.n = n;
    grid.signal_id = std::string(signal_id);
    grid.values.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        grid.values[static_cast<Eigen::Index>(i)] =
            evaluate_signal(signal_id, static_cast<double>(i + 1) / static_cast<double>(n));

    const auto name = signal_id.substr(0, signal_id.find(':'));
    if (name == "sine")
        grid.nominal_alpha = static_cast<double>(daubechies8().regularity);
    else if (name == "blocks")
        grid.nominal_alpha = 0.5;
    return grid;
}

double signal_energy(std::string_view signal_id)
{
    auto f2 = [&](double t) {
        const double v = evaluate_signal(signal_id, t);
        return v * v;
    };
    // Split at the jump locations so the integrand is smooth on every piece.
    std::vector<double> knots = {0.0};
    for (double x : kJumpLocation)
        knots.push_back(x);
    knots.push_back(1.0);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f2, knots[i], knots[i + 1],
                                                                              25, 1e-13);
    return total;
}

Eigen::VectorXd load_signal_csv(const std::filesystem::path& path, std::optional<Eigen::VectorXd>* truth)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("'" + path.string() + "': empty file");
    const auto header = split_csv(line);
    std::ptrdiff_t y_col = -1;
    std::ptrdiff_t f_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "y")
            y_col = static_cast<std::ptrdiff_t>(i);
        else if (header[i] == "f_true")
            f_col = static_cast<std::ptrdiff_t>(i);
    }
    if (y_col < 0)
        throw std::runtime_error("'" + path.string() + "': missing column 'y'");

    std::vector<double> ys;
    std::vector<double> fs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        const auto cells = split_csv(line);
        auto read = [&](std::ptrdiff_t col) {
            if (col >= static_cast<std::ptrdiff_t>(cells.size()))
                throw std::runtime_error("'" + path.string() + "' line " + std::to_string(row) +
                                         ": missing value");
            const auto cell = cells[static_cast<std::size_t>(col)];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw std::runtime_error("'" + path.string() + "' line " + std::to_string(row) +
                                         ": bad number '" + std::string(cell) + "'");
            return v;
        };
        ys.push_back(read(y_col));
        if (f_col >= 0)
            fs.push_back(read(f_col));
    }
    if (truth) {
        if (f_col >= 0)
            *truth = Eigen::Map<const Eigen::VectorXd>(fs.data(), static_cast<Eigen::Index>(fs.size()));
        else
            truth->reset();
    }
    return Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
}

}  // namespace robwav
