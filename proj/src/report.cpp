#include "robwav/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "robwav/svg_plot.hpp"
#include "robwav/test_signals.hpp"

namespace robwav {

namespace fs = std::filesystem;

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> index_axis(std::size_t count)
{
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i)
        x[i] = static_cast<double>(i + 1);
    return x;
}

std::vector<double> design_axis(std::size_t n)
{
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    return x;
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

std::string format_double(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string risk_table_csv(const RiskTable& table)
{
    std::ostringstream out;
    out << "n,reps,risk,stderr\n";
    for (const auto& row : table.rows)
        out << row.n << ',' << row.reps << ',' << format_double(row.risk) << ',' << format_double(row.std_error)
            << '\n';
    return out.str();
}

std::string quadratic_risk_csv(const std::vector<QuadraticRiskRow>& rows)
{
    std::ostringstream out;
    out << "n,reps,q_true,mean_qhat,n_mse,stderr\n";
    for (const auto& row : rows)
        out << row.n << ',' << row.reps << ',' << format_double(row.q_true) << ',' << format_double(row.mean_qhat)
            << ',' << format_double(row.n_mse) << ',' << format_double(row.std_error) << '\n';
    return out.str();
}

std::string coupling_profile_csv(const std::vector<CouplingProfileRow>& rows)
{
    std::ostringstream out;
    out << "m,eps,sup_normalized_error,argmax_z\n";
    for (const auto& row : rows)
        out << row.m << ',' << format_double(row.eps) << ',' << format_double(row.sup_normalized_error) << ','
            << format_double(row.argmax_z) << '\n';
    return out.str();
}

std::string calibration_csv(const std::vector<CalibrationRow>& rows)
{
    std::ostringstream out;
    out << "constant,reps,median_h_inv_sq,expected,ratio\n";
    for (const auto& row : rows)
        out << (row.constant == VarianceConstant::calibrated ? "calibrated" : "literal") << ',' << row.reps << ','
            << format_double(row.median_h_inv_sq) << ',' << format_double(row.expected) << ','
            << format_double(row.ratio) << '\n';
    return out.str();
}

void write_text_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<fs::path> emit_report(const RiskTable& table, const fs::path& out_dir)
{
    ensure_dir(out_dir);
    std::vector<fs::path> written;

    written.push_back(out_dir / "risk.csv");
    write_text_file(written.back(), risk_table_csv(table));

    if (!table.rows.empty()) {
        Series risk{{}, {}, SeriesStyle::line, "#1f4e79", "risk"};
        for (const auto& row : table.rows) {
            risk.x.push_back(static_cast<double>(row.n));
            risk.y.push_back(row.risk);
        }
        Series points = risk;
        points.style = SeriesStyle::dots;
        points.label.clear();
        Panel panel{"Risk vs sample size", {risk, points}, true, true, "n", "risk"};
        written.push_back(out_dir / "risk_loglog.svg");
        write_text_file(written.back(), render_svg({panel}));
    }

    if (table.example) {
        const auto& ex = *table.example;
        Panel panel{"Fit at n = " + std::to_string(ex.n),
                    {{to_std(ex.grid), to_std(ex.truth), SeriesStyle::dashed, "#555555", "f"},
                     {to_std(ex.grid), to_std(ex.fitted), SeriesStyle::line, "#b22222", "estimate"}},
                    false,
                    false,
                    "t",
                    ""};
        written.push_back(out_dir / "fit_overlay.svg");
        write_text_file(written.back(), render_svg({panel}));
    }
    return written;
}

fs::path emit_figure(const FigureSpec& spec, const fs::path& out_dir)
{
    if (spec.figure != 1 && spec.figure != 2)
        throw std::invalid_argument("emit_figure: figure must be 1 or 2");
    ensure_dir(out_dir);

    const auto signal = sample_signal(spec.signal_id, spec.n);
    const Eigen::VectorXd y = signal.values + sample_noise(spec.noise, spec.n, spec.seed);
    const auto robust = denoise(y, spec.estimator);
    EstimatorConfig direct_cfg = spec.estimator;
    direct_cfg.m_target = 1;
    const auto direct = denoise(y, direct_cfg);

    const auto t_raw = design_axis(spec.n);
    const auto t_bins = to_std(bin_centers(robust.plan));
    const auto t_direct = to_std(bin_centers(direct.plan));
    std::vector<double> truth_bins;
    for (double t : t_bins)
        truth_bins.push_back(evaluate_signal(spec.signal_id, t));

    // Heavy-tailed samples would flatten the panel; clip the view to the
    // signal range plus a margin.
    const double lo = signal.values.minCoeff();
    const double hi = signal.values.maxCoeff();
    const double margin = 0.5 * (hi - lo) + 1.0;
    std::vector<double> y_view = to_std(y);
    for (auto& v : y_view)
        v = std::clamp(v, lo - margin, hi + margin);

    const std::string noise_name = spec.noise.to_string();
    Panel noisy{"Noisy " + spec.signal_id + " (" + noise_name + "), n = " + std::to_string(spec.n),
                {{t_raw, y_view, SeriesStyle::dots, "#1f4e79", ""}}, false, false, "t", ""};
    Panel direct_panel{"Direct BlockJS on raw data",
                       {{t_direct, to_std(direct.fitted_grid), SeriesStyle::line, "#b22222", ""}},
                       false, false, "t", ""};
    Panel robust_panel{"Robust estimate, bin size " + std::to_string(robust.plan.bin_size),
                       {{t_bins, truth_bins, SeriesStyle::dashed, "#555555", "f"},
                        {t_bins, to_std(robust.fitted_grid), SeriesStyle::line, "#b22222", "estimate"}},
                       false, false, "t", ""};

    std::vector<Panel> panels;
    int columns = 3;
    if (spec.figure == 1) {
        panels = {noisy, direct_panel, robust_panel};
    } else {
        columns = 2;
        const auto coeff_axis = index_axis(robust.plan.bins);
        Panel medians{"Bin medians, m = " + std::to_string(robust.plan.bin_size),
                      {{t_bins, to_std(robust.medians), SeriesStyle::dots, "#1f4e79", ""}}, false, false, "t", ""};
        Panel before{"DWT coefficients of the medians",
                     {{coeff_axis, to_std(robust.pyramid_before.flatten()), SeriesStyle::stems, "#1f4e79", ""}},
                     false, false, "index", ""};
        Panel after{"Block thresholded coefficients",
                    {{coeff_axis, to_std(robust.pyramid_after.flatten()), SeriesStyle::stems, "#1f4e79", ""}},
                    false, false, "index", ""};
        panels = {noisy, medians, before, after, robust_panel, direct_panel};
    }
    const fs::path path = out_dir / ("figure" + std::to_string(spec.figure) + ".svg");
    write_text_file(path, render_svg(panels, columns));
    return path;
}

}  // namespace robwav
