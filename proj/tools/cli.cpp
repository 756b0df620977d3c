#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "robwav/block_shrinkage.hpp"
#include "robwav/experiment.hpp"
#include "robwav/median_coupling.hpp"
#include "robwav/noise_models.hpp"
#include "robwav/quadratic_functional.hpp"
#include "robwav/report.hpp"
#include "robwav/test_signals.hpp"

namespace robwav::cli {

namespace fs = std::filesystem;

namespace {

const CLI::Validator noise_spec(
    [](std::string& text) -> std::string {
        try {
            NoiseModel::parse(text);
        } catch (const std::exception& e) {
            return e.what();
        }
        return {};
    },
    "NOISE", "noise model");

const CLI::Validator signal_spec(
    [](std::string& text) -> std::string {
        try {
            evaluate_signal(text, 0.5);
        } catch (const std::exception& e) {
            return e.what();
        }
        return {};
    },
    "SIGNAL", "signal id");

const CLI::Validator odd_bin_size(
    [](std::string& text) -> std::string {
        int m = 0;
        std::istringstream in(text);
        if (!(in >> m) || m < 3 || m % 2 == 0)
            return "bin size must be an odd integer >= 3, got " + text;
        return {};
    },
    "ODD>=3", "odd bin size");

struct EstimatorFlags {
    std::size_t m = 8;
    std::string filter = "d8";
    int j0 = 3;
    int block = 0;
    std::optional<double> cutoff;
    std::optional<double> sigma2;
    std::string constant = "calibrated";
    std::optional<double> lambda;

    void add(CLI::App& app)
    {
        app.add_option("--m", m, "target bin size m (1 disables binning)")->check(CLI::PositiveNumber);
        app.add_option("--filter", filter, "wavelet filter")->check(CLI::IsMember({"haar", "d8", "d16"}));
        app.add_option("--j0", j0, "primary resolution level")->check(CLI::NonNegativeNumber);
        app.add_option("--block", block, "block length, 0 for the largest power of two <= ln n")
            ->check(CLI::NonNegativeNumber);
        app.add_option("--cutoff", cutoff, "exponent b of the finest-level cutoff T / ln^(1+b) n")
            ->default_str("none (all levels)")
            ->check(CLI::NonNegativeNumber);
        app.add_option("--sigma", sigma2, "known sigma_n^2 instead of the median-pair estimate")
            ->default_str("estimated")
            ->check(CLI::NonNegativeNumber);
        app.add_option("--constant", constant, "pair-difference constant: calibrated (4m/T) or literal (8m/T)")
            ->check(CLI::IsMember({"calibrated", "literal"}));
        app.add_option("--lambda", lambda, "James-Stein threshold constant")
            ->default_str("solved (4.50524)")
            ->check(CLI::PositiveNumber);
    }

    EstimatorConfig build() const
    {
        EstimatorConfig cfg;
        cfg.m_target = m;
        cfg.filter = filter_by_name(filter);
        cfg.j0 = j0;
        cfg.block = block == 0 ? BlockLengthRule::automatic() : BlockLengthRule::fixed_length(block);
        if (cutoff)
            cfg.cutoff = LevelCutoffRule::log_cutoff(*cutoff);
        if (sigma2)
            cfg.sigma = SigmaRule::known(*sigma2);
        cfg.constant = constant == "literal" ? VarianceConstant::literal : VarianceConstant::calibrated;
        if (lambda)
            cfg.lambda_star = *lambda;
        return cfg;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Applies `key = value` lines (optionally under a [<subcommand>] header) to
// options the command line left unset, so flags win over the file.
void apply_spec_file(CLI::App& sub, const std::string& path)
{
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::FileError&) {
        throw UsageError("--spec: cannot read '" + path + "'");
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--")
            continue;  // section markers
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub.get_name()))
            throw UsageError("--spec: unknown section '" + item.fullname() + "' in '" + path + "'");
        CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
        if (opt == nullptr || item.name == "spec")
            throw UsageError("--spec: unknown key '" + item.name + "' in '" + path + "'");
        if (opt->count() > 0)
            continue;
        opt->add_result(item.inputs);
        try {
            opt->run_callback();
        } catch (const CLI::ParseError& e) {
            throw UsageError(std::string("--spec: ") + e.what());
        }
    }
}

// Effective settings: given values (flags or spec file), otherwise defaults.
void echo_config(const CLI::App& sub, const fs::path& dir)
{
    std::ostringstream text;
    text << "[" << sub.get_name() << "]\n";
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "spec")
            continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results())
                value += (value.empty() ? "" : ",") + r;
        } else {
            value = opt->get_default_str();
        }
        text << name << " = " << value << "\n";
    }
    fs::create_directories(dir);
    write_text_file(dir / "config.echo", text.str());
}

LossMode parse_mode(const std::string& mode)
{
    if (mode == "pointwise")
        return LossMode::pointwise;
    if (mode == "quadratic")
        return LossMode::quadratic;
    return LossMode::mise;
}

// Bin averages of a raw-grid vector, aligned with the fit grid.
Eigen::VectorXd bin_means(const Eigen::VectorXd& v, const BinPlan& plan)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(plan.bins));
    const auto m = static_cast<Eigen::Index>(plan.bin_size);
    for (Eigen::Index j = 0; j < out.size(); ++j)
        out[j] = v.segment(j * m, m).mean();
    return out;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Robust wavelet regression by median binning", "robwav"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    // denoise
    auto* denoise_cmd = app.add_subcommand("denoise", "fit a robust BlockJS estimate to a CSV column y");
    std::string input;
    std::string denoise_out = "out";
    EstimatorFlags denoise_flags;
    denoise_cmd->add_option("--input", input, "CSV with column y and optional f_true");
    denoise_cmd->add_option("--out", denoise_out, "output directory");
    denoise_flags.add(*denoise_cmd);

    // qfunc
    auto* qfunc_cmd = app.add_subcommand("qfunc", "estimate int f^2, from a CSV or as a Monte Carlo risk table");
    std::string q_input;
    std::string q_out;
    std::string q_signal = "sine";
    std::string q_noise = "gaussian:1";
    std::vector<std::size_t> q_n{1024, 4096, 16384};
    std::size_t q_reps = 500;
    std::uint64_t q_seed = 1;
    unsigned q_threads = 0;
    EstimatorFlags q_flags;
    qfunc_cmd->add_option("--input", q_input, "CSV with column y; omit for the risk table");
    qfunc_cmd->add_option("--out", q_out, "also write qfunc.csv here")->default_str("none (stdout only)");
    qfunc_cmd->add_option("--signal", q_signal, "test signal")->check(signal_spec);
    qfunc_cmd->add_option("--noise", q_noise, "noise model")->check(noise_spec);
    qfunc_cmd->add_option("--n", q_n, "sample sizes")->delimiter(',')->check(CLI::PositiveNumber);
    qfunc_cmd->add_option("--reps", q_reps, "replicates per n")->check(CLI::Range(std::size_t{100}, std::size_t{1} << 40));
    qfunc_cmd->add_option("--seed", q_seed, "random seed");
    qfunc_cmd->add_option("--threads", q_threads, "worker threads, 0 for ROBWAV_THREADS or all cores");
    q_flags.add(*qfunc_cmd);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo risk of the robust estimator");
    std::string s_spec;
    sim_cmd->add_option("--spec,--config", s_spec, "experiment spec file: key = value lines named after these flags")
        ->default_str("none");
    std::string s_signal = "sine";
    std::string s_noise = "gaussian:1";
    std::vector<std::size_t> s_n{1024, 4096, 16384};
    std::size_t s_reps = 100;
    std::uint64_t s_seed = 1;
    std::string s_mode = "mise";
    double s_t0 = 0.5;
    unsigned s_threads = 0;
    std::string s_out = "out";
    int s_figure = 0;
    EstimatorFlags s_flags;
    sim_cmd->add_option("--signal", s_signal, "test signal")->check(signal_spec);
    sim_cmd->add_option("--noise", s_noise, "noise model")->check(noise_spec);
    sim_cmd->add_option("--n", s_n, "sample sizes, increasing")->delimiter(',')->check(CLI::PositiveNumber);
    sim_cmd->add_option("--reps", s_reps, "replicates per n")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", s_seed, "random seed");
    sim_cmd->add_option("--mode", s_mode, "loss")->check(CLI::IsMember({"mise", "pointwise", "quadratic"}));
    sim_cmd->add_option("--t0", s_t0, "evaluation point for pointwise loss")->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--threads", s_threads, "worker threads, 0 for ROBWAV_THREADS or all cores");
    sim_cmd->add_option("--out", s_out, "output directory");
    sim_cmd->add_option("--figure", s_figure, "also draw figure 1 or 2 at the largest n (0: none)")
        ->check(CLI::IsMember({0, 1, 2}));
    s_flags.add(*sim_cmd);

    // couple
    auto* couple_cmd = app.add_subcommand("couple", "normalized quantile-coupling error of the bin median");
    std::string c_noise = "gaussian:1";
    std::vector<int> c_m{9, 33, 129, 513};
    double c_eps = 0.5;
    int c_grid = 2001;
    std::string c_out;
    couple_cmd->add_option("--noise", c_noise, "noise model")->check(noise_spec);
    couple_cmd->add_option("--m", c_m, "odd bin sizes")->delimiter(',')->check(odd_bin_size);
    couple_cmd->add_option("--eps", c_eps, "z range |z| <= eps sqrt(m)")->check(CLI::Range(1e-9, 1.0));
    couple_cmd->add_option("--grid", c_grid, "grid points in z")->check(CLI::Range(2, 10000000));
    couple_cmd->add_option("--out", c_out, "also write coupling.csv here")->default_str("none (stdout only)");

    // caldoc
    auto* cal_cmd = app.add_subcommand("caldoc", "calibration of the pair-difference noise estimate on pure noise");
    std::string k_noise = "gaussian:1";
    std::size_t k_n = 16384;
    std::size_t k_m = 8;
    std::size_t k_reps = 200;
    std::uint64_t k_seed = 1;
    unsigned k_threads = 0;
    std::string k_out;
    cal_cmd->add_option("--noise", k_noise, "noise model")->check(noise_spec);
    cal_cmd->add_option("--n", k_n, "sample size")->check(CLI::PositiveNumber);
    cal_cmd->add_option("--m", k_m, "target bin size")->check(CLI::PositiveNumber);
    cal_cmd->add_option("--reps", k_reps, "replicates")->check(CLI::PositiveNumber);
    cal_cmd->add_option("--seed", k_seed, "random seed");
    cal_cmd->add_option("--threads", k_threads, "worker threads, 0 for ROBWAV_THREADS or all cores");
    cal_cmd->add_option("--out", k_out, "also write calibration.csv here")->default_str("none (stdout only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (denoise_cmd->parsed()) {
            if (input.empty())
                throw UsageError("--input is required");
            std::optional<Eigen::VectorXd> truth;
            const Eigen::VectorXd y = load_signal_csv(input, &truth);
            const auto fit = denoise(y, denoise_flags.build());
            const auto grid = bin_centers(fit.plan);
            std::optional<Eigen::VectorXd> truth_bins;
            if (truth)
                truth_bins = bin_means(truth->head(static_cast<Eigen::Index>(fit.plan.usable_n)), fit.plan);

            std::ostringstream csv;
            csv << (truth_bins ? "t,fit,f_true\n" : "t,fit\n");
            for (Eigen::Index i = 0; i < grid.size(); ++i) {
                csv << format_double(grid[i]) << ',' << format_double(fit.fitted_grid[i]);
                if (truth_bins)
                    csv << ',' << format_double((*truth_bins)[i]);
                csv << '\n';
            }
            echo_config(*denoise_cmd, denoise_out);
            write_text_file(fs::path(denoise_out) / "fit.csv", csv.str());

            out << "bins=" << fit.plan.bins << " bin_size=" << fit.plan.bin_size
                << " sigma2=" << format_double(fit.sigma2_used) << " block_length=" << fit.block_length
                << " jstar=" << fit.jstar << '\n';
            if (truth_bins)
                out << "mise=" << format_double((fit.fitted_grid - *truth_bins).squaredNorm() / grid.size())
                    << '\n';
            return 0;
        }

        if (qfunc_cmd->parsed()) {
            std::string csv;
            std::string name;
            if (!q_input.empty()) {
                const auto r = estimate_quadratic(load_signal_csv(q_input), q_flags.build());
                csv = "q_hat,Jq,sigma2,terms\n" + format_double(r.q_hat) + ',' + std::to_string(r.Jq) + ',' +
                      format_double(r.sigma2_used) + ',' + std::to_string(r.terms_count) + '\n';
                name = "qfunc.csv";
            } else {
                csv = quadratic_risk_csv(quadratic_risk(NoiseModel::parse(q_noise), q_signal, q_n, q_reps, q_seed,
                                                        q_flags.build(), q_threads));
                name = "qfunc_risk.csv";
            }
            out << csv;
            if (!q_out.empty()) {
                echo_config(*qfunc_cmd, q_out);
                write_text_file(fs::path(q_out) / name, csv);
            }
            return 0;
        }

        if (sim_cmd->parsed()) {
            if (!s_spec.empty())
                apply_spec_file(*sim_cmd, s_spec);
            ExperimentSpec spec;
            spec.signal_id = s_signal;
            spec.noise = NoiseModel::parse(s_noise);
            spec.n_list = s_n;
            spec.reps = s_reps;
            spec.estimator = s_flags.build();
            spec.seed = s_seed;
            spec.mode = parse_mode(s_mode);
            spec.t0 = s_t0;
            spec.threads = s_threads;
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto table = run_experiment(spec);
            echo_config(*sim_cmd, s_out);
            emit_report(table, s_out);
            if (s_figure != 0) {
                FigureSpec fig;
                fig.figure = s_figure;
                fig.signal_id = spec.signal_id;
                fig.noise = spec.noise;
                fig.n = spec.n_list.back();
                fig.estimator = spec.estimator;
                fig.seed = spec.seed;
                emit_figure(fig, s_out);
            }
            out << risk_table_csv(table);
            return 0;
        }

        if (couple_cmd->parsed()) {
            const auto csv = coupling_profile_csv(coupling_error_profile(NoiseModel::parse(c_noise), c_m, c_eps, c_grid));
            out << csv;
            if (!c_out.empty()) {
                echo_config(*couple_cmd, c_out);
                write_text_file(fs::path(c_out) / "coupling.csv", csv);
            }
            return 0;
        }

        if (cal_cmd->parsed()) {
            const auto csv =
                calibration_csv(variance_calibration(NoiseModel::parse(k_noise), k_n, k_m, k_reps, k_seed, k_threads));
            out << csv;
            if (!k_out.empty()) {
                echo_config(*cal_cmd, k_out);
                write_text_file(fs::path(k_out) / "calibration.csv", csv);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace robwav::cli
