// nyqlab: Nyquist sinc sequence toolkit.
//
// Subcommands generate sequence waveforms and combs, realize time delay as
// per-line phase shifts, run OOK/AWGN TDM BER sweeps, expose the
// fractional-order machinery and search for fractional-order trajectories.
// Every command is deterministic given its flags; outputs are CSV.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nyq/comb.hpp"
#include "nyq/fdonss.hpp"
#include "nyq/frac.hpp"
#include "nyq/gram.hpp"
#include "nyq/io.hpp"
#include "nyq/link.hpp"
#include "nyq/sequence.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// Exit codes: 0 success, 1 error, 2 completed but at least one BER point is
// statistically unreliable (fewer than 10 errors observed).
constexpr int kExitUnreliable = 2;

nyq::SequenceKind parse_kind(const std::string& kind) {
    if (kind == "nss") return nyq::SequenceKind::Nss;
    if (kind == "cnss") return nyq::SequenceKind::Cnss;
    throw CLI::ValidationError("--kind", "unknown sequence kind: " + kind);
}

struct GenOptions {
    std::string kind = "nss";
    int n = 4;
    double df = 10e9;
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t samples = 1001;
    std::string trajectory_path;
    double delta_t = 1.0;
    double rolloff = 0.0;
    std::string out;
};

int run_gen(const GenOptions& opt) {
    const nyq::TimeGrid grid = nyq::linspace_grid(opt.t_start, opt.t_end, opt.samples);
    nyq::Waveform wf;
    if (opt.kind == "raised-cosine") {
        wf = nyq::sample_raised_cosine(opt.delta_t, opt.rolloff, grid);
    } else if (opt.kind == "fdonss") {
        if (opt.trajectory_path.empty())
            throw CLI::ValidationError("--trajectory", "fdonss needs a trajectory CSV");
        const nyq::Trajectory traj = nyq::read_trajectory_csv(opt.trajectory_path);
        const nyq::SequenceSpec spec{opt.n, opt.df, nyq::SequenceKind::Nss};
        wf.grid = grid;
        wf.samples.resize(grid.n_samples);
        for (std::size_t i = 0; i < grid.n_samples; ++i)
            wf.samples[i] = nyq::fdonss_eval(spec, traj, grid.time(i));
    } else {
        const nyq::SequenceSpec spec{opt.n, opt.df, parse_kind(opt.kind)};
        wf = nyq::sample(spec, grid);
    }
    nyq::write_waveform_csv(opt.out, wf);
    return 0;
}

struct DelayOptions {
    std::string kind = "nss";
    int n = 7;
    double df = 10e9;
    int k = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t samples = 1001;
    std::string out_comb;
    std::string out_wave;
};

int run_delay(const DelayOptions& opt) {
    const nyq::SequenceSpec spec{opt.n, opt.df, parse_kind(opt.kind)};
    const double t0 = nyq::branch_delay(spec, opt.k);
    const nyq::FrequencyComb delayed = nyq::apply_delay_as_phase(nyq::nyquist_comb(spec), t0);
    if (!opt.out_comb.empty()) nyq::write_comb_csv(opt.out_comb, delayed);
    if (!opt.out_wave.empty()) {
        const double t_end = opt.t_end > opt.t_start ? opt.t_end
                                                     : opt.t_start + spec.common_period();
        const nyq::TimeGrid grid = nyq::linspace_grid(opt.t_start, t_end, opt.samples);
        nyq::write_waveform_csv(opt.out_wave, nyq::synthesize(delayed, grid));
    }
    return 0;
}

struct BerOptions {
    std::string kind = "nss";
    int n = 4;
    double df = 10e9;
    std::string receiver = "matched";
    double ebn0_start = 0.0;
    double ebn0_stop = 12.0;
    double ebn0_step = 1.0;
    std::uint64_t bits = 1000000;
    std::uint64_t seed = 1;
    std::size_t samples_per_interval = 16;
    bool no_noise = false;
    std::string out;
};

int run_ber(const BerOptions& opt) {
    nyq::LinkConfig config;
    config.spec = nyq::SequenceSpec{opt.n, opt.df, parse_kind(opt.kind)};
    config.samples_per_interval = opt.samples_per_interval;
    if (opt.receiver == "matched")
        config.receiver = nyq::Receiver::Matched;
    else if (opt.receiver == "peak")
        config.receiver = nyq::Receiver::Peak;
    else
        throw CLI::ValidationError("--receiver", "must be matched or peak");
    config.seed = opt.seed;
    config.noise_enabled = !opt.no_noise;

    // Whole multiplexing frames: round the bit budget up to a multiple of N.
    const std::uint64_t n = static_cast<std::uint64_t>(opt.n);
    config.n_bits = (opt.bits + n - 1) / n * n;
    if (config.n_bits != opt.bits)
        std::cerr << "note: bits rounded up to " << config.n_bits
                  << " (whole frames of " << n << ")\n";

    if (!(opt.ebn0_step > 0.0))
        throw CLI::ValidationError("--ebn0-step", "must be > 0");
    std::vector<double> points;
    for (double e = opt.ebn0_start; e <= opt.ebn0_stop + 1e-9; e += opt.ebn0_step)
        points.push_back(e);

    const std::vector<nyq::BerPoint> result = nyq::ber_sweep(config, points);
    nyq::write_ber_csv(opt.out, result);

    bool all_reliable = true;
    for (const auto& p : result) all_reliable = all_reliable && nyq::is_reliable(p);
    return all_reliable ? 0 : kExitUnreliable;
}

struct TrajectoryOptions {
    double t_start = 2.0 * kPi - 10.0;
    double t_end = 2.0 * kPi + 10.0;
    std::size_t samples = 2001;
    std::string convention = "unnorm";
    std::string out;
};

nyq::SincConvention parse_convention(const std::string& conv) {
    if (conv == "norm") return nyq::SincConvention::Normalized;
    if (conv == "unnorm") return nyq::SincConvention::Unnormalized;
    throw CLI::ValidationError("--convention", "must be norm or unnorm");
}

int run_trajectory(const TrajectoryOptions& opt) {
    const nyq::TimeGrid grid = nyq::linspace_grid(opt.t_start, opt.t_end, opt.samples);
    nyq::write_trajectory_csv(opt.out,
                              nyq::sine_to_sinc_trajectory(grid, parse_convention(opt.convention)));
    return 0;
}

struct DimtransOptions {
    double omega = 1.0;
    double amplitude = 1.0;
    double phase = 0.0;
    double alpha_start = 0.0;
    double alpha_stop = 1.5;
    double alpha_step = 0.1;
    double window = 2.0 * kPi;
    std::string out;
};

int run_dimtrans(const DimtransOptions& opt) {
    if (!(opt.alpha_step > 0.0))
        throw CLI::ValidationError("--alpha-step", "must be > 0");
    std::vector<double> alphas;
    for (double a = opt.alpha_start; a <= opt.alpha_stop + 1e-12; a += opt.alpha_step)
        alphas.push_back(a);
    const nyq::Sinusoid tone{opt.omega, opt.amplitude, opt.phase};
    const nyq::DimensionalSpectrum spec = nyq::dimensional_transform(tone, alphas, opt.window);
    nyq::write_spectrum_csv(
        opt.out, spec,
        {"windowed transform over [-T/2, T/2], T = " + nyq::format_full(opt.window),
         "value depends on the window: closed form is "
         "2*A*omega^(alpha-1)*sin(omega*T/2)*cos(phase+pi*alpha/2); "
         "at T = 2*pi/omega every alpha integrates to 0"});
    return 0;
}

struct ResidualOptions {
    int i = 0;
    double half_width = 200.0;
    std::string convention = "unnorm";
    std::size_t samples_per_unit = 64;
};

int run_residual(const ResidualOptions& opt) {
    const nyq::SincConvention conv = parse_convention(opt.convention);
    const double margin = 1.0;
    const double lo = 2.0 * kPi - opt.half_width - margin;
    const double hi = 2.0 * kPi + opt.half_width + margin;
    const std::size_t samples =
        static_cast<std::size_t>((hi - lo) * static_cast<double>(opt.samples_per_unit)) + 2;
    const nyq::Trajectory traj =
        nyq::sine_to_sinc_trajectory(nyq::linspace_grid(lo, hi, samples), conv);
    const double r = nyq::sinc_orthogonality_residual(traj, opt.i, opt.half_width, conv);
    std::cout << nyq::format_full(r) << "\n";
    return 0;
}

struct SolveOptions {
    std::string target = "fdonss";
    int n = 4;
    double df = 1.0;
    int knots = 8;
    std::string init = "zero";
    int max_iter = 100;
    double tol = 1e-9;
    double weight_21_22 = 1.0;
    std::string out_trajectory;
    std::string out_log;
};

int run_solve(const SolveOptions& opt) {
    const nyq::SequenceSpec spec{opt.n, opt.df, nyq::SequenceKind::Nss};
    nyq::SolveTarget target;
    if (opt.target == "fdonss")
        target = nyq::SolveTarget::Fdonss;
    else if (opt.target == "cfdonss")
        target = nyq::SolveTarget::Cfdonss;
    else
        throw CLI::ValidationError("--target", "must be fdonss or cfdonss");

    nyq::Trajectory init;
    if (opt.init == "zero") {
        init = nyq::constant_trajectory(spec, opt.knots, 0.0);
    } else if (opt.init.rfind("const:", 0) == 0) {
        init = nyq::constant_trajectory(spec, opt.knots, std::stod(opt.init.substr(6)));
    } else if (opt.init.rfind("file:", 0) == 0) {
        init = nyq::read_trajectory_csv(opt.init.substr(5));
    } else {
        throw CLI::ValidationError("--init", "must be zero, const:<v> or file:<path>");
    }

    nyq::SolveOptions options;
    options.knots = opt.knots;
    options.max_iter = opt.max_iter;
    options.tol = opt.tol;
    options.weight_21 = opt.weight_21_22;

    try {
        const nyq::SolveResult result = nyq::trajectory_solve(spec, target, init, options);
        if (!opt.out_trajectory.empty())
            nyq::write_trajectory_csv(opt.out_trajectory, result.trajectory);
        if (!opt.out_log.empty()) nyq::write_solver_log_csv(opt.out_log, result.history);
        std::cout << (result.converged ? "converged" : "stopped") << ": "
                  << result.stop_reason << ", residual "
                  << nyq::format_full(result.history.back().residual) << " after "
                  << result.history.back().iteration << " iterations\n";
        return 0;
    } catch (const nyq::SolveDiverged& diverged) {
        if (!opt.out_trajectory.empty())
            nyq::write_trajectory_csv(opt.out_trajectory, diverged.last_iterate);
        std::cerr << "error: " << diverged.what() << " (last iterate preserved)\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nyquist sinc sequence toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "",
                   "flat key=value file mirroring flags ([subcommand] sections); "
                   "command-line flags win on conflict");

    GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a waveform CSV");
    cmd_gen->add_option("--kind", gen.kind, "nss|cnss|raised-cosine|fdonss");
    cmd_gen->add_option("--n", gen.n, "number of spectral lines N");
    cmd_gen->add_option("--df", gen.df, "line spacing in Hz");
    cmd_gen->add_option("--t-start", gen.t_start, "grid start, seconds");
    cmd_gen->add_option("--t-end", gen.t_end, "grid end, seconds")->required();
    cmd_gen->add_option("--samples", gen.samples, "grid points (inclusive ends)");
    cmd_gen->add_option("--trajectory", gen.trajectory_path, "alpha(t) CSV for fdonss");
    cmd_gen->add_option("--delta-t", gen.delta_t, "raised-cosine peak-to-zero duration");
    cmd_gen->add_option("--rolloff", gen.rolloff, "raised-cosine roll-off in [0,1]");
    cmd_gen->add_option("--out", gen.out, "output CSV path")->required();

    DelayOptions delay;
    CLI::App* cmd_delay = app.add_subcommand("delay", "delay a comb via per-line phase shifts");
    cmd_delay->add_option("--kind", delay.kind, "nss|cnss");
    cmd_delay->add_option("--n", delay.n, "number of spectral lines N");
    cmd_delay->add_option("--df", delay.df, "line spacing in Hz");
    cmd_delay->add_option("--k", delay.k, "branch index, delay k/(N df)")->required();
    cmd_delay->add_option("--t-start", delay.t_start, "waveform grid start");
    cmd_delay->add_option("--t-end", delay.t_end, "waveform grid end (default one period)");
    cmd_delay->add_option("--samples", delay.samples, "waveform grid points");
    cmd_delay->add_option("--out-comb", delay.out_comb, "delayed comb CSV");
    cmd_delay->add_option("--out-wave", delay.out_wave, "synthesized waveform CSV");

    BerOptions ber;
    CLI::App* cmd_ber = app.add_subcommand("ber", "OOK/AWGN TDM BER sweep");
    cmd_ber->add_option("--kind", ber.kind, "nss|cnss");
    cmd_ber->add_option("--n", ber.n, "number of spectral lines N");
    cmd_ber->add_option("--df", ber.df, "line spacing in Hz");
    cmd_ber->add_option("--receiver", ber.receiver, "matched|peak");
    cmd_ber->add_option("--ebn0-start", ber.ebn0_start, "first Eb/N0, dB");
    cmd_ber->add_option("--ebn0-stop", ber.ebn0_stop, "last Eb/N0, dB");
    cmd_ber->add_option("--ebn0-step", ber.ebn0_step, "Eb/N0 step, dB");
    cmd_ber->add_option("--bits", ber.bits, "bits per point (rounded up to whole frames)");
    cmd_ber->add_option("--seed", ber.seed, "RNG seed");
    cmd_ber->add_option("--samples-per-interval", ber.samples_per_interval,
                        "samples per branch slot (>= 16)");
    cmd_ber->add_flag("--no-noise", ber.no_noise, "disable the AWGN channel");
    cmd_ber->add_option("--out", ber.out, "output CSV path")->required();

    CLI::App* cmd_fracdim = app.add_subcommand("fracdim", "fractional-dimension tools");
    cmd_fracdim->require_subcommand(1);

    TrajectoryOptions traj;
    CLI::App* cmd_traj = cmd_fracdim->add_subcommand("trajectory",
                                                     "sine-to-sinc trajectory alpha(u)");
    cmd_traj->add_option("--t-start", traj.t_start, "grid start (default 2pi-10)");
    cmd_traj->add_option("--t-end", traj.t_end, "grid end (default 2pi+10)");
    cmd_traj->add_option("--samples", traj.samples, "grid points");
    cmd_traj->add_option("--convention", traj.convention, "norm|unnorm sinc");
    cmd_traj->add_option("--out", traj.out, "output CSV path")->required();

    DimtransOptions dim;
    CLI::App* cmd_dim = cmd_fracdim->add_subcommand("dimtrans",
                                                    "windowed dimensional transform of a tone");
    cmd_dim->add_option("--omega", dim.omega, "tone angular frequency, rad/s");
    cmd_dim->add_option("--amplitude", dim.amplitude, "tone amplitude");
    cmd_dim->add_option("--phase", dim.phase, "tone phase, rad");
    cmd_dim->add_option("--alpha-start", dim.alpha_start, "first order");
    cmd_dim->add_option("--alpha-stop", dim.alpha_stop, "last order");
    cmd_dim->add_option("--alpha-step", dim.alpha_step, "order step");
    cmd_dim->add_option("--window", dim.window, "integration window T, seconds");
    cmd_dim->add_option("--out", dim.out, "output CSV path")->required();

    ResidualOptions resid;
    CLI::App* cmd_resid = cmd_fracdim->add_subcommand("residual",
                                                      "sinc-shift orthogonality residual");
    cmd_resid->add_option("--i", resid.i, "integer sinc shift");
    cmd_resid->add_option("--half-width", resid.half_width, "truncation half-width W");
    cmd_resid->add_option("--convention", resid.convention, "norm|unnorm sinc");
    cmd_resid->add_option("--samples-per-unit", resid.samples_per_unit,
                          "trajectory samples per unit time");

    SolveOptions solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "search an alpha(t) trajectory");
    cmd_solve->add_option("--target", solve.target, "fdonss|cfdonss");
    cmd_solve->add_option("--n", solve.n, "number of spectral lines N (even)");
    cmd_solve->add_option("--df", solve.df, "line spacing in Hz");
    cmd_solve->add_option("--knots", solve.knots, "piecewise-linear knots (>= 4)");
    cmd_solve->add_option("--init", solve.init, "zero | const:<v> | file:<path>");
    cmd_solve->add_option("--max-iter", solve.max_iter, "iteration cap");
    cmd_solve->add_option("--tol", solve.tol, "residual norm tolerance");
    cmd_solve->add_option("--weight-21-22", solve.weight_21_22,
                          "weight of the cross block relative to the self block");
    cmd_solve->add_option("--out-trajectory", solve.out_trajectory, "trajectory CSV");
    cmd_solve->add_option("--out-log", solve.out_log, "per-iteration log CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_delay->parsed()) return run_delay(delay);
        if (cmd_ber->parsed()) return run_ber(ber);
        if (cmd_fracdim->parsed()) {
            if (cmd_traj->parsed()) return run_trajectory(traj);
            if (cmd_dim->parsed()) return run_dimtrans(dim);
            if (cmd_resid->parsed()) return run_residual(resid);
        }
        if (cmd_solve->parsed()) return run_solve(solve);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
