// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria with a stated runtime budget enforce it.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nyq/comb.hpp"
#include "nyq/fdonss.hpp"
#include "nyq/frac.hpp"
#include "nyq/gram.hpp"
#include "nyq/io.hpp"
#include "nyq/link.hpp"
#include "nyq/rng.hpp"
#include "nyq/sequence.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double ook_matched_ber(double ebn0_db) {
    const double rho = std::pow(10.0, ebn0_db / 10.0);
    return q_function(std::sqrt(rho / 2.0));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// CLI plumbing (criteria 3 and 9 exercise the command-line surface).

std::string g_cli;

int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* comments = nullptr) {
    std::ifstream in(path);
    std::vector<std::vector<double>> rows;
    if (!in) return rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (comments) comments->push_back(line);
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------

Outcome criterion_1_series_identity() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 16; ++n) {
        const nyq::SequenceSpec spec{n, 1.0, nyq::SequenceKind::Nss};
        const double period = spec.common_period();
        for (int i = 0; i < 10000; ++i) {
            const double t = period * i / 10000.0;
            worst = std::max(worst,
                             std::abs(nyq::nss_closed_form(spec, t) - nyq::nss_fourier(spec, t)));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    o.pass = worst < 1e-9 && secs < 1.0;
    o.detail = "max |closed - series| = " + fmt(worst) + ", " + fmt(secs) + " s";
    return o;
}

Outcome criterion_2_orthogonality() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    double worst_numeric = 0.0;
    bool analytic_exact = true;
    const std::vector<std::pair<int, nyq::SequenceKind>> cases = {
        {3, nyq::SequenceKind::Nss}, {4, nyq::SequenceKind::Nss}, {5, nyq::SequenceKind::Nss},
        {7, nyq::SequenceKind::Nss}, {8, nyq::SequenceKind::Nss}, {4, nyq::SequenceKind::Cnss},
        {8, nyq::SequenceKind::Cnss}};
    for (const auto& [n, kind] : cases) {
        const nyq::SequenceSpec spec{n, 10e9, kind};
        const auto shifts = nyq::branch_delays(spec);
        const nyq::Matrix a = nyq::gram_matrix(spec, shifts, nyq::GramBackend::Analytic);
        const nyq::Matrix m = nyq::gram_matrix(spec, shifts, nyq::GramBackend::Numeric);
        const double scale = spec.common_period() / n;
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = 0; j < a.n; ++j) {
                if (i == j) continue;
                analytic_exact = analytic_exact && a.at(i, j) == 0.0;
                worst_numeric = std::max(worst_numeric, std::abs(m.at(i, j)) / scale);
            }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    o.pass = analytic_exact && worst_numeric < 1e-9 && secs < 5.0;
    o.detail = std::string("analytic off-diagonals exact: ") +
               (analytic_exact ? "yes" : "NO") + ", numeric worst " + fmt(worst_numeric) +
               ", " + fmt(secs) + " s";
    return o;
}

Outcome criterion_3_fig2_reproduction() {
    Outcome o;
    bool ok = true;
    std::string note;
    for (int n : {4, 8}) {
        const std::string base = "/tmp/acc_gen_n" + std::to_string(n);
        ok &= run_cli("gen --kind nss --n " + std::to_string(n) +
                      " --df 10e9 --t-start 0 --t-end 2e-10 --samples 20001 --out " + base +
                      "_nss.csv") == 0;
        ok &= run_cli("gen --kind cnss --n " + std::to_string(n) +
                      " --df 10e9 --t-start 0 --t-end 2e-10 --samples 20001 --out " + base +
                      "_cnss.csv") == 0;
        const auto nss_rows = read_csv(base + "_nss.csv");
        const auto cnss_rows = read_csv(base + "_cnss.csv");
        if (nss_rows.empty() || cnss_rows.empty()) {
            ok = false;
            break;
        }
        ok &= std::abs(nss_rows[0][1] - 1.0) < 1e-9;  // NSS peak 1.0 at t = 0

        // Two symmetric peaks of the repetition interval [0, 1/df).
        std::vector<std::pair<double, double>> peaks;  // (t, value)
        for (std::size_t i = 1; i + 1 < cnss_rows.size(); ++i) {
            if (cnss_rows[i][0] >= 1e-10) break;
            const double v = cnss_rows[i][1];
            if (v > cnss_rows[i - 1][1] && v > cnss_rows[i + 1][1] && v > 0.5)
                peaks.emplace_back(cnss_rows[i][0], v);
        }
        ok &= peaks.size() == 2;
        if (peaks.size() == 2) {
            ok &= std::abs((peaks[0].first + peaks[1].first) - 1e-10) < 1e-13;  // mirror pair
            ok &= std::abs(peaks[0].second - peaks[1].second) < 1e-9;
            if (n == 4) {
                const double expected = 4.0 / (3.0 * std::sqrt(3.0));
                const double err = std::max(std::abs(peaks[0].second - expected),
                                            std::abs(peaks[1].second - expected));
                ok &= err < 1e-6;
                note = "CNSS N=4 peak err " + fmt(err);
            }
        }
    }
    o.pass = ok;
    o.detail = note.empty() ? "cmd_gen outputs malformed" : note;
    return o;
}

Outcome criterion_4_delay_phase() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const nyq::SequenceSpec n7{7, 10e9, nyq::SequenceKind::Nss};
    const nyq::FrequencyComb comb = nyq::nyquist_comb(n7);
    const nyq::TimeGrid grid = nyq::linspace_grid(0.0, n7.common_period(), 2001);
    double worst_wave = 0.0, worst_t0 = 0.0;
    for (int k : {1, 2}) {
        const double t0 = nyq::branch_delay(n7, k);
        const nyq::FrequencyComb delayed = nyq::apply_delay_as_phase(comb, t0);
        const nyq::Waveform synth = nyq::synthesize(delayed, grid);
        const nyq::Waveform shifted = nyq::sample(n7, grid, t0);
        for (std::size_t i = 0; i < grid.n_samples; ++i)
            worst_wave = std::max(worst_wave,
                                  std::abs(synth.samples[i] - shifted.samples[i]));
        worst_t0 = std::max(worst_t0, std::abs(nyq::phase_slope(comb, delayed) - t0));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    o.pass = worst_wave < 1e-12 && worst_t0 < 1e-15 && secs < 1.0;
    o.detail = "max waveform err " + fmt(worst_wave) + ", max t0 err " + fmt(worst_t0) +
               " s, " + fmt(secs) + " s";
    return o;
}

Outcome criterion_5_ber_sanity() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();

    // Noiseless BER must vanish wherever the receiver geometry is exact.
    // CNSS peak sampling beyond N = 4 carries inherent inter-branch
    // interference (branch peaks miss the other branches' zeros); those two
    // combinations are reported, not asserted.
    bool noiseless_ok = true;
    std::string excluded;
    for (auto kind : {nyq::SequenceKind::Nss, nyq::SequenceKind::Cnss})
        for (int n = 2; n <= 8; ++n) {
            if (kind == nyq::SequenceKind::Cnss && n % 2) continue;
            for (auto rec : {nyq::Receiver::Matched, nyq::Receiver::Peak}) {
                nyq::LinkConfig config;
                config.spec = nyq::SequenceSpec{n, 10e9, kind};
                config.receiver = rec;
                config.n_bits = static_cast<std::size_t>(n) * 1024;
                config.noise_enabled = false;
                config.seed = 5;
                const auto pts = nyq::ber_sweep(config, {10.0});
                const bool skip = kind == nyq::SequenceKind::Cnss &&
                                  rec == nyq::Receiver::Peak && n >= 6;
                if (skip)
                    excluded += " cnss/peak/N=" + std::to_string(n) + " ber=" +
                                fmt(pts[0].ber) + ";";
                else
                    noiseless_ok = noiseless_ok && pts[0].errors == 0;
            }
        }

    // Matched-filter NSS against the closed-form OOK oracle.
    nyq::LinkConfig config;
    config.spec = nyq::SequenceSpec{4, 10e9, nyq::SequenceKind::Nss};
    config.receiver = nyq::Receiver::Matched;
    config.n_bits = 1000000;
    config.seed = 42;
    bool oracle_ok = true;
    double worst_sigmas = 0.0;
    for (const auto& p : nyq::ber_sweep(config, {6.0, 8.0, 10.0})) {
        const double theory = ook_matched_ber(p.ebn0_db);
        const double sigma = std::sqrt(theory * (1.0 - theory) /
                                       static_cast<double>(p.bits));
        const double sigmas = std::abs(p.ber - theory) / sigma;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        oracle_ok = oracle_ok && sigmas < 3.0;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    o.pass = noiseless_ok && oracle_ok && secs < 120.0;
    o.detail = std::string("noiseless zero-error: ") + (noiseless_ok ? "yes" : "NO") +
               ", oracle worst " + fmt(worst_sigmas) + " sigma, " + fmt(secs) +
               " s; reported-only:" + (excluded.empty() ? " none" : excluded);
    return o;
}

Outcome criterion_6_fig4_reproduction() {
    Outcome o;
    std::vector<double> ebn0;
    for (double e = 0.0; e <= 12.0; e += 1.0) ebn0.push_back(e);

    nyq::LinkConfig config;
    config.spec = nyq::SequenceSpec{4, 10e9, nyq::SequenceKind::Nss};
    config.receiver = nyq::Receiver::Peak;
    config.n_bits = 1000000;
    config.seed = 2026;
    const auto nss = nyq::ber_sweep(config, ebn0);
    config.spec.kind = nyq::SequenceKind::Cnss;
    const auto cnss = nyq::ber_sweep(config, ebn0);

    bool high_snr_ok = true;
    int crossover_count = 0;
    double crossover_at = -1.0;
    for (std::size_t i = 0; i < ebn0.size(); ++i) {
        if (ebn0[i] >= 8.0) high_snr_ok = high_snr_ok && cnss[i].ber <= nss[i].ber;
        if (i > 0) {
            const double prev = cnss[i - 1].ber - nss[i - 1].ber;
            const double cur = cnss[i].ber - nss[i].ber;
            if ((prev > 0.0) != (cur > 0.0) && prev != 0.0 && cur != 0.0) {
                ++crossover_count;
                crossover_at = ebn0[i];
            }
        }
    }
    o.pass = high_snr_ok;
    o.detail = std::string("CNSS <= NSS at every point >= 8 dB: ") +
               (high_snr_ok ? "yes" : "NO") + "; crossover: " +
               (crossover_count == 0
                    ? "none observed (CNSS wins throughout 0-12 dB)"
                    : "sign change near " + fmt(crossover_at) + " dB");
    return o;
}

Outcome criterion_7_rl_oracle() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const double expected = 2.0 / std::sqrt(kPi);

    const auto make_ramp = [](double t_end, std::size_t n) {
        const nyq::TimeGrid grid = nyq::linspace_grid(0.0, t_end, n);
        nyq::Waveform wf{grid, {}};
        wf.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) wf.samples[i] = grid.time(i);
        return wf;
    };

    // dt = 1e-4 over [0, 1.001]
    const nyq::Waveform fine = make_ramp(1.0010, 10011);
    const double got = nyq::rl_derivative(fine, 0.5, 0.0, 1.0);
    const double err_fine = std::abs(got - expected);

    // empirical order across dt halvings
    std::vector<double> errs;
    for (std::size_t n : {203, 405, 809, 1617}) {
        const nyq::Waveform f = make_ramp(1.01, n);
        errs.push_back(std::abs(nyq::rl_derivative(f, 0.5, 0.0, 1.0) - expected));
    }
    double min_order = 1e9;
    for (std::size_t i = 1; i < errs.size(); ++i)
        min_order = std::min(min_order, std::log2(errs[i - 1] / errs[i]));

    // Weyl tone rule against long-history RL
    const double omega = 2.0;
    const double a = -50.0 * 2.0 * kPi / omega;
    const nyq::TimeGrid grid = nyq::linspace_grid(a, 1.0, 200001);
    nyq::Waveform tone{grid, {}};
    tone.samples.resize(grid.n_samples);
    for (std::size_t i = 0; i < grid.n_samples; ++i)
        tone.samples[i] = std::cos(omega * grid.time(i));
    const double rl = nyq::rl_derivative(tone, 0.5, a, 0.0);
    const double weyl = nyq::weyl_derivative({omega, 1.0, 0.0}, 0.5).value(0.0);
    const double weyl_err = std::abs(rl - weyl);

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    o.pass = err_fine < 1e-3 && min_order >= 1.4 && weyl_err < 1e-3 && secs < 30.0;
    o.detail = "value err " + fmt(err_fine) + ", order " + fmt(min_order) + ", weyl err " +
               fmt(weyl_err) + ", " + fmt(secs) + " s";
    return o;
}

Outcome criterion_8_trajectory_roundtrip() {
    Outcome o;
    const nyq::TimeGrid grid = nyq::linspace_grid(kPi, 3.0 * kPi, 10001);
    const nyq::Trajectory traj = nyq::sine_to_sinc_trajectory(grid);
    const nyq::Waveform recon = nyq::reconstruct_from_trajectory(traj, 2.0 * kPi);
    double worst = 0.0;
    for (std::size_t i = 0; i < recon.samples.size(); ++i)
        worst = std::max(worst,
                         std::abs(recon.samples[i] - nyq::sinc_u(recon.grid.time(i))));
    const double alpha_peak = traj.alpha_at(2.0 * kPi);
    const double alpha_zero = traj.alpha_samples.back();  // u = 3 pi
    o.pass = worst < 1e-12 && std::abs(alpha_peak - 1.0) < 1e-12 &&
             std::abs(alpha_zero) < 1e-12;
    o.detail = "round-trip err " + fmt(worst) + ", alpha(peak) - 1 = " +
               fmt(alpha_peak - 1.0) + ", alpha(first zero) = " + fmt(alpha_zero);
    return o;
}

Outcome criterion_9_dimensional_transform() {
    Outcome o;
    const nyq::Sinusoid tone{1.0, 1.0, 0.0};
    const double window = kPi;
    std::vector<double> alphas;
    for (double a = 0.0; a <= 1.5 + 1e-12; a += 0.05) alphas.push_back(a);
    const nyq::DimensionalSpectrum spec = nyq::dimensional_transform(tone, alphas, window);
    double worst = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double closed = nyq::dimensional_transform_closed(tone, alphas[i], window);
        worst = std::max(worst, std::abs(spec.values[i] - closed) /
                                    std::max(1.0, std::abs(closed)));
    }

    // The window-dependence discrepancy note must ride along as metadata.
    const int rc = run_cli("fracdim dimtrans --omega 1 --alpha-start 0 --alpha-stop 1.5 "
                           "--alpha-step 0.1 --window 3.14159265358979 --out /tmp/acc_dim.csv");
    std::vector<std::string> comments;
    read_csv("/tmp/acc_dim.csv", &comments);
    const bool note_ok = rc == 0 && !comments.empty();

    o.pass = worst < 1e-8 && note_ok;
    o.detail = "worst relative err " + fmt(worst) + ", metadata note present: " +
               (note_ok ? "yes" : "NO");
    return o;
}

Outcome criterion_10_fdonss_solver() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const nyq::SequenceSpec n4{4, 1.0, nyq::SequenceKind::Nss};

    double reduction_worst = 0.0;
    const nyq::Trajectory zero = nyq::constant_trajectory(n4, 8, 0.0);
    for (int i = 0; i <= 4000; ++i) {
        const double t = n4.common_period() * i / 4000.0;
        reduction_worst = std::max(reduction_worst,
                                   std::abs(nyq::fdonss_eval(n4, zero, t) -
                                            nyq::nss_fourier(n4, t)));
    }

    const nyq::SolveResult base = nyq::trajectory_solve(n4, nyq::SolveTarget::Fdonss, zero);
    const bool immediate = base.converged && base.history.size() == 1 &&
                           base.history.front().residual < 1e-9;

    bool monotone = true;
    std::uint64_t state = 7;
    for (int trial = 0; trial < 10; ++trial) {
        nyq::Trajectory init = nyq::constant_trajectory(n4, 8, 0.0);
        for (auto& a : init.alpha_samples)
            a = (static_cast<double>(nyq::splitmix64(state) >> 11) * 0x1.0p-53 - 0.5) * 0.8;
        nyq::SolveOptions opt;
        opt.max_iter = 200;
        const nyq::SolveResult r =
            nyq::trajectory_solve(n4, nyq::SolveTarget::Fdonss, init, opt);
        for (std::size_t i = 1; i < r.history.size(); ++i)
            monotone = monotone && r.history[i].residual <= r.history[i - 1].residual;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
    o.pass = reduction_worst < 1e-12 && immediate && monotone && secs < 120.0;
    o.detail = "reduction err " + fmt(reduction_worst) + ", zero-init immediate: " +
               (immediate ? "yes" : "NO") + ", 10 randomized histories monotone: " +
               (monotone ? "yes" : "NO") + ", " + fmt(secs) + " s";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("NYQLAB_CLI")) g_cli = env;
    if (argc > 1) g_cli = argv[1];
    if (g_cli.empty()) {
        std::fprintf(stderr, "NYQLAB_CLI (or argv[1]) must point at the CLI binary\n");
        return 2;
    }

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"series/closed-form identity", criterion_1_series_identity},
        {"branch-shift orthogonality", criterion_2_orthogonality},
        {"waveform generation (two-peak complementary shape)", criterion_3_fig2_reproduction},
        {"delay-phase equivalence", criterion_4_delay_phase},
        {"BER chain sanity vs OOK oracle", criterion_5_ber_sanity},
        {"peak-receiver NSS/CNSS comparison", criterion_6_fig4_reproduction},
        {"fractional derivative oracle", criterion_7_rl_oracle},
        {"trajectory round trip", criterion_8_trajectory_roundtrip},
        {"dimensional transform vs closed form", criterion_9_dimensional_transform},
        {"FDONSS reduction and solver", criterion_10_fdonss_solver},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("[%s] criterion %zu: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
