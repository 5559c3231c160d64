#include "nyq/link.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "nyq/prbs.hpp"

namespace nyq {

void LinkConfig::validate() const {
    spec.validate();
    if (samples_per_interval < 16)
        throw std::invalid_argument("LinkConfig: samples_per_interval must be >= 16");
    if (n_bits == 0 || n_bits % static_cast<std::size_t>(spec.n_lines) != 0)
        throw std::invalid_argument("LinkConfig: n_bits must be a positive multiple of N");
}

LinkContext LinkContext::make(const SequenceSpec& spec, std::size_t samples_per_interval,
                              Receiver receiver) {
    spec.validate();
    if (samples_per_interval < 16)
        throw std::invalid_argument("LinkContext: samples_per_interval must be >= 16");

    LinkContext ctx;
    ctx.spec = spec;
    ctx.receiver = receiver;

    const int n = spec.n_lines;
    const double period = spec.common_period();
    const std::size_t slots = static_cast<std::size_t>(
        std::llround(period * spec.delta_f * n));  // branch slots per frame
    const std::size_t n_samples = slots * samples_per_interval;
    ctx.frame_grid = periodic_grid(period, n_samples);
    const double dt = ctx.frame_grid.dt;

    ctx.branch.resize(n);
    ctx.energy.resize(n);
    ctx.clean_statistic.resize(n);
    ctx.peak_index.resize(n);

    CnssPeaks peaks{};
    if (receiver == Receiver::Peak && spec.kind == SequenceKind::Cnss)
        peaks = cnss_peaks(spec);

    for (int k = 0; k < n; ++k) {
        const double shift = static_cast<double>(k) / (n * spec.delta_f);
        auto& tmpl = ctx.branch[k];
        tmpl.resize(n_samples);
        double e = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            tmpl[i] = sequence_value(spec, ctx.frame_grid.time(i), shift);
            e += tmpl[i] * tmpl[i];
        }
        ctx.energy[k] = e * dt;

        if (receiver == Receiver::Peak) {
            std::vector<double> peak_times;
            if (spec.kind == SequenceKind::Nss) {
                peak_times.push_back(shift);
            } else {
                peak_times.push_back(shift + peaks.t_first);
                peak_times.push_back(shift + peaks.t_second);
            }
            auto& idx = ctx.peak_index[k];
            for (double tp : peak_times) {
                double wrapped = std::fmod(tp, period);
                if (wrapped < 0.0) wrapped += period;
                std::size_t i = static_cast<std::size_t>(std::llround(wrapped / dt)) % n_samples;
                const double on_grid = ctx.frame_grid.time(i);
                double dist = std::abs(on_grid - wrapped);
                dist = std::min(dist, std::abs(dist - period));
                if (dist > 0.5 * dt * (1.0 + 1e-9))
                    throw std::runtime_error(
                        "LinkContext: frame grid does not contain a peak time within dt/2");
                if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
            }
            double stat = 0.0;
            for (std::size_t i : idx) stat += tmpl[i];
            ctx.clean_statistic[k] = stat;
        } else {
            ctx.clean_statistic[k] = ctx.energy[k];
        }
    }
    return ctx;
}

Waveform modulate_frame(const std::vector<std::uint8_t>& bits, const LinkContext& ctx) {
    const std::size_t n = ctx.branch.size();
    if (bits.size() != n)
        throw std::invalid_argument("modulate_frame: need exactly N bits");
    Waveform frame{ctx.frame_grid, std::vector<double>(ctx.frame_grid.n_samples, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
        if (!bits[k]) continue;
        const auto& tmpl = ctx.branch[k];
        for (std::size_t i = 0; i < tmpl.size(); ++i) frame.samples[i] += tmpl[i];
    }
    return frame;
}

Waveform modulate_frame(const std::vector<std::uint8_t>& bits, const SequenceSpec& spec,
                        std::size_t samples_per_interval) {
    return modulate_frame(bits, LinkContext::make(spec, samples_per_interval, Receiver::Matched));
}

void awgn(Waveform& signal, double ebn0_db, double eb, NormalRng& rng) {
    signal.validate();
    if (!(eb > 0.0)) throw std::invalid_argument("awgn: eb must be > 0");
    const double n0 = eb * std::pow(10.0, -ebn0_db / 10.0);
    const double sigma = std::sqrt(n0 / (2.0 * signal.grid.dt));
    for (auto& s : signal.samples) s += sigma * rng();
}

std::vector<double> receive_statistics(const Waveform& rx, const LinkContext& ctx) {
    rx.validate();
    if (rx.grid.n_samples != ctx.frame_grid.n_samples || rx.grid.dt != ctx.frame_grid.dt)
        throw std::invalid_argument("receive_statistics: waveform is not one frame");
    const std::size_t n = ctx.branch.size();
    std::vector<double> stats(n, 0.0);
    if (ctx.receiver == Receiver::Matched) {
        const double dt = ctx.frame_grid.dt;
        for (std::size_t k = 0; k < n; ++k) {
            const auto& tmpl = ctx.branch[k];
            double acc = 0.0;
            for (std::size_t i = 0; i < tmpl.size(); ++i) acc += rx.samples[i] * tmpl[i];
            stats[k] = acc * dt;
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            for (std::size_t i : ctx.peak_index[k]) acc += rx.samples[i];
            stats[k] = acc;
        }
    }
    return stats;
}

std::vector<std::uint8_t> receive_frame(const Waveform& rx, const LinkContext& ctx) {
    const std::vector<double> stats = receive_statistics(rx, ctx);
    std::vector<std::uint8_t> bits(stats.size());
    for (std::size_t k = 0; k < stats.size(); ++k)
        bits[k] = stats[k] > 0.5 * ctx.clean_statistic[k] ? 1 : 0;
    return bits;
}

namespace {

BerPoint run_point(const LinkContext& ctx, const LinkConfig& config, double ebn0_db,
                   std::uint64_t point_index) {
    const std::size_t n = static_cast<std::size_t>(config.spec.n_lines);
    const std::size_t frames = config.n_bits / n;

    Prbs13 prbs(static_cast<std::uint16_t>(
        1 + stream_seed(config.seed, 2 * point_index) % Prbs13::kPeriod));
    NormalRng rng(stream_seed(config.seed, 2 * point_index + 1));

    const double eb = ctx.energy[0];
    std::uint64_t errors = 0;
    std::vector<std::uint8_t> bits(n);
    for (std::size_t f = 0; f < frames; ++f) {
        for (auto& b : bits) b = static_cast<std::uint8_t>(prbs.next());
        Waveform frame = modulate_frame(bits, ctx);
        if (config.noise_enabled) awgn(frame, ebn0_db, eb, rng);
        const std::vector<std::uint8_t> decoded = receive_frame(frame, ctx);
        for (std::size_t k = 0; k < n; ++k) errors += decoded[k] != bits[k];
    }

    BerPoint point;
    point.ebn0_db = ebn0_db;
    point.bits = frames * n;
    point.errors = errors;
    point.ber = static_cast<double>(errors) / static_cast<double>(point.bits);
    return point;
}

}  // namespace

std::vector<BerPoint> ber_sweep(const LinkConfig& config, const std::vector<double>& ebn0_db) {
    config.validate();
    const LinkContext ctx =
        LinkContext::make(config.spec, config.samples_per_interval, config.receiver);

    // Each point owns an RNG stream keyed by its index, so any evaluation
    // order (or thread count) yields the same list.
    std::vector<std::future<BerPoint>> jobs;
    jobs.reserve(ebn0_db.size());
    for (std::size_t p = 0; p < ebn0_db.size(); ++p)
        jobs.push_back(std::async(std::launch::async, [&, p] {
            return run_point(ctx, config, ebn0_db[p], p);
        }));

    std::vector<BerPoint> points;
    points.reserve(jobs.size());
    for (auto& job : jobs) points.push_back(job.get());
    return points;
}

}  // namespace nyq
