#include "nyq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nyq {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_waveform_csv(const std::string& path, const Waveform& wf) {
    wf.validate();
    auto out = open_out(path);
    out << "t_seconds,amplitude\n";
    for (std::size_t i = 0; i < wf.samples.size(); ++i)
        out << format_full(wf.grid.time(i)) << ',' << format_full(wf.samples[i]) << '\n';
}

void write_comb_csv(const std::string& path, const FrequencyComb& comb) {
    comb.validate();
    auto out = open_out(path);
    out << "frequency_hz,amplitude,phase_rad\n";
    for (const auto& line : comb.lines)
        out << format_full(line.frequency_hz) << ',' << format_full(line.amplitude) << ','
            << format_full(line.phase_rad) << '\n';
}

void write_ber_csv(const std::string& path, const std::vector<BerPoint>& pts) {
    auto out = open_out(path);
    out << "ebn0_db,bits,errors,ber,reliable\n";
    for (const auto& p : pts)
        out << format_full(p.ebn0_db) << ',' << p.bits << ',' << p.errors << ','
            << format_full(p.ber) << ',' << (is_reliable(p) ? 1 : 0) << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    traj.validate();
    auto out = open_out(path);
    out << "t_seconds,alpha\n";
    for (std::size_t i = 0; i < traj.alpha_samples.size(); ++i)
        out << format_full(traj.grid.time(i)) << ',' << format_full(traj.alpha_samples[i])
            << '\n';
}

void write_solver_log_csv(const std::string& path, const std::vector<IterRecord>& log) {
    auto out = open_out(path);
    out << "iteration,residual,step_norm\n";
    for (const auto& rec : log)
        out << rec.iteration << ',' << format_full(rec.residual) << ','
            << format_full(rec.step_norm) << '\n';
}

void write_spectrum_csv(const std::string& path, const DimensionalSpectrum& spec,
                        const std::vector<std::string>& notes) {
    if (spec.alphas.size() != spec.values.size())
        throw std::invalid_argument("write_spectrum_csv: ragged spectrum");
    auto out = open_out(path);
    for (const auto& note : notes) out << "# " << note << '\n';
    out << "alpha,value\n";
    for (std::size_t i = 0; i < spec.alphas.size(); ++i)
        out << format_full(spec.alphas[i]) << ',' << format_full(spec.values[i]) << '\n';
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    std::vector<double> times, alphas;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // t_seconds,alpha
            continue;
        }
        std::istringstream row(line);
        std::string t_field, a_field;
        if (!std::getline(row, t_field, ',') || !std::getline(row, a_field))
            throw std::runtime_error("trajectory CSV: malformed row: " + line);
        times.push_back(std::stod(t_field));
        alphas.push_back(std::stod(a_field));
    }
    if (times.size() < 2) throw std::runtime_error("trajectory CSV: need at least 2 rows");

    Trajectory traj;
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw std::runtime_error("trajectory CSV: times must increase");
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = times.front() + static_cast<double>(i) * dt;
        if (std::abs(times[i] - expected) > 1e-6 * (std::abs(expected) + dt))
            throw std::runtime_error("trajectory CSV: time grid must be uniform");
    }
    traj.grid = TimeGrid{times.front(), dt, times.size()};
    traj.alpha_samples = std::move(alphas);
    traj.validate();
    return traj;
}

}  // namespace nyq
