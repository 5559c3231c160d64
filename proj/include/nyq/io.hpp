#pragma once

#include <string>
#include <vector>

#include "nyq/comb.hpp"
#include "nyq/fdonss.hpp"
#include "nyq/frac.hpp"
#include "nyq/grid.hpp"
#include "nyq/link.hpp"

namespace nyq {

/// Full round-trip formatting of a double (17 significant digits).
std::string format_full(double x);

// CSV writers. Headers are fixed per format; numeric fields use format_full.
void write_waveform_csv(const std::string& path, const Waveform& wf);           // t_seconds,amplitude
void write_comb_csv(const std::string& path, const FrequencyComb& comb);        // frequency_hz,amplitude,phase_rad
void write_ber_csv(const std::string& path, const std::vector<BerPoint>& pts);  // ebn0_db,bits,errors,ber,reliable
void write_trajectory_csv(const std::string& path, const Trajectory& traj);     // t_seconds,alpha
void write_solver_log_csv(const std::string& path, const std::vector<IterRecord>& log);  // iteration,residual,step_norm

/// alpha,value spectrum; optional note lines are emitted as leading
/// '#'-prefixed comments before the header.
void write_spectrum_csv(const std::string& path, const DimensionalSpectrum& spec,
                        const std::vector<std::string>& notes = {});

/// Read a t_seconds,alpha trajectory CSV (with header).
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace nyq
