#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cachesim/harness.hpp"

namespace cachesim {

/// Deterministic, locale-independent rendering of a double ("%.12g").
std::string format_double(double value);

/// Per-trial rows under the fixed header
/// preset,policy,m,n,beta,rho,M,m1,k,delta,trial,seed,matched,unserved,rate
std::string render_trials_csv(const SweepResult& result);

/// Per-point summary rows: same columns plus stderr, trial = -1,
/// seed = master seed, matched/unserved/rate = trial means.
std::string render_summary_csv(const SweepResult& result);

/// Minimal line chart of mean rate vs the sweep axis, one polyline per
/// curve, linear axes, labeled.
std::string render_sweep_svg(const SweepResult& result);

/// Writes content to path, throwing IoError on any failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cachesim
