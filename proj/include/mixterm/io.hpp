#pragma once

#include <string>

#include "mixterm/mterm.hpp"
#include "mixterm/verify.hpp"

namespace mixterm {

inline constexpr const char* kVersion = "0.1.0";

/// Metadata block embedded in every artifact: tool version, resolved
/// configuration, seed and grid parameters.
struct ArtifactMeta {
  std::string config;  // resolved key=value lines, comma separated
  std::uint64_t seed = 0;
  std::string grid;    // grid parameters in use, e.g. "oversample=4"
};

// Grid samples, flat binary: magic "MXTG", u32 version, u32 dims, u64 sizes[dims],
// then total complex samples as little-endian f64 (re, im) pairs, axis 1 fastest.
void write_grid_binary(const GridFunction& g, const std::string& path);
GridFunction read_grid_binary(const std::string& path);

// Grid samples, CSV: header i1,...,im,re,im; one row per sample.
void write_grid_csv(const GridFunction& g, const std::string& path,
                    const ArtifactMeta& meta);

// Spectrum CSV: header k1,...,km,re,im; '#' comment lines carry the metadata.
void write_spectrum_csv(const Spectrum& s, const std::string& path,
                        const ArtifactMeta& meta);
Spectrum read_spectrum_csv(const std::string& path);

// Approximant: spectrum CSV plus a JSON sidecar describing the plan.
void write_approximant(const Approximant& a, const std::string& prefix,
                       const ArtifactMeta& meta);

std::string rate_report_json(const RateResult& r, const ArtifactMeta& meta);
std::string rate_report_csv(const RateResult& r, const ArtifactMeta& meta);
// Two columns (log2 M, log2 error), gnuplot-ready.
std::string rate_plot_data(const RateResult& r);

const char* scheme_name(SchemeKind k);
const char* regime_name(Regime r);

}  // namespace mixterm
