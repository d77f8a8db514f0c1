// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ldacs/analysis.hpp"
#include "ldacs/filter_design.hpp"

namespace ldacs {

// Coefficient files: one header line
//   # order=<N> interp=<M> kind=<k> bw=<khz>
// then one coefficient per line with 17 significant digits.
void save_coefficients(const std::string& path, const DesignedFilter& f, int bw_khz);
DesignedFilter load_coefficients(const std::string& path, int* bw_khz = nullptr);

// Mask files: `<normalized_freq> <max_level_db>` pairs, '#' comments.
void save_mask(const std::string& path, const SpectralMask& mask);
SpectralMask load_mask(const std::string& path);

// Response CSV: freq_norm,mag_db,phase_rad
void save_response_csv(const std::string& path, std::span<const cplx> response);

// PSD CSV: freq_hz,psd_db
void save_psd_csv(const std::string& path, const PsdEstimate& psd);

// BER CSV: snr_db,ber,ci95,bits
void save_ber_csv(const std::string& path, std::span<const BerPoint> points);

// IQ samples as interleaved float64 (re, im) or CSV.
void save_iq_blob(const std::string& path, std::span<const cplx> samples);
std::vector<cplx> load_iq_blob(const std::string& path);
void save_iq_csv(const std::string& path, std::span<const cplx> samples);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Flat key=value config with [section] headers; keys are stored as
/// "section.key" ("" section for keys before any header). '#' comments.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

std::vector<std::string> split_list(const std::string& s, char sep = ',');

} // namespace ldacs
