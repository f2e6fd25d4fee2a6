#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stp/dyadic.hpp"
#include "stp/growth.hpp"
#include "stp/spectrum.hpp"

namespace stp {

// 12 significant digits, the stable presentation width of every CSV column.
std::string format_sig12(double x);

// Growth-function grammar: "nlogn" | "n^A" | "2^n^G" (decimal or scientific
// parameters).
GrowthFunction parse_psi(const std::string& spec);
std::string format_psi(const GrowthFunction& psi);

// Digit files: one ASCII line of '0'/'1', newline-terminated.
BinaryWord read_digit_line(std::istream& in);
void write_digit_line(std::ostream& out, const BinaryWord& word);
BinaryWord read_digit_file(const std::string& path);

// spectrum CSV: header alpha,q0,t_q0,dimension; `inf` for the at-infinity
// marker.
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSample>& rows);
std::vector<SpectrumSample> read_spectrum_csv(std::istream& in);

// ratio-trace CSV: header n,log2_S,log2_psi,log_ratio
void write_trace_csv(std::ostream& out, const RatioTrace& trace);
RatioTrace read_trace_csv(std::istream& in);

}  // namespace stp
