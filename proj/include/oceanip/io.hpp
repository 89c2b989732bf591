#pragma once

// Text formats shared by the command-line stages.
//
//   profile  CSV   optional "# k=<value>" line, header "z,q"
//   curve    CSV   optional "# kind=<kind>" line, header "x,value" or "x,re,im";
//                  field slices are written as "r,z,re,im"
//   spectral JSON  {"modes":[{"lambda_sq":..,"t":..},...]}
//
// Doubles are written with 17 significant digits so a write/read cycle is
// bit-exact for finite values.

#include <iosfwd>
#include <string>

#include "oceanip/model.hpp"

namespace oceanip::io {

std::string format_double(double v);

void write_profile(std::ostream& os, const PotentialProfile& p);
PotentialProfile read_profile(std::istream& is);

/// depth is only used for field slices (written as the z column).
void write_curve(std::ostream& os, const SampledCurve& c, double depth = 1.0);
SampledCurve read_curve(std::istream& is);

void write_spectral_data(std::ostream& os, const SpectralData& sd);
SpectralData read_spectral_data(std::istream& is);

PotentialProfile load_profile(const std::string& path);
void save_profile(const std::string& path, const PotentialProfile& p);
SampledCurve load_curve(const std::string& path);
void save_curve(const std::string& path, const SampledCurve& c, double depth = 1.0);
SpectralData load_spectral_data(const std::string& path);
void save_spectral_data(const std::string& path, const SpectralData& sd);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace oceanip::io
