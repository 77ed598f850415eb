#ifndef LPEULER_IO_HPP_
#define LPEULER_IO_HPP_

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "lpeuler/field.hpp"

namespace lpeuler {

/// Physical samples of a field as stored on disk.
struct StoredField {
  int n = 0;
  double l = 0.0;
  std::vector<RealGrid> samples;  // one n x n array per component
};

/// Reads `.lpf` (binary: "LPF1", u32 n, f64 l, u8 components, then row-major
/// f64 samples per component, little-endian) or `.csv` (x,y,value[,value2]
/// rows, x-major order).
StoredField read_field(const std::string& path);
void write_field(const std::string& path, const SpectralField& f);
void write_field(const std::string& path, const StoredField& f);

/// Flat `key = value` document. Blank lines and lines starting with '#' are
/// skipped. Keys outside `allowed` raise ConfigError.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap read_config(const std::string& path, const std::set<std::string>& allowed);
ConfigMap parse_config(const std::string& text, const std::set<std::string>& allowed);

/// Writes the header comment block of an output CSV: a timestamp line, then
/// one `# key = value` line per resolved setting.
void write_csv_preamble(std::ostream& os, const ConfigMap& resolved);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace lpeuler

#endif  // LPEULER_IO_HPP_
