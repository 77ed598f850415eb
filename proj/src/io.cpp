#include "lpeuler/io.hpp"

#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lpeuler {

static_assert(std::endian::native == std::endian::little, "field files assume a little-endian host");

namespace {

constexpr char kMagic[4] = {'L', 'P', 'F', '1'};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ConfigError("truncated field file");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

StoredField read_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw ConfigError("not an LPF1 field file");
  StoredField f;
  f.n = static_cast<int>(get<std::uint32_t>(is));
  f.l = get<double>(is);
  const int comps = get<std::uint8_t>(is);
  if (f.n <= 0 || comps < 1 || comps > 4 || !(f.l > 0.0)) throw ConfigError("bad field file header");
  for (int c = 0; c < comps; ++c) {
    RealGrid a(f.n, f.n);
    is.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(sizeof(double) * a.size()));
    if (!is) throw ConfigError("truncated field file");
    f.samples.push_back(std::move(a));
  }
  return f;
}

// CSV rows x,y,value[,value2]; n is inferred from the row count and l from the
// sample spacing.
StoredField read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-' && line[0] != '.') {
      continue;  // header
    }
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::logic_error&) {
        throw ConfigError("bad number in field CSV: '" + cell + "'");
      }
    }
    if (vals.size() < 3 || vals.size() > 6) throw ConfigError("field CSV rows need x,y,value[,...]");
    if (!rows.empty() && vals.size() != rows.front().size()) throw ConfigError("ragged field CSV");
    rows.push_back(std::move(vals));
  }
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
  if (n < 2 || static_cast<std::size_t>(n) * n != rows.size()) {
    throw ConfigError("field CSV must hold n*n rows");
  }
  StoredField f;
  f.n = n;
  f.l = rows[1][1] * n;  // second row advances y by one cell
  if (!(f.l > 0.0)) throw ConfigError("cannot infer domain size from field CSV");
  const int comps = static_cast<int>(rows.front().size()) - 2;
  f.samples.assign(comps, RealGrid(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& r = rows[static_cast<std::size_t>(i) * n + j];
      for (int c = 0; c < comps; ++c) f.samples[c](i, j) = r[2 + c];
    }
  }
  return f;
}

}  // namespace

StoredField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open field file " + path);
  if (ends_with(path, ".csv")) return read_csv(is);
  return read_binary(is);
}

void write_field(const std::string& path, const StoredField& f) {
  if (ends_with(path, ".csv")) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write " + path);
    os << "x,y";
    for (std::size_t c = 0; c < f.samples.size(); ++c) os << ",value" << (c ? std::to_string(c + 1) : "");
    os << '\n';
    const double dx = f.l / f.n;
    for (int i = 0; i < f.n; ++i) {
      for (int j = 0; j < f.n; ++j) {
        os << format_double(i * dx) << ',' << format_double(j * dx);
        for (const auto& s : f.samples) os << ',' << format_double(s(i, j));
        os << '\n';
      }
    }
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os.write(kMagic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.n));
  put<double>(os, f.l);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.samples.size()));
  for (const auto& s : f.samples) {
    os.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(sizeof(double) * s.size()));
  }
}

void write_field(const std::string& path, const SpectralField& f) {
  write_field(path, StoredField{f.grid()->n(), f.grid()->l(), f.physical_all()});
}

ConfigMap parse_config(const std::string& text, const std::set<std::string>& allowed) {
  ConfigMap out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!allowed.count(key)) throw ConfigError("unknown config key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap read_config(const std::string& path, const std::set<std::string>& allowed) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str(), allowed);
}

void write_csv_preamble(std::ostream& os, const ConfigMap& resolved) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  os << "# generated " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
  for (const auto& [k, v] : resolved) os << "# " << k << " = " << v << '\n';
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace lpeuler
