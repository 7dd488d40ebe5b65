#include "nmslab/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "nmslab/errors.hpp"

namespace nmslab {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<Real> parse_number(const std::string& s) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  Real v = 0;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return v;
}

// One scalar field that may arrive under a _hz or _rad_s key.
struct FreqField {
  const char* base;
  Real SystemParams::*member;
  bool mandatory;
};

}  // namespace

ParsedConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> problems;

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto hash_pos = line.find('#'); hash_pos != std::string::npos)
      line.erase(hash_pos);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) +
                         ": expected `key = value`");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      problems.push_back("line " + std::to_string(lineno) +
                         ": empty key or value");
      continue;
    }
    if (kv.count(key))
      problems.push_back("duplicate key: " + key);
    else
      kv[key] = value;
  }

  ParsedConfig cfg;
  cfg.raw = text;
  cfg.hash = fnv1a64(text);
  SystemParams& p = cfg.params;

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_number = [&](const std::string& key) -> std::optional<Real> {
    const auto v = take(key);
    if (!v) return std::nullopt;
    const auto num = parse_number(*v);
    if (!num) {
      problems.push_back("key " + key + ": not a number: " + *v);
      return std::nullopt;
    }
    return num;
  };

  const struct {
    const char* name;
    Real SystemParams::*member;
    bool mandatory;
  } plain[] = {
      {"wavelength", &SystemParams::wavelength, true},
      {"cavity_length", &SystemParams::cavity_length, true},
      {"mirror_mass", &SystemParams::mirror_mass, true},
      {"quality", &SystemParams::quality, true},
      {"temperature", &SystemParams::temperature, true},
      {"input_power", &SystemParams::input_power, true},
      {"opa_phase", &SystemParams::opa_phase, false},
      {"bs_reflectivity", &SystemParams::bs_reflectivity, true},
  };
  for (const auto& f : plain) {
    if (kv.count(f.name)) {
      if (const auto v = take_number(f.name)) p.*(f.member) = *v;
    } else if (f.mandatory) {
      problems.push_back(std::string("missing mandatory key: ") + f.name);
    }
  }

  const FreqField freq[] = {
      {"cavity_decay", &SystemParams::cavity_decay, true},
      {"mech_freq", &SystemParams::mech_freq, true},
      {"opa_gain", &SystemParams::opa_gain, false},
  };
  for (const auto& f : freq) {
    const std::string hz_key = std::string(f.base) + "_hz";
    const std::string rad_key = std::string(f.base) + "_rad_s";
    const bool has_hz = kv.count(hz_key) > 0;
    const bool has_rad = kv.count(rad_key) > 0;
    if (has_hz && has_rad) {
      problems.push_back(std::string("both ") + hz_key + " and " + rad_key +
                         " given");
      take(hz_key);
      take(rad_key);
    } else if (has_hz) {
      if (const auto v = take_number(hz_key))
        p.*(f.member) = consts::two_pi * *v;
    } else if (has_rad) {
      if (const auto v = take_number(rad_key)) p.*(f.member) = *v;
    } else if (f.mandatory) {
      problems.push_back(std::string("missing mandatory key: ") + f.base +
                         "_hz or " + f.base + "_rad_s");
    }
  }

  {
    const auto sentinel = take("detuning");
    const auto hz = take_number("detuning_hz");
    const auto rad = take_number("detuning_rad_s");
    const int given = (sentinel ? 1 : 0) + (hz ? 1 : 0) + (rad ? 1 : 0);
    if (given > 1)
      problems.push_back("detuning given more than once");
    else if (sentinel && *sentinel != "degenerate")
      problems.push_back("detuning accepts only the sentinel `degenerate`; "
                         "use detuning_hz or detuning_rad_s for numbers");
    else if (hz)
      p.detuning = consts::two_pi * *hz;
    else if (rad)
      p.detuning = *rad;
    // otherwise keep the degenerate default (unset)
  }

  for (const auto& [key, value] : kv)
    problems.push_back("unknown key: " + key);

  if (!problems.empty()) {
    std::string msg = "config error:";
    for (const auto& s : problems) {
      msg += "\n  - ";
      msg += s;
    }
    throw ConfigError(msg);
  }
  return cfg;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_full(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_csv(const std::string& path, std::uint64_t manifest_hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << "# manifest " << hash_hex(manifest_hash) << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw NumericalError("csv row width does not match header");
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace nmslab
