#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nmslab/params.hpp"

namespace nmslab {

// Parsed key-value config plus the provenance needed by the reproducibility
// chain: raw bytes and their FNV-1a hash, referenced by every emitted file.
struct ParsedConfig {
  SystemParams params;
  std::string raw;
  std::uint64_t hash = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

// Parses `key = value` lines with '#' comments. Accepted keys are the
// SystemParams field names, with the frequency-like fields suffixed by the
// unit: cavity_decay_hz / cavity_decay_rad_s, mech_freq_*, opa_gain_*,
// detuning_* (hz values are multiplied by 2 pi). `detuning = degenerate`
// selects the degenerate detuning; omitting it does the same. opa_gain and
// opa_phase default to 0. Unknown keys, duplicate keys, unparsable values,
// and missing mandatory keys are all collected and reported together in a
// ConfigError.
ParsedConfig parse_config(const std::string& text);

// parse_config over a file's bytes. Throws ConfigError on unreadable files.
ParsedConfig load_config(const std::string& path);

// %.16e: 17 significant digits, enough to round-trip a double exactly.
std::string format_full(Real v);

// CSV with a `# manifest <hash>` provenance comment, a header line, and
// preformatted cells. Rows must match the column count.
void write_csv(const std::string& path, std::uint64_t manifest_hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

void write_text(const std::string& path, const std::string& content);

}  // namespace nmslab
