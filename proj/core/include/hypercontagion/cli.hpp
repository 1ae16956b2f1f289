#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" map; insertion order irrelevant, keys unique.
using KeyValueMap = std::map<std::string, std::string>;

/// Parses key = value lines. Blank lines and '#' comments are skipped;
/// duplicate keys and lines without '=' are rejected with the source name and
/// line number.
KeyValueMap parse_key_values(std::istream& in, const std::string& source_name);
KeyValueMap parse_config_file(const std::filesystem::path& path);

/// A fully resolved run description: every key of the subcommand's schema is
/// materialized (defaults applied, flags overriding file values) and
/// validated. `resolved` is serialized verbatim into the output manifest.
struct RunConfig {
  std::string subcommand;
  KeyValueMap resolved;

  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  bool get_bool(const std::string& key) const;
};

inline constexpr const char* kSubcommands[] = {"generate", "simulate", "paired",
                                               "experiment", "ode", "activity"};

/// Known config keys for a subcommand, in schema order (drives CLI flag
/// generation).
std::vector<std::string> config_keys(const std::string& subcommand);

/// One-line help text for a key.
std::string config_key_help(const std::string& subcommand, const std::string& key);

/// Merges file and flag values over the subcommand's defaults and validates.
/// Unknown keys, malformed or out-of-range values and missing required keys
/// raise ConfigError naming the key. When neither source sets run.seed the
/// HYPERCONTAGION_SEED environment variable is used as the master seed.
RunConfig resolve_config(const std::string& subcommand, const KeyValueMap& file_values,
                         const KeyValueMap& flag_values);

/// Executes the configured run and persists outputs plus a manifest.json to
/// run.output. Returns the process exit status; on failure, files created by
/// the run are removed and a diagnostic goes to stderr.
int dispatch(const RunConfig& config);

}  // namespace hc
