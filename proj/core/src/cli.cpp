#include "hypercontagion/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace hc {

namespace {

enum class ValueKind { Int, Uint, Double, Bool, Text, Choice };

struct KeySpec {
  const char* key;
  ValueKind kind;
  bool required;
  const char* default_value;  // nullptr when required or defaulted elsewhere
  double min_value;
  double max_value;
  const char* choices;  // "a|b|c" for Choice
  const char* help;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared key groups ------------------------------------------------------------

constexpr KeySpec kSeed = {"run.seed", ValueKind::Uint, false, nullptr, 0, 0, nullptr,
                           "master seed (fallback: HYPERCONTAGION_SEED, then 1)"};
constexpr KeySpec kOutputRequired = {"run.output", ValueKind::Text, true, nullptr, 0, 0,
                                     nullptr, "output directory"};
constexpr KeySpec kOutputOptional = {"run.output", ValueKind::Text, false, "", 0, 0,
                                     nullptr, "output directory (default: stdout only)"};
constexpr KeySpec kThreads = {"run.threads", ValueKind::Int, false, "0", 0, 4096, nullptr,
                              "worker threads (0 = available parallelism)"};

constexpr KeySpec kNetworkGenerate[] = {
    {"network.kind", ValueKind::Choice, true, nullptr, 0, 0, "complete|er|lattice",
     "network family"},
    {"network.n", ValueKind::Uint, false, "500", 2, 1e7, nullptr,
     "node count (complete, er)"},
    {"network.p", ValueKind::Double, false, "0.1", 0, 1, nullptr,
     "connection probability (er)"},
    {"network.rows", ValueKind::Int, false, "20", 3, 1e5, nullptr, "lattice rows"},
    {"network.cols", ValueKind::Int, false, "25", 3, 1e5, nullptr, "lattice cols"},
    {"network.periodic", ValueKind::Bool, false, "true", 0, 0, nullptr,
     "periodic lattice boundaries"},
    {"network.max_order", ValueKind::Int, false, "0", 0, 16, nullptr,
     "clique-complex lift order (0 = no lift / as loaded)"},
};

constexpr KeySpec kNetworkWithFile[] = {
    {"network.kind", ValueKind::Choice, false, "er", 0, 0, "complete|er|lattice|file",
     "network family"},
    {"network.path", ValueKind::Text, false, "", 0, 0, nullptr,
     "hypergraph file (kind = file)"},
    {"network.n", ValueKind::Uint, false, "500", 2, 1e7, nullptr,
     "node count (complete, er)"},
    {"network.p", ValueKind::Double, false, "0.1", 0, 1, nullptr,
     "connection probability (er)"},
    {"network.rows", ValueKind::Int, false, "20", 3, 1e5, nullptr, "lattice rows"},
    {"network.cols", ValueKind::Int, false, "25", 3, 1e5, nullptr, "lattice cols"},
    {"network.periodic", ValueKind::Bool, false, "true", 0, 0, nullptr,
     "periodic lattice boundaries"},
    {"network.max_order", ValueKind::Int, false, "0", 0, 16, nullptr,
     "clique-complex lift order (0 = default per kind)"},
};

constexpr KeySpec kNetworkExperiment[] = {
    {"network.kind", ValueKind::Choice, false, "er", 0, 0, "er|lattice", "network family"},
    {"network.n", ValueKind::Uint, false, "500", 2, 1e7, nullptr, "node count (er)"},
    {"network.p", ValueKind::Double, false, "0.1", 0, 1, nullptr,
     "connection probability (er)"},
    {"network.rows", ValueKind::Int, false, "20", 3, 1e5, nullptr, "lattice rows"},
    {"network.cols", ValueKind::Int, false, "25", 3, 1e5, nullptr, "lattice cols"},
    {"network.periodic", ValueKind::Bool, false, "true", 0, 0, nullptr,
     "periodic lattice boundaries"},
    {"network.max_order", ValueKind::Int, false, "0", 0, 16, nullptr,
     "clique-complex lift order (0 = default per kind)"},
};

constexpr KeySpec kDisease[] = {
    {"disease.beta", ValueKind::Double, false, "0.05", 0, 1, nullptr,
     "base infection probability per selection"},
    {"disease.mu", ValueKind::Double, false, "0.0001", 0, 1, nullptr,
     "per-iteration recovery probability (I->S)"},
    {"disease.alpha", ValueKind::Double, false, "0", 0, 1, nullptr,
     "per-iteration removal probability (I->R)"},
    {"disease.k_gamma", ValueKind::Double, false, "3", 0, 1e6, nullptr,
     "amplification cap"},
    {"disease.m", ValueKind::Int, false, "50", 1, 1e6, nullptr,
     "iterations per time step"},
};

constexpr KeySpec kScaling[] = {
    {"scaling.variant", ValueKind::Choice, false, "true", 0, 0, "true|scale|form",
     "scaling function driving the dynamics"},
    {"scaling.eta", ValueKind::Double, false, "1", 1e-12, 1e6, nullptr,
     "scale misspecification factor"},
    {"scaling.n", ValueKind::Int, false, "1", 1, 64, nullptr,
     "form misspecification exponent"},
};

constexpr KeySpec kAdaptiveScaling[] = {
    {"adaptive.scaling.variant", ValueKind::Choice, false, "true", 0, 0, "true|scale|form",
     "scaling function assumed inside activity ratios"},
    {"adaptive.scaling.eta", ValueKind::Double, false, "1", 1e-12, 1e6, nullptr,
     "scale misspecification factor for ratios"},
    {"adaptive.scaling.n", ValueKind::Int, false, "1", 1, 64, nullptr,
     "form misspecification exponent for ratios"},
};

constexpr KeySpec kAdaptiveKnobs[] = {
    {"adaptive.tau", ValueKind::Int, false, "5", 1, 1e6, nullptr,
     "moving-average window length"},
    {"adaptive.rho", ValueKind::Double, false, "0.5", 1e-12, kInf, nullptr,
     "adjustment threshold (inf = never adjust)"},
};

constexpr KeySpec kRunCommon[] = {
    {"run.t_steps", ValueKind::Int, false, "700", 1, 1e7, nullptr, "time steps"},
    {"run.init_infected_fraction", ValueKind::Double, false, "0.01", 0, 1, nullptr,
     "initially infected node fraction"},
};

constexpr KeySpec kReplicates = {"run.replicates", ValueKind::Int, false, "0", 0, 1e6,
                                 nullptr,
                                 "replicates (0 = default: lattice 50, er 10, sweep 5)"};

constexpr KeySpec kSweep[] = {
    {"sweep.beta_min", ValueKind::Double, false, "0.004", 1e-12, 1, nullptr,
     "sweep beta lower bound"},
    {"sweep.beta_max", ValueKind::Double, false, "0.08", 1e-12, 1, nullptr,
     "sweep beta upper bound"},
    {"sweep.beta_count", ValueKind::Int, false, "10", 1, 1000, nullptr,
     "sweep beta grid size"},
    {"sweep.mu_min", ValueKind::Double, false, "0.000025", 1e-12, 1, nullptr,
     "sweep mu lower bound"},
    {"sweep.mu_max", ValueKind::Double, false, "0.0005", 1e-12, 1, nullptr,
     "sweep mu upper bound"},
    {"sweep.mu_count", ValueKind::Int, false, "10", 1, 1000, nullptr,
     "sweep mu grid size"},
    {"sweep.mu_mode", ValueKind::Choice, false, "removal", 0, 0, "removal|recovery",
     "whether mu drives I->R (SIR) or I->S (SIS)"},
    {"sweep.t_cap", ValueKind::Int, false, "700", 1, 1e7, nullptr,
     "sweep horizon (runs end early when extinct)"},
};

constexpr KeySpec kMisspec[] = {
    {"misspec.eta_values", ValueKind::Text, false, "0.5,0.8,1.2,1.5,2", 0, 0, nullptr,
     "comma-separated eta cells"},
    {"misspec.n_values", ValueKind::Text, false, "2,3,4,5", 0, 0, nullptr,
     "comma-separated n cells"},
};

constexpr KeySpec kOde[] = {
    {"ode.beta", ValueKind::Double, false, "0.0003", 0, 1e6, nullptr,
     "infection rate per contact pair"},
    {"ode.mu", ValueKind::Double, false, "0.075", 0, 1e6, nullptr, "recovery rate"},
    {"ode.alpha", ValueKind::Double, false, "0.006", 0, 1e6, nullptr, "removal rate"},
    {"ode.n", ValueKind::Uint, false, "500", 1, 1e9, nullptr, "population"},
    {"ode.i0", ValueKind::Double, false, "5", 0, 1e9, nullptr, "initially infected"},
    {"ode.t_end", ValueKind::Double, false, "200", 1e-9, 1e9, nullptr, "end time"},
    {"ode.dt", ValueKind::Double, false, "0.02", 1e-12, 1e9, nullptr, "RK4 step"},
};

void append(std::vector<KeySpec>& out, std::span<const KeySpec> group) {
  out.insert(out.end(), group.begin(), group.end());
}

std::vector<KeySpec> schema_for(const std::string& subcommand) {
  std::vector<KeySpec> keys;
  if (subcommand == "generate") {
    append(keys, kNetworkGenerate);
    keys.push_back(kSeed);
    keys.push_back(kOutputRequired);
  } else if (subcommand == "simulate") {
    append(keys, kNetworkWithFile);
    append(keys, kDisease);
    append(keys, kScaling);
    append(keys, kRunCommon);
    keys.push_back(kSeed);
    keys.push_back(kOutputRequired);
  } else if (subcommand == "paired") {
    append(keys, kNetworkWithFile);
    append(keys, kDisease);
    keys.push_back({"adaptive.enabled", ValueKind::Bool, false, "false", 0, 0, nullptr,
                    "enable the adaptive beta1 controller"});
    append(keys, kAdaptiveKnobs);
    append(keys, kAdaptiveScaling);
    append(keys, kRunCommon);
    keys.push_back(kReplicates);
    keys.push_back(kSeed);
    keys.push_back(kThreads);
    keys.push_back(kOutputRequired);
  } else if (subcommand == "experiment") {
    keys.push_back({"experiment.family", ValueKind::Choice, true, nullptr, 0, 0,
                    "fig2|switch|adaptive|misspec|sweep", "experiment family"});
    append(keys, kNetworkExperiment);
    append(keys, kDisease);
    append(keys, kAdaptiveKnobs);
    append(keys, kAdaptiveScaling);
    keys.push_back({"switch.t_switch", ValueKind::Int, false, "350", 0, 1e7, nullptr,
                    "step at which the pairwise system gains higher-order edges"});
    append(keys, kMisspec);
    append(keys, kSweep);
    append(keys, kRunCommon);
    keys.push_back(kReplicates);
    keys.push_back(kSeed);
    keys.push_back(kThreads);
    keys.push_back(kOutputRequired);
  } else if (subcommand == "ode") {
    append(keys, kOde);
    keys.push_back(kSeed);
    keys.push_back(kOutputRequired);
  } else if (subcommand == "activity") {
    append(keys, kNetworkWithFile);
    keys.push_back({"disease.beta", ValueKind::Double, false, "0.05", 0, 1, nullptr,
                    "base infection probability"});
    keys.push_back({"disease.k_gamma", ValueKind::Double, false, "3", 0, 1e6, nullptr,
                    "amplification cap"});
    append(keys, kScaling);
    keys.push_back({"activity.k", ValueKind::Int, false, "0", 0, 16, nullptr,
                    "max order K (0 = hypergraph's max order)"});
    keys.push_back(kSeed);
    keys.push_back(kOutputOptional);
  } else {
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  }
  return keys;
}

bool parse_int64(const std::string& text, std::int64_t& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc{} && result.ptr == end;
}

bool parse_uint64(const std::string& text, std::uint64_t& out) {
  if (!text.empty() && text[0] == '-') return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc{} && result.ptr == end;
}

bool parse_double(const std::string& text, double& out) {
  if (text == "inf") {
    out = kInf;
    return true;
  }
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc{} && result.ptr == end;
}

bool choice_contains(const char* choices, const std::string& value) {
  std::istringstream ss(choices);
  std::string option;
  while (std::getline(ss, option, '|'))
    if (option == value) return true;
  return false;
}

void validate_value(const KeySpec& spec, const std::string& value) {
  const std::string where = "config key '" + std::string(spec.key) + "'";
  switch (spec.kind) {
    case ValueKind::Int: {
      std::int64_t parsed = 0;
      if (!parse_int64(value, parsed))
        throw ConfigError(where + ": '" + value + "' is not an integer");
      if (parsed < spec.min_value || parsed > spec.max_value)
        throw ConfigError(where + ": value " + value + " out of range [" +
                          std::to_string(static_cast<std::int64_t>(spec.min_value)) + ", " +
                          std::to_string(static_cast<std::int64_t>(spec.max_value)) + "]");
      break;
    }
    case ValueKind::Uint: {
      std::uint64_t parsed = 0;
      if (!parse_uint64(value, parsed))
        throw ConfigError(where + ": '" + value + "' is not a non-negative integer");
      if (spec.min_value > 0 && parsed < spec.min_value)
        throw ConfigError(where + ": value " + value + " below minimum " +
                          std::to_string(static_cast<std::uint64_t>(spec.min_value)));
      if (spec.max_value > 0 && static_cast<double>(parsed) > spec.max_value)
        throw ConfigError(where + ": value " + value + " above maximum");
      break;
    }
    case ValueKind::Double: {
      double parsed = 0;
      if (!parse_double(value, parsed))
        throw ConfigError(where + ": '" + value + "' is not a number");
      if (!(parsed >= spec.min_value) || !(parsed <= spec.max_value)) {
        std::ostringstream msg;
        msg << where << ": value " << value << " out of range [" << spec.min_value << ", "
            << spec.max_value << "]";
        throw ConfigError(msg.str());
      }
      break;
    }
    case ValueKind::Bool:
      if (value != "true" && value != "false" && value != "1" && value != "0")
        throw ConfigError(where + ": '" + value + "' is not a boolean (true|false|1|0)");
      break;
    case ValueKind::Text:
      break;
    case ValueKind::Choice:
      if (!choice_contains(spec.choices, value))
        throw ConfigError(where + ": '" + value + "' is not one of " + spec.choices);
      break;
  }
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

}  // namespace

KeyValueMap parse_key_values(std::istream& in, const std::string& source_name) {
  KeyValueMap values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source_name + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": empty key");
    if (values.contains(key))
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    values[key] = value;
  }
  return values;
}

KeyValueMap parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  return parse_key_values(in, path.string());
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = resolved.find(key);
  if (it == resolved.end())
    throw ConfigError("internal: unresolved config key '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const {
  double value = 0;
  if (!parse_double(get(key), value))
    throw ConfigError("config key '" + key + "' is not a number");
  return value;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  std::int64_t value = 0;
  if (!parse_int64(get(key), value))
    throw ConfigError("config key '" + key + "' is not an integer");
  return value;
}

std::uint64_t RunConfig::get_uint(const std::string& key) const {
  std::uint64_t value = 0;
  if (!parse_uint64(get(key), value))
    throw ConfigError("config key '" + key + "' is not a non-negative integer");
  return value;
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string& value = get(key);
  return value == "true" || value == "1";
}

std::vector<std::string> config_keys(const std::string& subcommand) {
  std::vector<std::string> keys;
  for (const auto& spec : schema_for(subcommand)) keys.emplace_back(spec.key);
  return keys;
}

std::string config_key_help(const std::string& subcommand, const std::string& key) {
  for (const auto& spec : schema_for(subcommand))
    if (key == spec.key) return spec.help;
  return {};
}

RunConfig resolve_config(const std::string& subcommand, const KeyValueMap& file_values,
                         const KeyValueMap& flag_values) {
  const auto schema = schema_for(subcommand);
  const auto find_spec = [&](const std::string& key) -> const KeySpec* {
    for (const auto& spec : schema)
      if (key == spec.key) return &spec;
    return nullptr;
  };

  for (const auto& [key, value] : file_values)
    if (!find_spec(key))
      throw ConfigError("unknown config key '" + key + "' for subcommand '" + subcommand +
                        "'");
  for (const auto& [key, value] : flag_values)
    if (!find_spec(key))
      throw ConfigError("unknown config key '" + key + "' for subcommand '" + subcommand +
                        "'");

  RunConfig config;
  config.subcommand = subcommand;
  for (const auto& spec : schema) {
    const std::string key = spec.key;
    std::string value;
    bool have = false;
    if (const auto it = flag_values.find(key); it != flag_values.end()) {
      value = it->second;
      have = true;
    } else if (const auto fit = file_values.find(key); fit != file_values.end()) {
      value = fit->second;
      have = true;
    }
    if (!have) {
      if (key == "run.seed") {
        if (const char* env = std::getenv("HYPERCONTAGION_SEED")) {
          value = env;
        } else {
          value = "1";
        }
        have = true;
      } else if (spec.default_value) {
        value = spec.default_value;
        have = true;
      }
    }
    if (!have) {
      if (spec.required)
        throw ConfigError("missing required config key '" + key + "' for subcommand '" +
                          subcommand + "'");
      continue;
    }
    validate_value(spec, value);
    config.resolved[key] = value;
  }
  return config;
}

}  // namespace hc
