#pragma once

// Persisted tables of tau_d, c_1, c_2 and H(k, .).
//
//   function=tau
//   param.d=9
//   version=0.1.0
//   min=0
//   max=11
//   0 : 0
//   ...
//   11 : -9

#include <dforge/jacobi.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#ifndef DFORGE_VERSION
#define DFORGE_VERSION "0.1.0"
#endif

namespace dforge {

inline constexpr const char* kEngineVersion = DFORGE_VERSION;

struct CoefficientTable {
  std::string function;  // tau | c1 | c2 | cohenH
  std::map<std::string, std::string> params;
  std::string version = kEngineVersion;
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::map<std::int64_t, Rational> values;

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;
};

inline std::string to_text(const CoefficientTable& t)
{
  std::ostringstream os;
  os << "function=" << t.function << "\n";
  for (const auto& [k, v] : t.params) os << "param." << k << "=" << v << "\n";
  os << "version=" << t.version << "\n";
  os << "min=" << t.min << "\n";
  os << "max=" << t.max << "\n";
  for (const auto& [n, v] : t.values) os << n << " : " << to_string(v) << "\n";
  return os.str();
}

inline CoefficientTable table_from_text(const std::string& text)
{
  CoefficientTable t;
  t.version.clear();
  std::istringstream is(text);
  bool have_function = false;
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    if (const auto colon = line.find(" : "); colon != std::string::npos) {
      const std::int64_t n = std::stoll(line.substr(0, colon));
      if (!t.values.emplace(n, parse_rational(line.substr(colon + 3))).second)
        throw std::invalid_argument("duplicate table entry " + std::to_string(n));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed table line: " + line);
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "function") {
      t.function = value;
      have_function = true;
    } else if (key.rfind("param.", 0) == 0) {
      t.params[key.substr(6)] = value;
    } else if (key == "version") {
      t.version = value;
    } else if (key == "min") {
      t.min = std::stoll(value);
    } else if (key == "max") {
      t.max = std::stoll(value);
    } else {
      throw std::invalid_argument("unknown table header key: " + key);
    }
  }
  if (!have_function) throw std::invalid_argument("table has no function header");
  return t;
}

namespace detail {

inline int int_param(const std::map<std::string, std::string>& params, const std::string& key)
{
  const auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter " + key);
  return std::stoi(it->second);
}

}  // namespace detail

/// Smallest index the function's table starts at.
inline std::int64_t table_default_min(const std::string& function)
{
  return (function == "c1" || function == "c2") ? -1 : 0;
}

/// Computes a table; c1 and c2 come from phi_{0,1} and phi_{0,2}.
inline CoefficientTable compute_table(const std::string& function, const std::map<std::string, std::string>& params,
                                      std::int64_t min, std::int64_t max)
{
  if (max < min) throw std::invalid_argument("table range is empty");
  CoefficientTable t{function, params, kEngineVersion, min, max, {}};
  if (function == "tau") {
    const int d = detail::int_param(params, "d");
    if (d < 1) throw std::invalid_argument("tau needs d >= 1");
    const EtaPower eta = eta_power(d, make_rational(max, 8));
    for (std::int64_t n = min; n <= max; ++n) t.values[n] = n < 0 ? Integer(0) : eta.tau(n);
  } else if (function == "c1" || function == "c2") {
    const int a = function == "c1" ? 4 : 8;
    const Rational depth = depth_for_norm(a, std::max<std::int64_t>(max, 0));
    const MultiplicityTable m(function == "c1" ? phi01(depth) : phi02(depth));
    for (std::int64_t n = min; n <= max; ++n) t.values[n] = m(n);
  } else if (function == "cohenH") {
    const int k = detail::int_param(params, "k");
    if (min < 0) throw std::invalid_argument("cohenH needs N >= 0");
    for (std::int64_t n = min; n <= max; ++n) t.values[n] = cohen_H(k, n);
  } else {
    throw std::invalid_argument("unknown function '" + function + "'");
  }
  return t;
}

/// On-disk cache keyed by function, parameters, range and engine version.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const std::string& function, const std::map<std::string, std::string>& params,
                                 std::int64_t min, std::int64_t max) const
  {
    std::string name = function;
    for (const auto& [k, v] : params) name += "_" + k + v;
    name += "_" + std::to_string(min) + "_" + std::to_string(max) + "_v" + kEngineVersion + ".txt";
    return dir_ / name;
  }

  /// Returns the cached table when it exists with matching metadata, else computes and stores it.
  CoefficientTable get(const std::string& function, const std::map<std::string, std::string>& params,
                       std::int64_t min, std::int64_t max, bool* hit = nullptr) const
  {
    const auto path = path_for(function, params, min, max);
    if (std::filesystem::exists(path)) {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        CoefficientTable t = table_from_text(buf.str());
        if (t.function == function && t.params == params && t.min == min && t.max == max &&
            t.version == kEngineVersion) {
          if (hit) *hit = true;
          return t;
        }
      } catch (const std::exception&) {
        // unreadable entries are recomputed
      }
    }
    if (hit) *hit = false;
    CoefficientTable t = compute_table(function, params, min, max);
    std::filesystem::create_directories(dir_);
    // write to a private temporary and rename, so readers never see a partial file
    const auto tmp = path.string() + ".tmp" + std::to_string(std::hash<std::string>{}(path.string()));
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << to_text(t);
    }
    std::filesystem::rename(tmp, path);
    return t;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace dforge
