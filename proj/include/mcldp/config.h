// Copyright 2026 The mcldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCLDP_CONFIG_H_
#define MCLDP_CONFIG_H_

// Plain `key = value` configuration files. Blank lines and lines starting
// with '#' are ignored; later keys override earlier ones.

#include <charconv>
#include <fstream>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "mcldp/errors.h"

namespace mcldp {

using KeyValueConfig = std::map<std::string, std::string>;

namespace internal {

inline std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace internal

inline KeyValueConfig ParseKeyValueConfig(std::istream& in) {
  KeyValueConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = internal::Trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", number);
    }
    const std::string key = internal::Trim(body.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", number);
    config[key] = internal::Trim(body.substr(eq + 1));
  }
  return config;
}

inline KeyValueConfig LoadKeyValueConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'", 0);
  return ParseKeyValueConfig(in);
}

// Shortest decimal text that reads back as the same double.
inline std::string FormatNumber(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double ParseNumber(const std::string& text, const std::string& key) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ParseError("'" + key + "' expects a number, got '" + text + "'", 0);
  }
  return value;
}

inline std::uint64_t ParseCount(const std::string& text,
                                const std::string& key) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ParseError(
        "'" + key + "' expects a nonnegative integer, got '" + text + "'", 0);
  }
  return value;
}

inline bool ParseFlag(const std::string& text, const std::string& key) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "0" || text == "false" || text == "no" || text == "off") {
    return false;
  }
  throw ParseError("'" + key + "' expects a boolean, got '" + text + "'", 0);
}

inline std::string FormatKeyValueConfig(const KeyValueConfig& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config) out << key << " = " << value << "\n";
  return out.str();
}

}  // namespace mcldp

#endif  // MCLDP_CONFIG_H_
