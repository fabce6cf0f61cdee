#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "boostlet/error.hpp"

namespace boostlet::detail {

using Json = nlohmann::ordered_json;

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    fail(Errc::parse, std::string(what) + ": " + e.what());
  }
}

inline void require_object(const Json& j, std::string_view where) {
  if (!j.is_object()) fail(Errc::validation, std::string(where) + " must be a JSON object");
}

inline void reject_unknown_fields(const Json& j, std::initializer_list<std::string_view> known,
                                  std::string_view where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) fail(Errc::validation, "unknown field '" + key + "' in " + std::string(where));
  }
}

inline const Json& require_field(const Json& j, std::string_view key, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) {
    fail(Errc::validation, "missing required field '" + std::string(key) + "' in " +
                               std::string(where));
  }
  return *it;
}

inline std::string require_string(const Json& j, std::string_view key, std::string_view where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_string()) {
    fail(Errc::validation, "field '" + std::string(key) + "' in " + std::string(where) +
                               " must be a string");
  }
  return v.get<std::string>();
}

inline long long require_integer(const Json& v, std::string_view key, std::string_view where,
                                 long long lo, long long hi) {
  bool ok = v.is_number_integer() ||
            (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
  long long value = 0;
  if (ok) value = v.is_number_integer() ? v.get<long long>() : static_cast<long long>(v.get<double>());
  if (!ok || value < lo || value > hi) {
    fail(Errc::validation, "field '" + std::string(key) + "' in " + std::string(where) +
                               " must be an integer in [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
  }
  return value;
}

}  // namespace boostlet::detail
