#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace mb {

// pass is set from statistic <comparison> threshold and nothing else.
struct VerifyReport {
  std::string name;
  double statistic = 0;
  double threshold = 0;
  std::string comparison = "<";  // one of <, <=, >, >=
  bool pass = false;
  std::uint64_t seed = 0;
  int replicas = 0;
  double wall_time = 0;  // seconds; not part of the deterministic content
  nlohmann::json detail = nlohmann::json::object();

  void decide();
};

void to_json(nlohmann::json& j, const VerifyReport& r);
// Report without wall_time, for byte-for-byte determinism checks.
nlohmann::json deterministic_json(const VerifyReport& r);

}  // namespace mb
