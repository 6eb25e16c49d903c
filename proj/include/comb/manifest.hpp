#ifndef COMB_MANIFEST_HPP
#define COMB_MANIFEST_HPP

#include <string>
#include <vector>

#include <json.hpp>

// Run manifests: every CLI invocation records its command, parameters, seed
// and the content hash of each output, so reruns can be compared byte for
// byte. No timestamps on purpose.

namespace comb {

inline constexpr const char* kToolVersion = "combspace 1.0.0";

std::string sha256_hex(const std::string& data);

class RunManifest {
 public:
  RunManifest(std::string command, nlohmann::json parameters, std::uint64_t seed,
              std::string spec_hash);

  void add_output(const std::string& path, const std::string& content);
  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json parameters_;
  std::uint64_t seed_;
  std::string spec_hash_;
  std::vector<std::pair<std::string, std::string>> outputs_;  // (path, sha256)
};

}  // namespace comb

#endif  // COMB_MANIFEST_HPP
