#pragma once

#include "unstable/report.hpp"
#include "unstable/steenrod.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace unstable {

inline constexpr const char* kCodeVersion = "1";

json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j, int nvars);
json matrix_to_json(const GF2Matrix& m);
GF2Matrix matrix_from_json(const json& j);
json module_to_json(const GradedModule& m);
GradedModule module_from_json(const json& j);

// Content-addressed store of expensive computed objects.  Entries carry the
// code version and a checksum; anything stale or corrupted is a miss.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path dir);

  struct Key {
    std::string kind;
    int n = 0;
    std::string flavor;
    int cap = 0;
    std::string str() const;
  };

  std::optional<json> load(const Key& key) const;
  void store(const Key& key, const json& payload) const;

 private:
  std::filesystem::path dir_;
};

uint64_t fnv1a64(const std::string& data);

}  // namespace unstable
