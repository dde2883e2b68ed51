#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace unstable {

using json = nlohmann::ordered_json;

// Outcome of one verified claim.
struct Check {
  std::string id;
  bool pass = false;
  json details;
};

struct Report {
  std::string title;
  json params;
  std::vector<Check> checks;

  void add(std::string id, bool pass, json details = json::object());
  void merge(const Report& other);
  bool pass() const;
  json to_json() const;
  void print(std::ostream& os) const;
};

}  // namespace unstable
