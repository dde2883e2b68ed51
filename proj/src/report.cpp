#include "unstable/report.hpp"

#include <iomanip>
#include <ostream>

namespace unstable {

void Report::add(std::string id, bool pass, json details) {
  checks.push_back(Check{std::move(id), pass, std::move(details)});
}

void Report::merge(const Report& other) {
  for (const Check& c : other.checks) checks.push_back(c);
}

bool Report::pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

json Report::to_json() const {
  json out;
  out["title"] = title;
  out["params"] = params;
  out["pass"] = pass();
  json arr = json::array();
  for (const Check& c : checks) {
    json jc;
    jc["id"] = c.id;
    jc["pass"] = c.pass;
    if (!c.details.empty()) jc["details"] = c.details;
    arr.push_back(jc);
  }
  out["checks"] = arr;
  return out;
}

void Report::print(std::ostream& os) const {
  os << "== " << title;
  if (!params.empty()) os << " " << params.dump();
  os << "\n";
  for (const Check& c : checks) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id;
    if (!c.pass && !c.details.empty()) os << "  " << c.details.dump();
    os << "\n";
  }
  os << (pass() ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
}

}  // namespace unstable
