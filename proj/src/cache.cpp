#include "unstable/cache.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace unstable {

json poly_to_json(const Poly& p) {
  json arr = json::array();
  for (const Mon& m : p.terms) arr.push_back(m.e);
  return arr;
}

Poly poly_from_json(const json& j, int nvars) {
  Poly p(nvars);
  for (const auto& e : j) p.terms.push_back(Mon(e.get<std::vector<int>>()));
  std::sort(p.terms.begin(), p.terms.end(), std::greater<Mon>());
  return p;
}

json matrix_to_json(const GF2Matrix& m) {
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["hex"] = m.to_hex_rows();
  return out;
}

GF2Matrix matrix_from_json(const json& j) {
  return GF2Matrix::from_hex_rows(j.at("rows").get<size_t>(), j.at("cols").get<size_t>(),
                                  j.at("hex").get<std::vector<std::string>>());
}

json module_to_json(const GradedModule& m) {
  json out;
  out["cap"] = m.cap;
  out["poly_degree_offset"] = m.poly_degree_offset;
  if (m.bounded_top)
    out["bounded_top"] = *m.bounded_top;
  else
    out["bounded_top"] = nullptr;
  int nv = 0;
  for (const auto& ps : m.polys)
    for (const Poly& p : ps) nv = p.nv;
  out["nvars"] = nv;
  json degrees = json::array();
  for (int d = 0; d <= m.cap; ++d) {
    json deg;
    deg["labels"] = m.labels[d];
    json polys = json::array();
    for (const Poly& p : m.polys[d]) polys.push_back(poly_to_json(p));
    deg["polys"] = polys;
    json sq = json::array();
    for (const GF2Matrix& s : m.sqmat[d]) sq.push_back(matrix_to_json(s));
    deg["sq"] = sq;
    degrees.push_back(deg);
  }
  out["degrees"] = degrees;
  return out;
}

GradedModule module_from_json(const json& j) {
  GradedModule m;
  m.cap = j.at("cap").get<int>();
  m.poly_degree_offset = j.at("poly_degree_offset").get<int>();
  if (!j.at("bounded_top").is_null()) m.bounded_top = j.at("bounded_top").get<int>();
  int nv = j.at("nvars").get<int>();
  m.labels.resize(m.cap + 1);
  m.polys.resize(m.cap + 1);
  m.sqmat.resize(m.cap + 1);
  const json& degrees = j.at("degrees");
  for (int d = 0; d <= m.cap; ++d) {
    const json& deg = degrees.at(d);
    m.labels[d] = deg.at("labels").get<std::vector<std::string>>();
    for (const auto& pj : deg.at("polys")) m.polys[d].push_back(poly_from_json(pj, nv));
    for (const auto& sj : deg.at("sq")) m.sqmat[d].push_back(matrix_from_json(sj));
  }
  return m;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Workspace::Workspace(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string Workspace::Key::str() const {
  std::ostringstream os;
  os << kind << "_n" << n;
  if (!flavor.empty()) os << "_" << flavor;
  os << "_cap" << cap << "_v" << kCodeVersion;
  return os.str();
}

std::optional<json> Workspace::load(const Key& key) const {
  std::filesystem::path file = dir_ / (key.str() + ".json");
  std::ifstream in(file);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
    if (j.at("version").get<std::string>() != kCodeVersion) return std::nullopt;
    if (j.at("key").get<std::string>() != key.str()) return std::nullopt;
    std::string payload = j.at("payload").dump();
    if (fnv1a64(payload) != j.at("checksum").get<uint64_t>()) return std::nullopt;
    return j.at("payload");
  } catch (const std::exception&) {
    return std::nullopt;  // corrupted entries are recomputed, never trusted
  }
}

void Workspace::store(const Key& key, const json& payload) const {
  json j;
  j["version"] = kCodeVersion;
  j["key"] = key.str();
  j["checksum"] = fnv1a64(payload.dump());
  j["payload"] = payload;
  std::filesystem::path file = dir_ / (key.str() + ".json");
  std::filesystem::path tmp = dir_ / (key.str() + ".json.tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("Workspace::store: cannot open " + tmp.string());
    out << j.dump();
    if (!out) throw std::runtime_error("Workspace::store: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace unstable
