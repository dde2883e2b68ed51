#include <CLI11.hpp>

#include "unstable/brown_gitler.hpp"
#include "unstable/cache.hpp"
#include "unstable/matrix_algebra.hpp"
#include "unstable/report.hpp"
#include "unstable/resolution.hpp"
#include "unstable/series.hpp"
#include "unstable/steinberg.hpp"

#include <fstream>
#include <iostream>
#include <optional>

using namespace unstable;

namespace {

int default_cap(int n) { return n >= 3 ? 24 : 16; }

struct Output {
  std::string json_path;
  void emit(const Report& rep) {
    rep.print(std::cout);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) throw std::runtime_error("cannot write " + json_path);
      out << rep.to_json().dump(2) << "\n";
    }
  }
};

Report run_idempotent(int n, int threads) {
  Report rep = verify_hecke(n, threads);
  return rep;
}

Report run_basis(const std::string& flavor, int n, int cap, int power,
                 const std::optional<Workspace>& ws) {
  Report rep;
  rep.title = "basis";
  rep.params = json{{"flavor", flavor}, {"n", n}, {"cap", cap}};
  auto finish = [&](const GradedModule& mod, const TruncSeries& expected, const char* check_id) {
    TruncSeries got = poincare(mod);
    rep.add(check_id, got == expected,
            json{{"dims", got.c}, {"expected", expected.c}});
    json labels = json::array();
    for (int d = 0; d <= mod.cap; ++d)
      for (const auto& l : mod.labels[d]) labels.push_back(json{{"degree", d}, {"label", l}});
    rep.add("emitted_basis", true, json{{"count", labels.size()}, {"labels", labels}});
  };
  auto cached_steinberg = [&](Flavor f, const std::string& tag, int pw) {
    if (ws) {
      Workspace::Key key{"steinberg", n, tag, cap};
      if (auto payload = ws->load(key)) return module_from_json(*payload);
      SteinbergModule m = build_steinberg(f, n, cap, pw);
      ws->store(key, module_to_json(m.mod));
      return m.mod;
    }
    return build_steinberg(f, n, cap, pw).mod;
  };
  if (flavor == "M") {
    GradedModule mod = cached_steinberg(Flavor::M, "M", 1);
    finish(mod, ell(n, cap) + ell(n - 1, cap), "dims_match_series");
  } else if (flavor == "L") {
    GradedModule mod = cached_steinberg(Flavor::L, "L", 1);
    finish(mod, ell(n, cap), "dims_match_series");
  } else if (flavor == "Lprime") {
    GradedModule mod = cached_steinberg(Flavor::Lprime, "Lprime", 1);
    finish(mod, TruncSeries::monomial((1 << n) - 1, cap) * ell(n, cap), "dims_match_series");
  } else if (flavor == "omegaL") {
    GradedModule mod = cached_steinberg(Flavor::OmegaPowerL, "omegaL" + std::to_string(power), power);
    finish(mod, TruncSeries::monomial(power * ((1 << n) - 1), cap) * ell(n, cap),
           "dims_match_series");
  } else if (flavor == "dickson") {
    DicksonModule mod = dickson_module(n, power, cap);
    RationalForm f;
    f.num_exp = (long long)power * ((1 << n) - 1);
    for (int j = 0; j < n; ++j) f.denom.push_back((1LL << n) - (1LL << j));
    finish(mod.mod, f.expand(cap), "dims_match_series");
  } else if (flavor == "J") {
    // n is the weight k here
    GradedModule mod = j_basis(n, std::min(cap, n));
    TruncSeries got = poincare(mod);
    rep.add("emitted_dims", true, json{{"dims", got.c}});
    int k = 0;
    while ((1 << (k + 1)) - 1 <= n) ++k;
    if ((1 << k) - 1 == n) {
      TruncSeries mu = mu_by_partitions(k, mod.cap);
      rep.add("dims_match_minc_series", got == mu);
    }
  } else {
    throw CLI::ValidationError("--flavor", "unknown flavor " + flavor);
  }
  return rep;
}

Report run_presentation(int n) { return presentation_check(n); }

Report run_resolution(int n, int cap) {
  ResolutionComplex R = build_resolution(n, cap);
  Report rep = verify_complex(R);
  rep.title = "resolution";
  rep.merge(verify_exactness(R));
  rep.merge(ext_table(n, cap));
  return rep;
}

Report run_takayasu(int n, int cap) {
  ResolutionComplex R = build_resolution(n, cap);
  TakayasuComplex T = build_takayasu(n, cap);
  return verify_takayasu(R, T);
}

Report run_series(const std::string& which, int n, int cap) {
  if (which == "andrews") return andrews_check(n, cap);
  if (which == "minc") return verify_minc_agreement(n);
  if (which == "tfunctor") return t_functor_check(n, 8, cap);
  if (which == "dickson") {
    Report rep;
    rep.title = "dickson_series";
    rep.params = json{{"n", n}, {"cap", cap}};
    for (int i = 1; i <= 4; ++i) rep.merge(dickson_sequence_check(n, i, cap, n <= 2));
    return rep;
  }
  throw CLI::ValidationError("--which", "unknown series check " + which);
}

Report run_all(int n, int cap, int threads) {
  Report rep;
  rep.title = "all";
  rep.params = json{{"n", n}, {"cap", cap}};
  if (n >= 2 && n <= 4) rep.merge(run_idempotent(n, threads));
  rep.merge(andrews_check(std::min(n, 6), std::min(cap, 128)));
  rep.merge(verify_minc_agreement(std::min(n + 1, 5)));
  if (n >= 1 && n <= 3) {
    rep.merge(run_resolution(n, cap));
    rep.merge(run_takayasu(n, cap));
  }
  if (n >= 2 && n <= 4) rep.merge(presentation_check(n));
  if (n >= 2 && n <= 3) rep.merge(verify_steinberg_characterizations(n, cap));
  rep.merge(t_functor_check(std::min(n + 1, 4), 8, std::min(cap, 64)));
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degreewise verification of Steinberg and Brown-Gitler module structure over GF(2)"};
  app.require_subcommand(1);

  int n = 2;
  int cap = -1;
  int threads = 1;
  int power = 1;
  std::string json_path, workspace_dir, flavor = "L", which = "andrews";

  app.add_option("--json", json_path, "write the JSON report to this path");
  app.add_option("--workspace", workspace_dir, "cache directory for computed bases");
  app.add_option("--threads", threads, "worker threads for degree-parallel steps");

  auto* c_idem = app.add_subcommand("idempotent", "idempotent and Hecke identities");
  c_idem->add_option("--n", n, "rank (2..4)")->required();

  auto* c_basis = app.add_subcommand("basis", "emit a labeled basis with a series cross-check");
  c_basis->add_option("--flavor", flavor, "M | L | Lprime | omegaL | dickson | J");
  c_basis->add_option("--n", n, "rank (or weight for J)")->required();
  c_basis->add_option("--cap", cap, "degree cap");
  c_basis->add_option("--power", power, "omega power for omegaL / dickson");

  auto* c_pres = app.add_subcommand("presentation", "quotient presentation of J(2^n - 1)");
  c_pres->add_option("--n", n, "rank (2..4)")->required();

  auto* c_res = app.add_subcommand("resolution", "complex, exactness and the Ext table");
  c_res->add_option("--n", n, "rank (1..3)")->required();
  c_res->add_option("--cap", cap, "degree cap");

  auto* c_tak = app.add_subcommand("takayasu", "spliced cofibration sequence checks");
  c_tak->add_option("--n", n, "rank (1..3)")->required();
  c_tak->add_option("--cap", cap, "degree cap");

  auto* c_ser = app.add_subcommand("series", "series identities");
  c_ser->add_option("--which", which, "andrews | minc | tfunctor | dickson");
  c_ser->add_option("--n", n, "index");
  c_ser->add_option("--cap", cap, "truncation cap");

  auto* c_all = app.add_subcommand("all", "full verification suite for one rank");
  c_all->add_option("--n", n, "rank (1..3)")->required();
  c_all->add_option("--cap", cap, "degree cap");

  CLI11_PARSE(app, argc, argv);

  Output out{json_path};
  std::optional<Workspace> ws;
  if (!workspace_dir.empty()) ws.emplace(workspace_dir);

  try {
    Report rep;
    if (app.got_subcommand(c_idem)) {
      if (n < 2 || n > 4) throw std::invalid_argument("idempotent requires 2 <= n <= 4");
      rep = run_idempotent(n, threads);
    } else if (app.got_subcommand(c_basis)) {
      if (cap < 0) cap = (flavor == "J") ? n : default_cap(n);
      if (flavor != "J" && (n < 1 || n > 4))
        throw std::invalid_argument("basis requires 1 <= n <= 4");
      if (flavor != "J" && n == 4 && cap > 15)
        throw std::invalid_argument("basis with n = 4 requires cap <= 15");
      rep = run_basis(flavor, n, cap, power, ws);
    } else if (app.got_subcommand(c_pres)) {
      if (n < 2 || n > 4) throw std::invalid_argument("presentation requires 2 <= n <= 4");
      rep = run_presentation(n);
    } else if (app.got_subcommand(c_res)) {
      if (n < 1 || n > 3) throw std::invalid_argument("resolution requires 1 <= n <= 3");
      if (cap < 0) cap = default_cap(n);
      rep = run_resolution(n, cap);
    } else if (app.got_subcommand(c_tak)) {
      if (n < 1 || n > 3) throw std::invalid_argument("takayasu requires 1 <= n <= 3");
      if (cap < 0) cap = default_cap(n);
      rep = run_takayasu(n, cap);
    } else if (app.got_subcommand(c_ser)) {
      if (cap < 0) cap = 64;
      rep = run_series(which, n, cap);
    } else if (app.got_subcommand(c_all)) {
      if (n < 1 || n > 3) throw std::invalid_argument("all requires 1 <= n <= 3");
      if (cap < 0) cap = default_cap(n);
      rep = run_all(n, cap, threads);
    }
    out.emit(rep);
    return rep.pass() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
