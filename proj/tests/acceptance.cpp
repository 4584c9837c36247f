// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: thg_acceptance <path-to-thg> <catalog-source-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "thg/error.hpp"
#include "thg/fox.hpp"
#include "thg/rhodes.hpp"
#include "thg/spacecat.hpp"
#include "thg/tower.hpp"

using namespace thg;
namespace fs = std::filesystem;

namespace {

std::string g_thg;
fs::path g_catalog;

const Catalog& cat() { return Catalog::builtin(); }

TransformationModel tg_of(const std::string& name) {
  TransformationModel tg = cat().transformation(name);
  cat().link_orbit_reference(tg);
  return tg;
}

std::vector<std::string> free_models() {
  std::vector<std::string> out;
  for (const auto& n : cat().transformation_names())
    if (cat().transformation(n).free) out.push_back(n);
  for (int d = 1; d <= 7; ++d) out.push_back("S" + std::to_string(d) + "-antipodal");
  return out;
}

oracle::Table table_of(const CayleyGroup& g) {
  oracle::Table t(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < static_cast<int>(g.order()); ++a)
    for (int b = 0; b < static_cast<int>(g.order()); ++b) t[a][b] = g.mul(a, b);
  return t;
}

IntMatrix to_matrix(const oracle::Mat& m, std::size_t cols) {
  std::vector<Vector> rows;
  for (const auto& r : m) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    rows.push_back(v);
  }
  return IntMatrix::from_rows(rows, cols);
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool criterion1(Outcome& o) {
  TransformationModel tg = tg_of("rp3-z2z2");
  CayleyGroup s1 = rhodes::sigma1_group(tg);
  CayleyGroup q8 = from_catalog("Q8");
  o.require(oracle::isomorphic_by_permutation(table_of(s1), s1.identity(), table_of(q8), q8.identity()),
            "sigma_1 is not Q8");
  rhodes::GottliebRhodes gr = rhodes::gottlieb_rhodes_invariants(tg, 1);
  o.require(gr.summary && gr.summary->finite_order() == ExtNat(8), "G sigma_1 does not have order 8");
  o.require(gr.realized && !is_abelian(*gr.realized) && gr.realized->order() == 8, "G sigma_1 not realized non-abelian");
  fox::GottliebFox gf = fox::gottlieb_fox_invariants(tg.space, 1);
  o.require(gf.summary && gf.summary->finite_order() == ExtNat(2) && gf.summary->base.abelian, "G tau_1 is not Z_2");
  rhodes::G0Result g0 = rhodes::compute_g0(tg);
  o.require(g0.subgroup.size() == tg.group.order(), "G_0 is not all of G");
  o.detail = o.ok ? "sigma_1 = Q8, |G sigma_1| = 8 non-abelian, G tau_1 = Z_2, G_0 = G" : o.detail;
  return o.ok;
}

bool criterion2(Outcome& o) {
  int pairs = 0;
  for (const auto& name : free_models()) {
    TransformationModel tg = tg_of(name);
    for (int n = 1; n <= tg.space.truncation; ++n) {
      rhodes::SigmaSummary s = rhodes::sigma_invariants(tg, n);
      TowerSummary tau = fox::tau_invariants(tg.space, n);
      const ExtNat expected = ExtNat(static_cast<long>(tg.group.order())) * tau.finite_order();
      o.require(s.orbit_path.finite_order() == expected, name + " n=" + std::to_string(n) + " order mismatch");
      o.require(s.orbit_path.free_rank() == tau.free_rank(), name + " n=" + std::to_string(n) + " rank mismatch");
      ++pairs;
    }
  }
  o.require(pairs >= 20, "fewer than 20 pairs");
  if (o.ok) o.detail = std::to_string(pairs) + " (model, n) pairs agree";
  return o.ok;
}

bool criterion3(Outcome& o) {
  int runs = 0;
  for (const auto& name : cat().space_names()) {
    SpaceModel x = cat().space(name);
    for (int n = 2; n <= x.truncation; ++n, ++runs)
      for (const auto& e : fox::fox_sequence_check(x, n).entries)
        o.require(e.status == CheckStatus::Pass, name + ": " + e.id + " " + e.detail);
  }
  for (const auto& name : free_models()) {
    TransformationModel tg = tg_of(name);
    for (int n = 2; n <= tg.space.truncation; ++n, ++runs)
      for (const auto& e : rhodes::rhodes_split_check(tg, n).entries)
        o.require(e.status == CheckStatus::Pass, name + ": " + e.id + " " + e.detail);
  }
  if (o.ok) o.detail = std::to_string(runs) + " sequence checks pass";
  return o.ok;
}

bool criterion4(Outcome& o) {
  int identities = 0;
  for (int n = 1; n <= 30; ++n)
    for (int i = 1; i <= n; ++i) {
      auto t = fox::multiplicities(n, i);
      o.require(t.beta + t.gamma == oracle::binomial(n, i - 1), "Pascal fails");
      Integer sum = i == 1 ? Integer(1) : Integer(0);
      for (int m = std::max(i, 2); m <= n && i >= 2; ++m) sum += oracle::binomial(m - 2, i - 2);
      o.require(sum == oracle::binomial(n - 1, i - 1), "telescoping fails");
      o.require(t.gamma == oracle::binomial(n - 1, i - 1), "gamma differs from the oracle");
      identities += 2;
    }
  if (o.ok) o.detail = std::to_string(identities) + " identities hold for 1 <= i <= n <= 30";
  return o.ok;
}

bool criterion5(Outcome& o) {
  int spaces = 0;
  for (const auto& name : cat().space_names()) {
    SpaceModel x = cat().space(name);
    for (const auto& e : fox::gottlieb_fox_equivalence_check(x, x.truncation).entries)
      o.require(!is_failure(e.status), name + ": " + e.detail);
    ++spaces;
  }
  SpaceModel q = cat().space("S3/Q8");
  o.require(fox::is_n_gottlieb(q, 1) == Verdict::False, "S3/Q8 is 1-Gottlieb");
  o.require(fox::is_n_gottlieb_fox(q, 1) == Verdict::False, "S3/Q8 is 1-Gottlieb-Fox");
  auto idx = fox::gottlieb_index(q, 1);
  o.require(idx && *idx == ExtNat(4), "S3/Q8 index is not 4");
  if (o.ok) o.detail = std::to_string(spaces) + " spaces agree; S3/Q8 both sides false with index 4";
  return o.ok;
}

bool criterion6(Outcome& o) {
  for (const char* name : {"s1-z3", "s3-z4", "s3-q8", "S1-antipodal", "S3-antipodal", "S5-antipodal", "S7-antipodal"}) {
    TransformationModel tg = tg_of(name);
    o.require(rhodes::compute_g0(tg).subgroup.size() == tg.group.order(), std::string(name) + ": G_0 != G");
  }
  for (const char* name : {"s2-antipodal", "S2-antipodal", "S4-antipodal", "S6-antipodal", "t3-z2", "s3cubed-z2"})
    o.require(rhodes::compute_g0(tg_of(name)).subgroup.size() == 1, std::string(name) + ": G_0 != {e}");
  if (o.ok) o.detail = "odd spheres G_0 = G; even spheres, T3 and S3xS3xS3 G_0 = {e}";
  return o.ok;
}

bool criterion7(Outcome& o) {
  int exceptions = 0;
  bool cube = false, lens = false;
  for (const auto& name : free_models()) {
    TransformationModel tg = tg_of(name);
    for (const auto& e : rhodes::orbit_gottlieb_audit(tg, std::min(4, tg.space.truncation)).entries) {
      o.require(e.status != CheckStatus::Violation && e.status != CheckStatus::Fail, name + ": " + e.detail);
      if (e.status == CheckStatus::DocumentedException) {
        ++exceptions;
        cube = cube || name == "s3cubed-z2";
        lens = lens || name == "s3-q8";
      }
    }
  }
  o.require(cube && lens, "the degree-one exceptions are not surfaced");
  TransformationModel t3 = tg_of("t3-z2");
  for (const auto& e : rhodes::aspherical_orbit_check(t3, 3).entries)
    o.require(e.status == CheckStatus::Pass, "aspherical orbit check: " + e.detail);
  SpaceModel orbit = orbit_space(t3).model;
  const auto* v = std::get_if<VirtAbelian>(&orbit.pi1);
  o.require(v != nullptr, "pi_1(T3/Z2) is not an extension");
  if (v) {
    CenterSummary z = center_summary(*v);
    o.require(z.group == FgAbelian::free(1), "center of pi_1(T3/Z2) is not Z");
  }
  if (o.ok) o.detail = "no violations, " + std::to_string(exceptions) + " documented exceptions; Z(pi_1(T3/Z2)) = Z";
  return o.ok;
}

bool criterion8(Outcome& o) {
  auto sample = oracle::random_matrices(600, 7u, -4, 4);
  int checked = 0, enumerated = 0;
  for (const auto& m : sample) {
    const std::size_t cols = m.front().size();
    IntMatrix a = to_matrix(m, cols);
    SmithForm s = smith_normal_form(a);
    auto expected = oracle::smith_diagonal(m, cols);
    bool same = expected.size() == s.diag.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) same = abs(s.diag[i]) == expected[i];
    o.require(same, "Smith form disagrees with determinantal divisors");
    auto dd = oracle::determinantal_divisors(m, cols);
    const bool full_rank = dd.size() == cols && dd.back() != 0;
    FgAbelian c = cokernel(FgAbelian::free(cols), a);
    ExtNat idx = subgroup_index(FgAbelian::free(cols), a);
    o.require(c.is_finite() == full_rank && idx.is_infinite() != full_rank, "finiteness disagrees");
    ++checked;
    if (!full_rank) continue;
    const long d = Integer(abs(dd.back())).get_si();
    o.require(idx == ExtNat(d), "index disagrees");
    long total = 1;
    for (std::size_t i = 0; i < cols; ++i) total *= d;
    if (total > 300000) continue;
    std::vector<long> factors;
    for (const auto& t : c.torsion()) factors.push_back(t.get_si());
    for (const auto& [k, count] : oracle::cokernel_kill_counts(m, cols, d))
      o.require(count == oracle::killed_by(factors, k), "cokernel disagrees with coset enumeration");
    ++enumerated;
  }
  o.require(checked >= 500, "sample too small");
  // Exemplars.
  o.require(smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}})).diag == Vector{Integer(2), Integer(4)},
            "exemplar SNF");
  o.require(subgroup_index(FgAbelian::free(1), IntMatrix::from_rows({{2}})) == ExtNat(2), "exemplar index");
  CayleyGroup k = from_catalog("Z2xZ2");
  std::vector<Vector> cocycle(16, Vector{Integer(0)});
  for (auto [q, r] : std::vector<std::pair<const char*, const char*>>{
           {"a", "a"}, {"b", "b"}, {"ab", "ab"}, {"b", "a"}, {"a", "ab"}, {"ab", "b"}})
    cocycle[static_cast<std::size_t>(k.index_of(q) * 4 + k.index_of(r))] = Vector{Integer(1)};
  VirtAbelian ext(k, FgAbelian::cyclic(2), std::vector<IntMatrix>(4, IntMatrix::identity(1)), cocycle);
  CayleyGroup c = to_cayley(ext);
  CayleyGroup q8 = from_catalog("Q8");
  o.require(oracle::isomorphic_by_permutation(table_of(c), c.identity(), table_of(q8), q8.identity()),
            "quaternion cocycle is not Q8");
  if (o.ok)
    o.detail = std::to_string(checked) + " matrices, " + std::to_string(enumerated) +
               " enumerated cokernels; quaternion cocycle gives Q8";
  return o.ok;
}

bool criterion9(Outcome& o) {
  for (const char* name : {"S3/Z4", "S3/Q8"}) {
    SpaceModel x = cat().space(name);
    const auto& g = std::get<CayleyGroup>(x.pi1);
    auto g1 = fox::gottlieb1_elements(x);
    o.require(g1.has_value(), std::string(name) + ": no G_1");
    if (g1) {
      Subgroup z = center(g);
      auto a = g1->elements, b = z.elements;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      o.require(a == b, std::string(name) + ": G_1 differs from the center");
    }
  }
  for (const char* name : {"s3-z4", "s3-q8"})
    for (const auto& e : rhodes::odd_sphere_center_check(tg_of(name)).entries)
      o.require(e.status == CheckStatus::Pass, std::string(name) + ": " + e.detail);
  if (o.ok) o.detail = "G_1(S3/G) = Z(G) for G = Z4, Q8";
  return o.ok;
}

int run_thg(const std::string& args) {
  const std::string cmd = "\"" + g_thg + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void copy_catalog(const fs::path& to) {
  fs::remove_all(to);
  fs::create_directories(to);
  for (const auto& f : fs::directory_iterator(g_catalog))
    if (f.path().extension() == ".json") fs::copy_file(f.path(), to / f.path().filename());
}

void mutate(const fs::path& file, const std::function<void(nlohmann::ordered_json&)>& edit) {
  nlohmann::ordered_json doc;
  {
    std::ifstream in(file);
    in >> doc;
  }
  edit(doc);
  std::ofstream(file) << doc.dump(2) << "\n";
}

bool criterion10(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("thg_acceptance_" + std::to_string(::getpid()));
  const std::string verify = "verify --all --max-n 4 --catalog-dir \"" + dir.string() + "\"";
  copy_catalog(dir);
  const int pristine = run_thg(verify);
  o.require(pristine == 0, "pristine catalog exits " + std::to_string(pristine));

  struct Mutation {
    std::string label;
    std::string file;
    std::function<void(nlohmann::ordered_json&)> edit;
  };
  const std::vector<Mutation> mutations = {
      {"S3/Q8 G_1 -> full", "s3_q8.json", [](auto& d) { d["gottlieb"]["1"] = "full"; }},
      {"S3/Z4 G_1 -> trivial", "s3_z4.json", [](auto& d) { d["gottlieb"]["1"] = "trivial"; }},
      {"S3 G_3 -> trivial", "s3.json", [](auto& d) { d["gottlieb"]["3"] = "trivial"; }},
      {"RP3 G_1 -> trivial", "rp3.json", [](auto& d) { d["gottlieb"]["1"] = "trivial"; }},
      {"T3 G_1 -> trivial", "t3.json", [](auto& d) { d["gottlieb"]["1"] = "trivial"; }},
  };
  int caught = 0;
  for (const auto& m : mutations) {
    copy_catalog(dir);
    mutate(dir / m.file, m.edit);
    const int code = run_thg(verify);
    o.require(code == 3, m.label + " exits " + std::to_string(code));
    caught += code == 3;
  }
  fs::remove_all(dir);
  if (o.ok) o.detail = "pristine exits 0; " + std::to_string(caught) + " single-value mutations exit 3";
  return o.ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: thg_acceptance <thg> <catalog-dir>\n";
    return 2;
  }
  g_thg = argv[1];
  g_catalog = argv[2];
  const std::vector<std::pair<std::string, std::function<bool(Outcome&)>>> criteria = {
      {"quaternion golden values", criterion1},
      {"sigma_n bookkeeping consistency", criterion2},
      {"split-sequence suites", criterion3},
      {"multiplicity calculus", criterion4},
      {"Gottlieb / Gottlieb-Fox equivalence", criterion5},
      {"G_0 corpus", criterion6},
      {"orbit audits", criterion7},
      {"algebra kernel oracles", criterion8},
      {"odd-sphere center", criterion9},
      {"CLI mutation test", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    bool ok = false;
    try {
      ok = criteria[i].second(o);
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << o.detail << ")\n";
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
