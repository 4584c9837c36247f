#include "thg/verify.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "thg/error.hpp"
#include "thg/fox.hpp"
#include "thg/rhodes.hpp"

namespace thg {

namespace {

CheckEntry entry(std::string id, std::string model, int n, bool ok, std::string rule, std::string reference,
                 std::string provenance, std::string detail) {
  return CheckEntry{std::move(id), std::move(model), n, ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(rule),
                    std::move(reference), std::move(provenance), std::move(detail)};
}

// Runs a block of checks. NotApplicable is recorded as such; any other error
// means the check could not run on a model where it should, and is a failure.
void guarded(CheckReport& r, const std::string& id, const std::string& model, const std::string& reference,
             const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    const bool skip = e.kind() == ErrorKind::NotApplicable;
    r.add(CheckEntry{id, model, 0, skip ? CheckStatus::NotApplicable : CheckStatus::Fail,
                     skip ? "precondition not met" : "computation raised an error", reference, "derived", e.what()});
  }
}

std::string names_of(const CayleyGroup& g, const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.elements.size(); ++i) out += (i ? ", " : "") + g.name(s.elements[i]);
  return out + "}";
}

}  // namespace

CheckReport verify_space(const SpaceModel& x, int max_n) {
  CheckReport r;
  const int m = std::min(max_n, x.truncation);
  guarded(r, "fox.sequence", x.name, "torus group split sequence", [&] {
    for (int n = 2; n <= m; ++n) r.append(fox::fox_sequence_check(x, n));
  });
  guarded(r, "fox.gottlieb-fox-equivalence", x.name, "Gottlieb through degree n iff Gottlieb-Fox in degree n",
          [&] { r.append(fox::gottlieb_fox_equivalence_check(x, m)); });
  return r;
}

CheckReport verify_transformation(const TransformationModel& tg, int max_n) {
  CheckReport r;
  const int m = std::min(max_n, tg.space.truncation);
  if (!tg.free) {
    r.add(CheckEntry{"rhodes.free", tg.name, 0, CheckStatus::NotApplicable, "orbit-space checks need a free action",
                     "free actions", "derived", "action is not free"});
    return r;
  }

  guarded(r, "rhodes.sigma-consistency", tg.name, "free actions: sigma_n is tau_n of the orbit space", [&] {
    for (int n = 1; n <= m; ++n) {
      rhodes::SigmaSummary s = rhodes::sigma_invariants(tg, n);
      r.add(entry("rhodes.sigma-consistency", tg.name, n, s.consistent, "|sigma_n| = |G| * |tau_n(X)|, equal ranks",
                  "free actions: sigma_n is tau_n of the orbit space", "published",
                  "orbit path " + s.orbit_path.finite_order().to_string() + " rank " +
                      s.orbit_path.free_rank().get_str() + "; bookkeeping " + s.bookkeeping_order.to_string() +
                      " rank " + s.bookkeeping_rank.get_str()));
    }
  });

  guarded(r, "rhodes.split", tg.name, "Rhodes group split sequence", [&] {
    for (int n = 2; n <= m; ++n) r.append(rhodes::rhodes_split_check(tg, n));
  });

  guarded(r, "rhodes.g0", tg.name, "G_0 is a subgroup of G", [&] {
    rhodes::G0Result g0 = rhodes::compute_g0(tg);
    Subgroup closure = subgroup_generated(tg.group, g0.subgroup.elements);
    bool closed = closure.size() == g0.subgroup.size();
    r.add(entry("rhodes.g0-subgroup", tg.name, 0, closed || !g0.determined(), "elements in G_0 are closed under products",
                "G_0 is a subgroup of G", "derived", "G_0 = " + names_of(tg.group, g0.subgroup)));
    rhodes::ClassificationReport c = rhodes::classify(tg, m);
    bool consistent = c.gottlieb_rhodes != Verdict::True || g0.equals_group() == Verdict::True;
    r.add(entry("rhodes.gottlieb-rhodes-needs-g0", tg.name, m, consistent, "Gottlieb-Rhodes true forces G_0 = G",
                "Gottlieb-Rhodes spaces have G_0 = G", "derived",
                "Gottlieb-Rhodes " + to_string(c.gottlieb_rhodes) + ", G_0 = G " + to_string(g0.equals_group())));
  });

  guarded(r, "rhodes.gsigma-realization", tg.name, "G sigma_1 is an extension of G tau_1 by G_0", [&] {
    rhodes::GottliebRhodes gr = rhodes::gottlieb_rhodes_invariants(tg, 1);
    if (gr.realized)
      r.add(entry("rhodes.gsigma-realization", tg.name, 1, gr.order_agrees,
                  "|preimage of G_0 in sigma_1| = |G tau_1| * |G_0|", "G sigma_1 is an extension of G tau_1 by G_0",
                  "derived", gr.realized->label() + " of order " + std::to_string(gr.realized->order())));
  });

  guarded(r, "audit", tg.name, "equivariant Gottlieb and orbit-space Gottlieb implications",
          [&] { r.append(rhodes::orbit_gottlieb_audit(tg, m)); });
  guarded(r, "rhodes.aspherical-orbit", tg.name, "aspherical X: X/G Gottlieb iff X Gottlieb-Rhodes",
          [&] { r.append(rhodes::aspherical_orbit_check(tg, m)); });
  guarded(r, "rhodes.odd-sphere-center", tg.name, "free action on an odd sphere: G_1 of the orbit space is the center",
          [&] { r.append(rhodes::odd_sphere_center_check(tg)); });

  guarded(r, "spacecat.orbit-g1-central", tg.name, "G_1 lies in the center of pi_1", [&] {
    SpaceModel orbit = orbit_space(tg).model;
    const auto* c = std::get_if<CayleyGroup>(&orbit.pi1);
    if (!c) return;
    auto g1 = fox::gottlieb1_elements(orbit);
    if (!g1) return;
    Subgroup z = center(*c);
    bool central = std::all_of(g1->elements.begin(), g1->elements.end(), [&](int x) { return z.contains(x); });
    r.add(entry("spacecat.orbit-g1-central", tg.name, 1, central, "G_1 is contained in the center",
                "G_1 lies in the center of pi_1", "derived", "G_1 = " + names_of(*c, *g1)));
  });
  return r;
}

CheckReport verify_reference_values(const Catalog& catalog, int max_n) {
  CheckReport r;
  auto published = [&](std::string id, std::string model, int n, bool ok, std::string reference, std::string detail) {
    r.add(entry(std::move(id), std::move(model), n, ok, "reference value", std::move(reference), "published",
                std::move(detail)));
  };
  auto with_transformation = [&](const std::string& name, const std::string& reference,
                                 const std::function<void(const TransformationModel&)>& fn) {
    // Catalog entries and the antipodal templates both resolve here.
    std::optional<TransformationModel> tg;
    try {
      tg = catalog.transformation(name);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotFound) throw;
      r.add(CheckEntry{"reference.missing", name, 0, CheckStatus::NotApplicable, "model not in catalog", reference,
                       "published", ""});
      return;
    }
    guarded(r, "reference", name, reference, [&] { fn(*tg); });
  };
  auto with_space = [&](const std::string& name, const std::string& reference,
                        const std::function<void(const SpaceModel&)>& fn) {
    if (!catalog.has_space(name)) {
      r.add(CheckEntry{"reference.missing", name, 0, CheckStatus::NotApplicable, "model not in catalog", reference,
                       "published", ""});
      return;
    }
    guarded(r, "reference", name, reference, [&] { fn(catalog.space(name)); });
  };

  const std::string quaternion = "RP3 with Z2 x Z2: G sigma_1 is the quaternion group";
  with_transformation("rp3-z2z2", quaternion, [&](const TransformationModel& tg) {
    CayleyGroup s1 = rhodes::sigma1_group(tg);
    published("reference.sigma1-group", tg.name, 1, is_isomorphic(s1, from_catalog("Q8")), quaternion,
              "sigma_1 = " + identify(s1));
    rhodes::GottliebRhodes gr = rhodes::gottlieb_rhodes_invariants(tg, 1);
    bool ok = gr.summary && gr.realized && gr.realized->order() == 8 && !is_abelian(*gr.realized) &&
              gr.summary->finite_order() == ExtNat(8);
    published("reference.gsigma1", tg.name, 1, ok, quaternion,
              gr.realized ? gr.realized->label() + ", abelian " + (is_abelian(*gr.realized) ? "true" : "false")
                          : "not realized: " + gr.indeterminate_reason);
    auto g1 = fox::gottlieb_group(tg.space, 1);
    published("reference.gtau1", tg.name, 1, g1 && *g1 == FgAbelian::cyclic(2), quaternion,
              g1 ? "G tau_1 = " + g1->to_string() : "G_1 unknown");
    rhodes::G0Result g0 = rhodes::compute_g0(tg);
    published("reference.g0", tg.name, 0, g0.equals_group() == Verdict::True, quaternion,
              "G_0 = G: " + to_string(g0.equals_group()));
  });

  // G_0 for free actions on spheres, T^3 and S^3 x S^3 x S^3.
  const std::vector<std::pair<std::string, bool>> g0_corpus = {
      {"s1-z3", true},          {"s3-z4", true},          {"s3-q8", true},          {"S1-antipodal", true},
      {"S3-antipodal", true},   {"S5-antipodal", true},   {"S7-antipodal", true},   {"s2-antipodal", false},
      {"S2-antipodal", false},  {"S4-antipodal", false},  {"S6-antipodal", false},  {"t3-z2", false},
      {"s3cubed-z2", false},
  };
  for (const auto& [name, whole] : g0_corpus) {
    const std::string ref = whole ? "free actions on odd spheres: G_0 = G" : "G_0 is trivial";
    with_transformation(name, ref, [&](const TransformationModel& tg) {
      rhodes::G0Result g0 = rhodes::compute_g0(tg);
      bool ok = g0.determined() && (whole ? g0.subgroup.size() == tg.group.order() : g0.subgroup.size() == 1);
      published("reference.g0", tg.name, 0, ok, ref, "G_0 = " + names_of(tg.group, g0.subgroup));
    });
  }

  const std::string coset = "S^3/G: 1-Gottlieb iff G_1 = G";
  with_space("S3/Q8", coset, [&](const SpaceModel& x) {
    auto idx = fox::gottlieb_index(x, 1);
    published("reference.one-gottlieb", x.name, 1,
              fox::is_n_gottlieb(x, 1) == Verdict::False && fox::is_n_gottlieb_fox(x, 1) == Verdict::False && idx &&
                  *idx == ExtNat(4),
              coset, "[pi_1 : G_1] = " + (idx ? idx->to_string() : std::string("unknown")));
  });
  with_space("S3/Z4", coset, [&](const SpaceModel& x) {
    published("reference.one-gottlieb", x.name, 1, fox::is_n_gottlieb(x, 1) == Verdict::True, coset,
              "1-Gottlieb " + to_string(fox::is_n_gottlieb(x, 1)));
  });

  const std::string center_ref = "G_1 of S^3/G is the center of G";
  for (const std::string name : {"S3/Z4", "S3/Q8"}) {
    with_space(name, center_ref, [&](const SpaceModel& x) {
      const auto* c = std::get_if<CayleyGroup>(&x.pi1);
      auto g1 = fox::gottlieb1_elements(x);
      published("reference.center", x.name, 1, c && g1 && *g1 == center(*c), center_ref,
                c && g1 ? "G_1 = " + names_of(*c, *g1) + ", center = " + names_of(*c, center(*c)) : "no table data");
    });
  }

  const std::string lens = "S^3/Z4 is equivariant Gottlieb in every degree";
  with_transformation("s3-z4", lens, [&](const TransformationModel& tg) {
    rhodes::ClassificationReport c = rhodes::classify(tg, std::min(max_n, tg.space.truncation));
    published("reference.equivariant", tg.name, 0, c.equivariant == Verdict::True, lens,
              "equivariant " + to_string(c.equivariant));
  });

  const std::string cube = "S^3 x S^3 x S^3 with Z2: equivariant Gottlieb but not Gottlieb-Rhodes";
  with_transformation("s3cubed-z2", cube, [&](const TransformationModel& tg) {
    rhodes::ClassificationReport c = rhodes::classify(tg, std::min(max_n, tg.space.truncation));
    published("reference.equivariant-not-rhodes", tg.name, 0,
              c.equivariant == Verdict::True && c.gottlieb_rhodes == Verdict::False, cube,
              "equivariant " + to_string(c.equivariant) + ", Gottlieb-Rhodes " + to_string(c.gottlieb_rhodes));
  });

  const std::string torus = "T^3 with Z2: Gottlieb-Fox but not Gottlieb-Rhodes, center of pi_1(X/G) is Z";
  with_transformation("t3-z2", torus, [&](const TransformationModel& tg) {
    rhodes::ClassificationReport c = rhodes::classify(tg, std::min(max_n, tg.space.truncation));
    published("reference.fox-not-rhodes", tg.name, 0,
              c.gottlieb_fox == Verdict::True && c.gottlieb_rhodes == Verdict::False, torus,
              "Gottlieb-Fox " + to_string(c.gottlieb_fox) + ", Gottlieb-Rhodes " + to_string(c.gottlieb_rhodes));
    SpaceModel orbit = orbit_space(tg).model;
    const auto* v = std::get_if<VirtAbelian>(&orbit.pi1);
    FgAbelian z = v ? center_summary(*v).group : FgAbelian();
    published("reference.orbit-center", tg.name, 1, v && z == FgAbelian::free(1), torus,
              "center of pi_1(X/G) = " + z.to_string());
  });

  // Lie groups are H-spaces, hence Gottlieb; even spheres are not.
  const std::string hspace = "H-spaces are Gottlieb spaces";
  for (const std::string name : {"S1", "S3", "T3", "RP3", "S3xS3xS3"}) {
    with_space(name, hspace, [&](const SpaceModel& x) {
      Verdict v = Verdict::True;
      const int m = std::min(max_n, x.truncation);
      for (int n = 1; n <= m; ++n) v = verdict_and(v, fox::is_n_gottlieb(x, n));
      published("reference.h-space", x.name, m, v == Verdict::True, hspace, "Gottlieb through " + std::to_string(m) +
                                                                               ": " + to_string(v));
    });
  }
  const std::string even = "G_2k of an even sphere S^2k is trivial";
  with_space("S2", even, [&](const SpaceModel& x) {
    auto idx = fox::gottlieb_index(x, 2);
    published("reference.even-sphere", x.name, 2, idx && idx->is_infinite(), even,
              "[pi_2 : G_2] = " + (idx ? idx->to_string() : std::string("unknown")));
  });

  // Orbit spaces of coverings keep the higher Gottlieb groups of X.
  for (const std::string name : {"s3-z4", "s3-q8"}) {
    with_transformation(name, "catalog orbit entries agree with the computed orbit space",
                        [&](const TransformationModel& tg) {
                          SpaceModel orbit = orbit_space(tg).model;
                          if (!catalog.has_space(orbit.name)) return;
                          SpaceModel stored = catalog.space(orbit.name);
                          bool ok = orbit.truncation == stored.truncation;
                          for (int i = 2; ok && i <= orbit.truncation; ++i)
                            ok = orbit.pi_at(i) == stored.pi_at(i) && orbit.gottlieb_at(i) == stored.gottlieb_at(i);
                          r.add(entry("reference.orbit-entry", tg.name, 0, ok, "pi_i and G_i agree for i >= 2",
                                      "catalog orbit entries agree with the computed orbit space", "derived",
                                      "catalog entry " + stored.name));
                        });
  }
  return r;
}

CheckReport verify_multiplicities(int bound) {
  // Pascal triangle by repeated addition, independent of the library binomial.
  std::vector<std::vector<Integer>> pascal(static_cast<std::size_t>(bound) + 1);
  for (int a = 0; a <= bound; ++a) {
    pascal[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(a) + 1, Integer(1));
    for (int b = 1; b < a; ++b)
      pascal[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          pascal[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] +
          pascal[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)];
  }
  auto c = [&](int a, int b) -> Integer {
    if (a < 0 || b < 0 || b > a) return 0;
    return pascal[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  int pairs = 0, pascal_bad = 0, telescoping_bad = 0, library_bad = 0;
  for (int n = 1; n <= bound; ++n)
    for (int i = 1; i <= n; ++i) {
      ++pairs;
      fox::MultiplicityTriple t = fox::multiplicities(n, i);
      if (t.alpha != c(n - 2, i - 2) || t.beta != c(n - 1, i - 2) || t.gamma != c(n - 1, i - 1)) ++library_bad;
      if (t.beta + t.gamma != c(n, i - 1)) ++pascal_bad;
      Integer sum = i == 1 ? Integer(1) : Integer(0);
      for (int m = std::max(i, 2); m <= n; ++m) sum += c(m - 2, i - 2);
      if (sum != t.gamma || fox::stacked_multiplicity(n, i) != t.gamma) ++telescoping_bad;
    }
  CheckReport r;
  const std::string range = std::to_string(pairs) + " pairs (i, n) with n <= " + std::to_string(bound);
  r.add(entry("fox.multiplicity.values", "", bound, library_bad == 0, "alpha, beta, gamma against Pascal's triangle",
              "binomial layer multiplicities", "derived", range + ", mismatches " + std::to_string(library_bad)));
  r.add(entry("fox.multiplicity.pascal", "", bound, pascal_bad == 0, "beta_i + gamma_i = C(n, i-1)",
              "Pascal identity for the multiplicities", "published", range + ", mismatches " + std::to_string(pascal_bad)));
  r.add(entry("fox.multiplicity.telescoping", "", bound, telescoping_bad == 0,
              "sum over m of C(m-2, i-2) = C(n-1, i-1)", "stacked loop-space kernels give tau_n", "derived",
              range + ", mismatches " + std::to_string(telescoping_bad)));
  return r;
}

CheckReport verify_catalog(const Catalog& catalog, int max_n) {
  CheckReport r = verify_multiplicities(30);
  std::vector<std::string> spaces = catalog.space_names();
  for (int d = 1; d <= 7; ++d) {
    std::string s = "S" + std::to_string(d);
    if (std::find(spaces.begin(), spaces.end(), s) == spaces.end()) spaces.push_back(s);
  }
  for (const auto& name : spaces) r.append(verify_space(catalog.space(name), max_n));
  std::vector<std::string> groups = catalog.transformation_names();
  for (int d = 1; d <= 7; ++d) {
    std::string s = "S" + std::to_string(d) + "-antipodal";
    if (std::find(groups.begin(), groups.end(), s) == groups.end()) groups.push_back(s);
  }
  for (const auto& name : groups) r.append(verify_transformation(catalog.transformation(name), max_n));
  r.append(verify_reference_values(catalog, max_n));
  return r;
}

}  // namespace thg
