#include "thg/rhodes.hpp"

#include <algorithm>
#include <map>

#include "thg/error.hpp"
#include "thg/fox.hpp"

namespace thg::rhodes {

std::string to_string(G0Verdict v) {
  switch (v) {
    case G0Verdict::In: return "in";
    case G0Verdict::NotIn: return "not-in";
    case G0Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

bool G0Result::determined() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const G0Entry& e) { return e.verdict == G0Verdict::Undetermined; });
}

Verdict G0Result::equals_group() const {
  bool undetermined = false;
  for (const auto& e : entries) {
    if (e.verdict == G0Verdict::NotIn) return Verdict::False;
    if (e.verdict == G0Verdict::Undetermined) undetermined = true;
  }
  return undetermined ? Verdict::Indeterminate : Verdict::True;
}

namespace {

void require_free(const TransformationModel& tg) {
  if (!tg.free) throw Error(ErrorKind::Unsupported, tg.name + ": only free actions are modelled");
}

void require_degree(const TransformationModel& tg, int n, int lowest) {
  if (n < lowest) throw Error(ErrorKind::InvalidInput, "degree must be >= " + std::to_string(lowest));
  if (n > tg.space.truncation)
    throw Error(ErrorKind::InsufficientData, tg.space.name + ": degree " + std::to_string(n) +
                                                 " exceeds truncation " + std::to_string(tg.space.truncation));
}

CayleyGroup induced_table(const CayleyGroup& g, const std::vector<int>& elems) {
  std::map<int, int> pos;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    pos[elems[i]] = static_cast<int>(i);
    names.push_back(g.name(elems[i]));
  }
  std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      auto it = pos.find(g.mul(elems[a], elems[b]));
      if (it == pos.end()) throw Error(ErrorKind::Internal, "element set is not closed");
      table[a][b] = it->second;
    }
  return CayleyGroup::from_table(std::move(names), std::move(table));
}

CheckStatus implication_status(Verdict hyp, Verdict concl) {
  if (hyp == Verdict::False) return CheckStatus::Vacuous;
  if (hyp == Verdict::Indeterminate || concl == Verdict::Indeterminate) return CheckStatus::Indeterminate;
  return concl == Verdict::True ? CheckStatus::Confirmed : CheckStatus::Violation;
}

std::string subgroup_names(const CayleyGroup& g, const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.elements.size(); ++i) out += (i ? ", " : "") + g.name(s.elements[i]);
  return out + "}";
}

std::map<int, Integer> degree_multiplicities(const TowerSummary& t, bool base_counts) {
  std::map<int, Integer> out;
  if (base_counts) out[1] = 1;
  for (const auto& l : t.layers) out[l.degree] += l.multiplicity;
  return out;
}

}  // namespace

G0Result compute_g0(const TransformationModel& tg) {
  G0Result out;
  const SpaceModel& x = tg.space;
  const int n = static_cast<int>(tg.group.order());
  std::vector<int> in;
  for (int g = 0; g < n; ++g) {
    G0Entry e{tg.group.name(g), G0Verdict::Undetermined, "no rule applies"};
    if (tg.g0) {
      bool listed = std::find(tg.g0->begin(), tg.g0->end(), e.element) != tg.g0->end();
      e.verdict = listed ? G0Verdict::In : G0Verdict::NotIn;
      e.rule = "explicit g0 data";
    } else if (g == tg.group.identity()) {
      e.verdict = G0Verdict::In;
      e.rule = "identity element";
    } else {
      std::optional<int> moved;
      for (int i = 2; i <= x.truncation && !moved; ++i)
        if (!acts_trivially(x.pi_at(i), tg.action_at(g, i))) moved = i;
      const auto* p1 = std::get_if<FgAbelian>(&x.pi1);
      const bool moves_pi1 = p1 && !acts_trivially(*p1, tg.action_at(g, 1));
      const bool odd_sphere = tg.sphere_dimension && *tg.sphere_dimension % 2 == 1;
      const bool even_sphere = tg.sphere_dimension && *tg.sphere_dimension % 2 == 0;
      if (moved) {
        e.verdict = G0Verdict::NotIn;
        e.rule = "acts nontrivially on pi_" + std::to_string(*moved);
      } else if (moves_pi1) {
        e.verdict = G0Verdict::NotIn;
        e.rule = "induces a non-inner automorphism of pi_1";
      } else if (x.aspherical) {
        e.verdict = G0Verdict::In;
        e.rule = "aspherical and inner on pi_1";
      } else if (odd_sphere && tg.free) {
        e.verdict = G0Verdict::In;
        e.rule = "free action on an odd sphere has degree 1";
      } else if (even_sphere && tg.free) {
        e.verdict = G0Verdict::NotIn;
        e.rule = "free action on an even sphere has degree -1";
      }
    }
    if (e.verdict == G0Verdict::In) in.push_back(g);
    out.entries.push_back(std::move(e));
  }
  out.subgroup = Subgroup{in};
  return out;
}

SigmaSummary sigma_invariants(const TransformationModel& tg, int n) {
  require_free(tg);
  require_degree(tg, n, 1);
  SigmaSummary out;
  OrbitSpace orbit = orbit_space(tg);
  out.orbit_path = fox::tau_invariants(orbit.model, n);
  TowerSummary tx = fox::tau_invariants(tg.space, n);
  out.bookkeeping_order = ExtNat(static_cast<long>(tg.group.order())) * tx.finite_order();
  out.bookkeeping_rank = tx.free_rank();
  out.consistent = out.orbit_path.finite_order() == out.bookkeeping_order &&
                   out.orbit_path.free_rank() == out.bookkeeping_rank;
  return out;
}

CayleyGroup sigma1_group(const TransformationModel& tg) {
  const auto* a = std::get_if<FgAbelian>(&tg.space.pi1);
  if (!a) throw Error(ErrorKind::Unsupported, "sigma_1 tables need pi_1(X) given by abelian invariants");
  if (!a->is_finite()) throw Error(ErrorKind::Unsupported, "sigma_1 is infinite");
  if (a->is_trivial()) return tg.group;
  if (!tg.cocycle) throw Error(ErrorKind::InvalidInput, "a cocycle is required when pi_1(X) is nontrivial");
  VirtAbelian ext = tg.pi1_extension();
  if (ext.order().value() > static_cast<long>(CayleyGroup::kSearchCap))
    throw Error(ErrorKind::Unsupported, "sigma_1 tables are limited to order <= 64");
  CayleyGroup c = to_cayley(ext);
  c.set_label(identify(c));
  return c;
}

CheckReport rhodes_split_check(const TransformationModel& tg, int n) {
  require_free(tg);
  require_degree(tg, n, 2);
  CheckReport r;
  SpaceModel orbit = orbit_space(tg).model;
  TowerSummary sn = fox::tau_invariants(orbit, n), sp = fox::tau_invariants(orbit, n - 1),
               loop = fox::loop_tau_invariants(tg.space, n);
  auto full = degree_multiplicities(sn, true), prev = degree_multiplicities(sp, true),
       kern = degree_multiplicities(loop, false);
  bool layers_ok = true;
  std::string detail;
  for (int i = 1; i <= n; ++i) {
    // Layer groups agree degree by degree since pi_i(X/G) = pi_i(X) for i >= 2.
    if (i >= 2 && !(orbit.pi_at(i) == tg.space.pi_at(i))) layers_ok = false;
    if (full[i] != kern[i] + prev[i]) {
      layers_ok = false;
      detail += "degree " + std::to_string(i) + ": " + full[i].get_str() + " != " + Integer(kern[i] + prev[i]).get_str() + "; ";
    }
  }
  if (layers_ok) detail = "multiplicities split degree by degree";
  r.add(CheckEntry{"rhodes.split.layers", tg.name, n, layers_ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "layers(sigma_n) = layers(kernel) + layers(sigma_{n-1})", "Rhodes group split sequence: layer multiset",
                   "derived", detail});
  bool base_ok = sn.base.label == sp.base.label && sn.base.order == sp.base.order &&
                 sn.base.order == ExtNat(static_cast<long>(tg.group.order())) * pi1_order(tg.space.pi1);
  r.add(CheckEntry{"rhodes.split.base", tg.name, n, base_ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "sigma_n and sigma_{n-1} share the base pi_1(X/G)", "Rhodes group split sequence: base", "derived",
                   sn.base.label + " of order " + sn.base.order.to_string()});
  ExtNat lhs = sn.finite_order(), rhs = loop.finite_order() * sp.finite_order();
  r.add(CheckEntry{"rhodes.split.order", tg.name, n, lhs == rhs ? CheckStatus::Pass : CheckStatus::Fail,
                   "|sigma_n| = |kernel| * |sigma_{n-1}|", "Rhodes group split sequence: order", "derived",
                   lhs.to_string() + " vs " + rhs.to_string()});
  Integer rl = sn.free_rank(), rr = loop.free_rank() + sp.free_rank();
  r.add(CheckEntry{"rhodes.split.rank", tg.name, n, rl == rr ? CheckStatus::Pass : CheckStatus::Fail,
                   "rank sigma_n = rank kernel + rank sigma_{n-1}", "Rhodes group split sequence: free rank", "derived",
                   rl.get_str() + " vs " + rr.get_str()});
  return r;
}

GottliebRhodes gottlieb_rhodes_invariants(const TransformationModel& tg, int n) {
  require_free(tg);
  require_degree(tg, n, 1);
  GottliebRhodes out;
  G0Result g0 = compute_g0(tg);
  out.g0_order = ExtNat(static_cast<long>(g0.subgroup.size()));
  if (!g0.determined()) {
    out.indeterminate_reason = "G_0 is undetermined";
    return out;
  }
  fox::GottliebFox gf = fox::gottlieb_fox_invariants(tg.space, n);
  if (!gf.summary) {
    out.indeterminate_reason = "no Gottlieb data in degree";
    for (int d : gf.missing) out.indeterminate_reason += " " + std::to_string(d);
    return out;
  }
  TowerSummary t = *gf.summary;
  CayleyGroup g0_table = induced_table(tg.group, g0.subgroup.elements);
  const std::string g0_label = identify(g0_table);
  t.base.label = t.base.label + " by G_0 = " + g0_label;
  t.base.order = t.base.order * out.g0_order;
  t.base.abelian = t.base.abelian && g0.subgroup.size() == 1;
  t.is_direct_product = t.is_direct_product && g0.subgroup.size() == 1;

  const auto* p1 = std::get_if<FgAbelian>(&tg.space.pi1);
  auto g1_index = fox::gottlieb_index(tg.space, 1);
  const bool realizable = n == 1 && p1 && p1->is_finite() && g1_index && g1_index->is_one() &&
                          (p1->is_trivial() || tg.cocycle) &&
                          p1->order().value() * static_cast<long>(tg.group.order()) <=
                              static_cast<long>(CayleyGroup::kSearchCap);
  if (realizable) {
    CayleyGroup sigma;
    std::vector<int> preimage;
    if (p1->is_trivial()) {
      sigma = tg.group;
      preimage = g0.subgroup.elements;
    } else {
      VirtAbelian ext = tg.pi1_extension();
      sigma = to_cayley(ext);
      auto elems = ext.elements();
      for (std::size_t e = 0; e < elems.size(); ++e)
        if (g0.subgroup.contains(elems[e].base)) preimage.push_back(static_cast<int>(e));
    }
    CayleyGroup real = induced_table(sigma, preimage);
    real.set_label(identify(real));
    out.order_agrees = ExtNat(static_cast<long>(real.order())) == t.finite_order();
    t.base.abelian = is_abelian(real);
    t.base.label = real.label();
    out.realized = std::move(real);
  }
  out.summary = std::move(t);
  return out;
}

Verdict is_equivariant_n_gottlieb(const TransformationModel& tg, const SpaceModel& orbit, int n, std::string* rule) {
  const SpaceModel& x = tg.space;
  auto set_rule = [&](const char* r) {
    if (rule) *rule = r;
  };
  const bool ambient_trivial = n == 1 ? pi1_is_trivial(x.pi1) : x.pi_at(n).is_trivial();
  if (ambient_trivial) {
    set_rule("trivial homotopy group");
    return Verdict::True;
  }
  auto it = tg.equivariant_gottlieb.find(n);
  if (it != tg.equivariant_gottlieb.end()) {
    SpaceModel probe = x;
    probe.gottlieb[n] = it->second;
    set_rule("explicit equivariant data");
    return verdict_of(fox::gottlieb_index(probe, n)->is_one());
  }
  if (n >= 2) {
    set_rule("p_* identifies it with G_n(X/G)");
    return fox::is_n_gottlieb(orbit, n);
  }
  set_rule("no equivariant data in degree 1");
  return Verdict::Indeterminate;
}

ClassificationReport classify(const TransformationModel& tg, int max_n) {
  require_free(tg);
  require_degree(tg, max_n, 1);
  ClassificationReport out;
  out.model = tg.name;
  SpaceModel orbit = orbit_space(tg).model;
  out.g0 = compute_g0(tg);
  const Verdict g0_full = out.g0.equals_group();
  for (int n = 1; n <= max_n; ++n) {
    DegreeVerdicts d;
    d.n = n;
    d.gottlieb = fox::is_n_gottlieb(tg.space, n);
    d.gottlieb_fox = fox::is_n_gottlieb_fox(tg.space, n);
    d.gottlieb_rhodes = verdict_and(d.gottlieb_fox, g0_full);
    d.equivariant = is_equivariant_n_gottlieb(tg, orbit, n, &d.equivariant_rule);
    out.gottlieb = verdict_and(out.gottlieb, d.gottlieb);
    out.gottlieb_fox = verdict_and(out.gottlieb_fox, d.gottlieb_fox);
    out.gottlieb_rhodes = verdict_and(out.gottlieb_rhodes, d.gottlieb_rhodes);
    out.equivariant = verdict_and(out.equivariant, d.equivariant);
    out.orbit_gottlieb = verdict_and(out.orbit_gottlieb, fox::is_n_gottlieb(orbit, n));
    out.degrees.push_back(std::move(d));
  }
  return out;
}

CheckReport orbit_gottlieb_audit(const TransformationModel& tg, int max_n) {
  require_free(tg);
  require_degree(tg, max_n, 1);
  CheckReport r;
  SpaceModel orbit = orbit_space(tg).model;
  for (int n = 1; n <= max_n; ++n) {
    std::string rule;
    const Verdict eq = is_equivariant_n_gottlieb(tg, orbit, n, &rule);
    const Verdict og = fox::is_n_gottlieb(orbit, n);
    const std::string detail = "equivariant " + std::to_string(n) + "-Gottlieb: " + to_string(eq) + " (" + rule +
                               "); X/G " + std::to_string(n) + "-Gottlieb: " + to_string(og);

    CheckStatus s1 = implication_status(eq, og);
    std::string rule1 = "equivariant n-Gottlieb implies X/G n-Gottlieb for n >= 2";
    if (n == 1) {
      rule1 = "degree 1 is excluded from the forward implication";
      if (s1 == CheckStatus::Violation) s1 = CheckStatus::DocumentedException;
    }
    r.add(CheckEntry{"audit.forward", tg.name, n, s1, rule1, "free actions: equivariant Gottlieb on X gives Gottlieb on X/G",
                     "published", detail});

    r.add(CheckEntry{"audit.backward", tg.name, n, implication_status(og, eq),
                     "X/G n-Gottlieb implies equivariant n-Gottlieb",
                     "free actions: Gottlieb on X/G gives equivariant Gottlieb on X", "published", detail});

    if (n == 1) {
      if (!tg.space.aspherical) {
        r.add(CheckEntry{"audit.aspherical", tg.name, 1, CheckStatus::NotApplicable, "needs an aspherical X",
                         "aspherical X: equivariant 1-Gottlieb gives 1-Gottlieb X/G", "published", "X is not aspherical"});
      } else {
        const FgAbelian ab = pi1_abelianization(orbit.pi1);
        const bool free_same_rank = pi1_is_abelian(orbit.pi1) && ab.torsion().empty() &&
                                    Integer(static_cast<unsigned long>(ab.rank())) == pi1_free_rank(tg.space.pi1);
        const Verdict concl = verdict_and(og, verdict_of(free_same_rank));
        r.add(CheckEntry{"audit.aspherical", tg.name, 1, implication_status(eq, concl),
                         "central extension of a free abelian group is free abelian of the same rank",
                         "aspherical X: equivariant 1-Gottlieb gives 1-Gottlieb X/G", "published",
                         detail + "; abelianization of pi_1(X/G) = " + ab.to_string()});
      }
    }
  }
  return r;
}

CheckReport aspherical_orbit_check(const TransformationModel& tg, int max_n) {
  require_free(tg);
  if (!tg.space.aspherical) throw Error(ErrorKind::NotApplicable, tg.name + ": X is not aspherical");
  ClassificationReport c = classify(tg, max_n);
  const Verdict lhs = c.orbit_gottlieb, rhs = c.gottlieb_rhodes;
  CheckStatus st = (lhs == Verdict::Indeterminate || rhs == Verdict::Indeterminate)
                       ? CheckStatus::Indeterminate
                       : (lhs == rhs ? CheckStatus::Pass : CheckStatus::Fail);
  std::string detail = "X/G Gottlieb: " + to_string(lhs) + "; X Gottlieb-Rhodes: " + to_string(rhs);
  SpaceModel orbit = orbit_space(tg).model;
  if (const auto* v = std::get_if<VirtAbelian>(&orbit.pi1)) {
    CenterSummary z = center_summary(*v);
    detail += "; center of pi_1(X/G) = " + z.group.to_string() + " of index " + z.index.to_string();
  }
  CheckReport r;
  r.add(CheckEntry{"rhodes.aspherical-orbit", tg.name, max_n, st, "compare both sides through max degree",
                   "aspherical X: X/G Gottlieb iff X Gottlieb-Rhodes", "published", detail});
  return r;
}

CheckReport odd_sphere_center_check(const TransformationModel& tg) {
  if (!tg.sphere_dimension || *tg.sphere_dimension % 2 == 0 || !tg.free)
    throw Error(ErrorKind::NotApplicable, tg.name + ": needs a free action on an odd sphere");
  SpaceModel orbit = orbit_space(tg).model;
  CheckStatus st = CheckStatus::Indeterminate;
  std::string detail;
  if (const auto* c = std::get_if<CayleyGroup>(&orbit.pi1)) {
    auto g1 = fox::gottlieb1_elements(orbit);
    Subgroup z = center(*c);
    if (g1) {
      st = *g1 == z ? CheckStatus::Pass : CheckStatus::Fail;
      detail = "G_1 = " + subgroup_names(*c, *g1) + ", center = " + subgroup_names(*c, z);
    } else {
      detail = "G_1 of the orbit space is unknown";
    }
  } else {
    auto idx = fox::gottlieb_index(orbit, 1);
    ExtNat center_index = 1;
    if (const auto* v = std::get_if<VirtAbelian>(&orbit.pi1)) center_index = center_summary(*v).index;
    if (idx) {
      st = *idx == center_index ? CheckStatus::Pass : CheckStatus::Fail;
      detail = "[pi_1 : G_1] = " + idx->to_string() + ", [pi_1 : center] = " + center_index.to_string();
    } else {
      detail = "G_1 of the orbit space is unknown";
    }
  }
  CheckReport r;
  r.add(CheckEntry{"rhodes.odd-sphere-center", tg.name, 1, st, "compare G_1 with the center of pi_1",
                   "free action on an odd sphere: G_1 of the orbit space is the center", "published", detail});
  return r;
}

}  // namespace thg::rhodes
