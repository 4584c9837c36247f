#pragma once

// Rhodes groups of a free transformation group, the subgroup G_0 of elements
// homotopic to the identity, Gottlieb-Rhodes groups and the classification
// audits relating X, X/G and the equivariant Gottlieb groups.

#include <optional>
#include <string>
#include <vector>

#include "thg/report.hpp"
#include "thg/spacecat.hpp"
#include "thg/tower.hpp"

namespace thg::rhodes {

enum class G0Verdict { In, NotIn, Undetermined };
std::string to_string(G0Verdict v);

struct G0Entry {
  std::string element;
  G0Verdict verdict = G0Verdict::Undetermined;
  std::string rule;
};

struct G0Result {
  Subgroup subgroup;              // elements with verdict In
  std::vector<G0Entry> entries;   // one per group element, in table order

  bool determined() const;
  /// True / False when decidable from the determined entries.
  Verdict equals_group() const;
};

/// First matching rule per element: explicit list; identity; nontrivial
/// action on pi_i (i >= 2) or pi_1; aspherical with trivial pi_1 action;
/// odd sphere; even sphere.
G0Result compute_g0(const TransformationModel& tg);

struct SigmaSummary {
  TowerSummary orbit_path;   // tau_n(X/G)
  ExtNat bookkeeping_order;  // |G| * |tau_n(X)|
  Integer bookkeeping_rank;  // rank tau_n(X)
  bool consistent = false;
};

/// sigma_n computed as tau_n of the orbit space, with the |G| * |tau_n(X)| cross-check.
SigmaSummary sigma_invariants(const TransformationModel& tg, int n);

/// The extension of pi_1(X) by G as a table. Needs a finite pi_1(X) and a
/// cocycle when pi_1(X) is nontrivial.
CayleyGroup sigma1_group(const TransformationModel& tg);

/// sigma_n = tau_{n-1}(loop space) + sigma_{n-1} on layers, same base, with
/// order and rank multiplicativity.
CheckReport rhodes_split_check(const TransformationModel& tg, int n);

struct GottliebRhodes {
  std::optional<TowerSummary> summary;  // empty when indeterminate
  std::string indeterminate_reason;
  ExtNat g0_order;
  std::optional<CayleyGroup> realized;  // preimage of G_0 in sigma_1, when it applies
  bool order_agrees = true;
};

/// Layers of the Gottlieb-Fox group over the base G_0.
GottliebRhodes gottlieb_rhodes_invariants(const TransformationModel& tg, int n);

/// Equivariant G_n(X) = pi_n(X): explicit model data, forced when pi_n is
/// trivial, otherwise via p_* from G_n(X/G) for n >= 2.
Verdict is_equivariant_n_gottlieb(const TransformationModel& tg, const SpaceModel& orbit, int n,
                                  std::string* rule = nullptr);

struct DegreeVerdicts {
  int n = 0;
  Verdict gottlieb = Verdict::Indeterminate;
  Verdict gottlieb_fox = Verdict::Indeterminate;
  Verdict gottlieb_rhodes = Verdict::Indeterminate;
  Verdict equivariant = Verdict::Indeterminate;
  std::string equivariant_rule;
};

struct ClassificationReport {
  std::string model;
  G0Result g0;
  std::vector<DegreeVerdicts> degrees;
  Verdict gottlieb = Verdict::True;
  Verdict gottlieb_fox = Verdict::True;
  Verdict gottlieb_rhodes = Verdict::True;
  Verdict equivariant = Verdict::True;
  Verdict orbit_gottlieb = Verdict::True;
};

ClassificationReport classify(const TransformationModel& tg, int max_n);

/// Implications between equivariant Gottlieb data on X and Gottlieb groups of
/// X/G: (1) n >= 2 forward, (2) backward, (3) aspherical degree 1 with rank.
CheckReport orbit_gottlieb_audit(const TransformationModel& tg, int max_n);

/// Aspherical X: X/G Gottlieb iff X Gottlieb-Rhodes. Throws NotApplicable otherwise.
CheckReport aspherical_orbit_check(const TransformationModel& tg, int max_n);

/// Free action on an odd sphere: G_1(X/G) is the center of pi_1(X/G).
/// Throws NotApplicable otherwise.
CheckReport odd_sphere_center_check(const TransformationModel& tg);

}  // namespace thg::rhodes
