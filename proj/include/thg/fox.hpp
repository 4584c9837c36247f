#pragma once

// Torus homotopy groups at the level of invariants: binomial layer
// multiplicities, the loop-space kernel, Gottlieb subgroups and the
// Gottlieb / Gottlieb-Fox predicates.

#include <optional>
#include <string>
#include <vector>

#include "thg/report.hpp"
#include "thg/spacecat.hpp"
#include "thg/tower.hpp"

namespace thg::fox {

/// C(a, b), zero when b < 0 or b > a.
Integer binomial(long a, long b);

struct MultiplicityTriple {
  int n = 0;
  int i = 0;
  Integer alpha;  // C(n-2, i-2)
  Integer beta;   // C(n-1, i-2)
  Integer gamma;  // C(n-1, i-1)
};

/// Throws InvalidInput unless 1 <= i <= n.
MultiplicityTriple multiplicities(int n, int i);

/// Multiplicity of pi_i in tau_n obtained by stacking the loop-space kernels
/// level by level: sum over m = max(i, 2)..n of C(m-2, i-2), and 1 for i = 1.
Integer stacked_multiplicity(int n, int i);

/// Base pi_1, layers pi_i with multiplicity C(n-1, i-1) for 2 <= i <= n.
/// Throws InsufficientData past the truncation.
TowerSummary tau_invariants(const SpaceModel& x, int n);

/// Layers pi_i with multiplicity C(n-2, i-2) for 2 <= i <= n; trivial base.
TowerSummary loop_tau_invariants(const SpaceModel& x, int n);

/// G_i as an abelian group, nullopt when the model does not record it.
std::optional<FgAbelian> gottlieb_group(const SpaceModel& x, int i);

/// [pi_i : G_i], nullopt when G_i is not recorded.
std::optional<ExtNat> gottlieb_index(const SpaceModel& x, int i);

/// G_1 as a set of elements when pi_1 is given by a table.
std::optional<Subgroup> gottlieb1_elements(const SpaceModel& x);

struct GottliebFox {
  std::optional<TowerSummary> summary;  // empty when some G_i is unknown
  std::vector<int> missing;             // degrees without Gottlieb data
};

/// Base G_1, layers G_i with multiplicity C(n-1, i-1).
GottliebFox gottlieb_fox_invariants(const SpaceModel& x, int n);

/// G_n = pi_n.
Verdict is_n_gottlieb(const SpaceModel& x, int n);

/// Product over i <= n of [pi_i : G_i]^C(n-1, i-1) equals 1.
Verdict is_n_gottlieb_fox(const SpaceModel& x, int n);

/// Layer identity tau_n = tau_{n-1}(loop space) + tau_{n-1}, with order and
/// rank multiplicativity. One entry per identity.
CheckReport fox_sequence_check(const SpaceModel& x, int n);

/// For each n <= max_n: (G_m = pi_m for all m <= n) agrees with the index
/// product of is_n_gottlieb_fox.
CheckReport gottlieb_fox_equivalence_check(const SpaceModel& x, int max_n);

}  // namespace thg::fox
