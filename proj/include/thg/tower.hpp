#pragma once

// Abelian-by-finite groups A . Q given by an action of Q on A and a normalized
// 2-cocycle, with product (a, q)(b, r) = (a + q.b + c(q, r), qr).

#include <optional>
#include <string>
#include <vector>

#include "thg/abelian.hpp"
#include "thg/fingroup.hpp"

namespace thg {

/// Throws InvariantViolation unless `m` is an automorphism of `layer` in the
/// supported form: unimodular on free coordinates, +-1 on each torsion
/// coordinate, no mixing between the two.
void validate_automorphism(const FgAbelian& layer, const IntMatrix& m, const std::string& what);

/// Equality as maps on the layer (torsion coordinates compared modulo d).
bool same_automorphism(const FgAbelian& layer, const IntMatrix& m, const IntMatrix& n);
bool acts_trivially(const FgAbelian& layer, const IntMatrix& m);

struct TowerElement {
  Vector layer;  // free coordinates then reduced torsion residues
  int base = 0;

  friend bool operator==(const TowerElement&, const TowerElement&) = default;
};

class VirtAbelian {
 public:
  /// `action[q]` acts on column coordinate vectors of `layer`. Free coordinates
  /// may mix; torsion coordinates take a +-1 multiplier each. `cocycle` is
  /// indexed q * |Q| + r. Throws InvariantViolation when the action is not a
  /// homomorphism or the cocycle is not normalized or fails the cocycle identity.
  VirtAbelian(CayleyGroup base, FgAbelian layer, std::vector<IntMatrix> action, std::vector<Vector> cocycle);

  /// Zero cocycle, trivial action.
  static VirtAbelian split(CayleyGroup base, FgAbelian layer);

  const CayleyGroup& base() const { return base_; }
  const FgAbelian& layer() const { return layer_; }
  const IntMatrix& action(int q) const { return action_.at(static_cast<std::size_t>(q)); }
  const Vector& cocycle(int q, int r) const;

  Vector act(int q, std::span<const Integer> a) const;

  TowerElement identity() const;
  TowerElement make(Vector layer, int base) const;
  TowerElement multiply(const TowerElement& x, const TowerElement& y) const;
  TowerElement inverse(const TowerElement& x) const;
  bool equal(const TowerElement& x, const TowerElement& y) const;

  ExtNat order() const;
  bool action_trivial() const;
  bool is_abelian() const;

  /// "(1,0,0;t)" style names, parseable by parse_element.
  std::string element_name(const TowerElement& x) const;
  TowerElement parse_element(std::string_view name) const;

  /// Every element, in the order used by to_cayley. Requires a finite layer.
  std::vector<TowerElement> elements() const;

 private:
  void check_element(const TowerElement& x) const;

  CayleyGroup base_;
  FgAbelian layer_;
  std::vector<IntMatrix> action_;
  std::vector<Vector> cocycle_;
};

/// Center of a VirtAbelian: an extension of the fixed layer by `base_part`.
struct CenterSummary {
  FgAbelian group;               // isomorphism type of the center
  IntMatrix fixed_generators;    // rows generating the fixed sublayer
  FgAbelian fixed_layer;         // structure of that sublayer
  Subgroup base_part;            // base elements carrying central elements
  std::vector<TowerElement> generators;  // generating set of the center
  ExtNat finite_order;
  ExtNat index;                  // [G : Z(G)]
};

CenterSummary center_summary(const VirtAbelian& g);

/// Cayley table of a finite VirtAbelian (order <= 64).
CayleyGroup to_cayley(const VirtAbelian& g);

FgAbelian abelianization(const VirtAbelian& g);

/// |g| = |layer| * |base|, counting elements when the group is finite.
bool extension_order_check(const VirtAbelian& g);

/// Some (a, q) with q != e and (a, q)^ord(q) = identity, if one exists.
std::optional<TowerElement> torsion_witness(const VirtAbelian& g);

// ---------------------------------------------------------------- summaries

/// Invariants of a group that is not (or not yet) realized element-wise.
struct GroupInfo {
  std::string label;
  ExtNat order;
  Integer free_rank = 0;  // Hirsch length
  bool abelian = true;
};

struct TowerLayer {
  int degree = 0;
  FgAbelian group;
  Integer multiplicity = 0;
};

/// Invariant-level description: a base group with abelian layers stacked on it.
struct TowerSummary {
  GroupInfo base;
  std::vector<TowerLayer> layers;
  bool is_direct_product = true;

  ExtNat finite_order() const;
  Integer free_rank() const;
  std::string to_string() const;
};

}  // namespace thg
