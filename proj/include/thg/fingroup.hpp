#pragma once

// Finite groups given by their multiplication table.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thg/abelian.hpp"

namespace thg {

class CayleyGroup {
 public:
  /// Largest order for which associativity is checked and isomorphism searched.
  static constexpr std::size_t kSearchCap = 64;

  CayleyGroup();  // trivial group with element "e"

  /// Validates Latin square, identity, inverses and (order <= 64) associativity.
  static CayleyGroup from_table(std::vector<std::string> names, std::vector<std::vector<int>> table,
                                std::string label = {});

  std::size_t order() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int x) const { return names_.at(static_cast<std::size_t>(x)); }
  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;  // throws NotFound

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int identity() const { return identity_; }
  int element_order(int a) const;

  /// Display label ("Q8", "Z4", ...) or empty when the group was built ad hoc.
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  friend bool operator==(const CayleyGroup& a, const CayleyGroup& b) {
    return a.names_ == b.names_ && a.table_ == b.table_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string label_;
};

/// Subset of a parent group's element indices; sorted.
struct Subgroup {
  std::vector<int> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(int x) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// Names: trivial, Z(k) / Zk, Z2xZ2, Q8, D(n) / Dn (order 2n), and products joined by 'x'.
CayleyGroup from_catalog(std::string_view name);

CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b);

Subgroup whole_group(const CayleyGroup& g);
Subgroup trivial_subgroup(const CayleyGroup& g);
Subgroup subgroup_generated(const CayleyGroup& g, const std::vector<int>& seeds);
Subgroup center(const CayleyGroup& g);
Subgroup commutator_subgroup(const CayleyGroup& g);
bool is_normal(const CayleyGroup& g, const Subgroup& n);
bool is_abelian(const CayleyGroup& g);

/// Invariant factors of an abelian subgroup (throws InvalidInput if non-abelian).
FgAbelian abelian_structure(const CayleyGroup& g, const Subgroup& s);
FgAbelian abelianization(const CayleyGroup& g);

/// Coset group g / n; element names are the coset representatives' names.
CayleyGroup quotient(const CayleyGroup& g, const Subgroup& n);

/// Backtracking over generator images without invariant pruning; empty if none.
std::optional<std::vector<int>> find_isomorphism(const CayleyGroup& a, const CayleyGroup& b);

/// Fingerprint pruning followed by find_isomorphism. Throws Unsupported above 64.
bool is_isomorphic(const CayleyGroup& a, const CayleyGroup& b);

/// Catalog name of an isomorphic group from a fixed list, or "order-N group".
std::string identify(const CayleyGroup& g);

}  // namespace thg
