#pragma once

// Homotopy data of spaces and finite transformation groups, their JSON file
// format, the built-in catalog, and orbit spaces of free actions.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "thg/abelian.hpp"
#include "thg/fingroup.hpp"
#include "thg/tower.hpp"

namespace thg {

struct SubgroupData {
  enum class Kind { Full, Trivial, Center, Generators, Elements };

  Kind kind = Kind::Full;
  IntMatrix generators;               // Kind::Generators, rows in ambient coordinates
  std::vector<std::string> elements;  // Kind::Elements, generating element names

  static SubgroupData full() { return {}; }
  static SubgroupData trivial() { return {Kind::Trivial, {}, {}}; }
  static SubgroupData center() { return {Kind::Center, {}, {}}; }
  static SubgroupData from_generators(IntMatrix g) { return {Kind::Generators, std::move(g), {}}; }
  static SubgroupData from_elements(std::vector<std::string> e) { return {Kind::Elements, {}, std::move(e)}; }

  friend bool operator==(const SubgroupData&, const SubgroupData&) = default;
};

using Pi1 = std::variant<FgAbelian, CayleyGroup, VirtAbelian>;

ExtNat pi1_order(const Pi1& p);
Integer pi1_free_rank(const Pi1& p);
bool pi1_is_trivial(const Pi1& p);
bool pi1_is_abelian(const Pi1& p);
std::string pi1_label(const Pi1& p);
FgAbelian pi1_abelianization(const Pi1& p);
GroupInfo pi1_info(const Pi1& p);

struct WhiteheadEntry {
  std::size_t a = 0;  // generator index in pi_i
  std::size_t b = 0;  // generator index in pi_j
  Vector value;       // element of pi_{i+j-1}

  friend bool operator==(const WhiteheadEntry&, const WhiteheadEntry&) = default;
};

struct SpaceModel {
  std::string name;
  std::string note;
  int truncation = 1;
  bool aspherical = false;
  Pi1 pi1;
  std::map<int, FgAbelian> pi;             // degrees 2..truncation; absent means trivial
  std::map<int, SubgroupData> gottlieb;    // absent means unknown
  std::map<std::pair<int, int>, std::vector<WhiteheadEntry>> whitehead;
  // degree -> (pi1 key -> matrix). Keys: generator index for abelian pi1,
  // element name for a table, base element name for an extension.
  std::map<int, std::map<std::string, IntMatrix>> pi1_action;
  std::vector<std::string> warnings;

  /// pi_i for 2 <= i; throws InsufficientData past the truncation.
  FgAbelian pi_at(int i) const;
  /// G_i when known. Forced to full when the ambient group is trivial.
  std::optional<SubgroupData> gottlieb_at(int i) const;
  bool whitehead_trivial() const;
  bool pi1_action_trivial() const;
  /// Matrix by which a pi1 key acts on pi_i (identity when not listed).
  IntMatrix pi1_action_at(int i, const std::string& key) const;
};

struct TransformationModel {
  std::string name;
  std::string note;
  std::string space_ref;  // catalog name when the space was referenced by name
  SpaceModel space;
  CayleyGroup group;
  bool free = true;
  // element -> degree -> matrix; absent entries act as the identity
  std::map<std::string, std::map<int, IntMatrix>> action;
  std::optional<std::map<std::pair<std::string, std::string>, Vector>> cocycle;
  std::optional<std::vector<std::string>> g0;
  std::optional<int> sphere_dimension;
  std::map<int, SubgroupData> equivariant_gottlieb;
  // G_1 of the orbit space as recorded in the catalog entry for X/G, when one exists.
  std::optional<SubgroupData> reference_orbit_g1;

  IntMatrix action_at(int g, int degree) const;
  /// The pi_1 extension built from the pi_1 action and cocycle (zero cocycle if absent).
  VirtAbelian pi1_extension() const;
};

using Model = std::variant<SpaceModel, TransformationModel>;

class Catalog;

/// Parses and validates a model document. Unknown keys are rejected. A
/// transformation that names its space resolves it through `catalog`.
Model load_model(std::string_view document, const Catalog* catalog = nullptr, std::string_view default_name = {});
SpaceModel load_space(const nlohmann::json& doc, const std::string& path = "$");
TransformationModel load_transformation(const nlohmann::json& doc, const Catalog* catalog,
                                        const std::string& path = "$");

/// Canonical serialization with sorted keys.
nlohmann::json to_json(const SpaceModel& m);
nlohmann::json to_json(const TransformationModel& m);
std::string serialize(const Model& m);

/// Re-checks every model invariant; throws InvariantViolation with a field path.
void validate(SpaceModel& m);
void validate(const TransformationModel& m);

class Catalog {
 public:
  /// The catalog compiled into the library.
  static const Catalog& builtin();
  /// Every *.json file in `dir`; spaces are loaded before transformations.
  static Catalog from_directory(const std::filesystem::path& dir);
  /// From in-memory documents (file name -> contents).
  static Catalog from_documents(const std::vector<std::pair<std::string, std::string>>& docs);

  /// Catalog spaces, then the templates "S<d>" for any d >= 1.
  SpaceModel space(std::string_view name) const;
  /// Catalog transformations, then the templates "S<d>-antipodal".
  TransformationModel transformation(std::string_view name) const;
  bool has_space(std::string_view name) const;
  bool has_transformation(std::string_view name) const;

  std::vector<std::string> space_names() const;
  std::vector<std::string> transformation_names() const;

  /// For an odd sphere, records G_1 of the catalog entry named "<space>/<group>"
  /// when that entry's pi_1 has the same table as the acting group.
  void link_orbit_reference(TransformationModel& tg) const;

 private:
  void add_space(SpaceModel m);
  void add_transformation(TransformationModel m);

  std::map<std::string, SpaceModel, std::less<>> spaces_;
  std::map<std::string, TransformationModel, std::less<>> transformations_;
};

SpaceModel sphere_template(int d);
TransformationModel antipodal_template(int d);

/// Rule that set G_1 of an orbit space.
enum class OrbitG1Rule { SimplyConnected, Inherited, AsphericalCenter, SphereCatalog, ActionKernel, Unknown };
std::string to_string(OrbitG1Rule r);

struct OrbitSpace {
  SpaceModel model;
  OrbitG1Rule g1_rule = OrbitG1Rule::Unknown;
};

/// X/G for a free action. Throws Unsupported for non-free actions and
/// InvalidInput when pi_1(X) is nontrivial and no cocycle is given.
OrbitSpace orbit_space(const TransformationModel& tg);

}  // namespace thg
