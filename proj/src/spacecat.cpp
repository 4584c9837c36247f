#include "thg/spacecat.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "catalog_data.hpp"
#include "thg/error.hpp"

namespace thg {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::SchemaViolation, msg, path);
}

[[noreturn]] void invariant(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::InvariantViolation, msg, path);
}

// Re-raises a library error with `path` attached when it has none.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    ErrorKind kind = e.kind() == ErrorKind::InvalidInput ? ErrorKind::InvariantViolation : e.kind();
    throw Error(kind, e.message(), path);
  }
}

std::string key_path(const std::string& path, std::string_view key) { return path + "." + std::string(key); }
std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                 std::find(optional.begin(), optional.end(), k) != optional.end();
    if (!known) schema(key_path(path, k), "unknown key");
  }
  for (auto r : required)
    if (!j.contains(std::string(r))) schema(key_path(path, r), "missing required key");
}

Integer get_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  schema(path, "expected an integer");
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  auto v = j.get<std::int64_t>();
  if (v < -1000000 || v > 1000000) schema(path, "integer out of range");
  return static_cast<int>(v);
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected a boolean");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], index_path(path, i)));
  return out;
}

Vector get_vector(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of integers");
  Vector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_integer(j[i], index_path(path, i)));
  return out;
}

IntMatrix get_matrix(const json& j, const std::string& path, std::size_t cols_if_empty) {
  if (!j.is_array()) schema(path, "expected a matrix (array of rows)");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(get_vector(j[i], index_path(path, i)));
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) schema(index_path(path, i), "matrix rows have different lengths");
  return IntMatrix::from_rows(rows, cols);
}

int get_degree(const std::string& key, const std::string& path) {
  if (key.empty() || key.size() > 6 || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
    schema(path, "degree key must be a positive integer");
  int d = std::stoi(key);
  if (d < 1) schema(path, "degree key must be a positive integer");
  return d;
}

// Splits "a,b" at the comma outside parentheses.
std::pair<std::string, std::string> split_pair(const std::string& key, const std::string& path) {
  int depth = 0;
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] == '(') ++depth;
    if (key[i] == ')') --depth;
    if (key[i] == ',' && depth == 0) {
      if (at) schema(path, "pair key must contain exactly one top-level comma");
      at = i;
    }
  }
  if (!at) schema(path, "pair key must look like \"q,r\"");
  return {key.substr(0, *at), key.substr(*at + 1)};
}

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

// ---------------------------------------------------------------- groups

FgAbelian parse_abelian(const json& j, const std::string& path) {
  check_keys(j, path, {"rank"}, {"torsion"});
  int rank = get_int(j["rank"], key_path(path, "rank"));
  if (rank < 0) invariant(key_path(path, "rank"), "rank must be non-negative");
  Vector torsion;
  if (j.contains("torsion")) torsion = get_vector(j["torsion"], key_path(path, "torsion"));
  for (std::size_t i = 0; i < torsion.size(); ++i)
    if (torsion[i] < 2) invariant(index_path(key_path(path, "torsion"), i), "torsion entry must be >= 2");
  return canonical_form(static_cast<std::size_t>(rank), torsion);
}

json abelian_json(const FgAbelian& a) {
  return json{{"rank", a.rank()}, {"torsion", vector_json(a.torsion())}};
}

CayleyGroup parse_cayley(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected a group specification object");
  if (j.contains("catalog")) {
    check_keys(j, path, {"catalog"}, {});
    std::string name = get_string(j["catalog"], key_path(path, "catalog"));
    return at_path(key_path(path, "catalog"), [&] { return from_catalog(name); });
  }
  check_keys(j, path, {"elements", "table"}, {"label"});
  auto names = get_strings(j["elements"], key_path(path, "elements"));
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  const std::string tpath = key_path(path, "table");
  if (!j["table"].is_array()) schema(tpath, "expected an array of rows");
  std::vector<std::vector<int>> table;
  for (std::size_t r = 0; r < j["table"].size(); ++r) {
    auto row = get_strings(j["table"][r], index_path(tpath, r));
    std::vector<int> out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      auto it = index.find(row[c]);
      if (it == index.end()) invariant(index_path(index_path(tpath, r), c), "unknown element '" + row[c] + "'");
      out.push_back(it->second);
    }
    table.push_back(std::move(out));
  }
  std::string label = j.contains("label") ? get_string(j["label"], key_path(path, "label")) : std::string();
  return at_path(path, [&] { return CayleyGroup::from_table(names, table, label); });
}

json cayley_json(const CayleyGroup& g) {
  if (!g.label().empty()) {
    try {
      if (from_catalog(g.label()) == g) return json{{"catalog", g.label()}};
    } catch (const Error&) {
    }
  }
  json table = json::array();
  for (std::size_t r = 0; r < g.order(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.order(); ++c) row.push_back(g.name(g.mul(static_cast<int>(r), static_cast<int>(c))));
    table.push_back(row);
  }
  json out{{"elements", g.names()}, {"table", table}};
  if (!g.label().empty()) out["label"] = g.label();
  return out;
}

VirtAbelian parse_virtabelian(const json& j, const std::string& path) {
  check_keys(j, path, {"layer", "base"}, {"action", "cocycle"});
  FgAbelian layer = parse_abelian(j["layer"], key_path(path, "layer"));
  CayleyGroup base = parse_cayley(j["base"], key_path(path, "base"));
  const std::size_t k = layer.generator_count(), n = base.order();
  std::vector<IntMatrix> action(n, IntMatrix::identity(k));
  if (j.contains("action")) {
    const std::string apath = key_path(path, "action");
    if (!j["action"].is_object()) schema(apath, "expected an object keyed by base elements");
    for (const auto& item : j["action"].items()) {
      const std::string p = key_path(apath, item.key());
      int q = at_path(p, [&] { return base.index_of(item.key()); });
      action[static_cast<std::size_t>(q)] = get_matrix(item.value(), p, k);
    }
  }
  std::vector<Vector> cocycle(n * n, Vector(k, Integer(0)));
  if (j.contains("cocycle")) {
    const std::string cpath = key_path(path, "cocycle");
    if (!j["cocycle"].is_object()) schema(cpath, "expected an object keyed by \"q,r\"");
    for (const auto& item : j["cocycle"].items()) {
      const std::string p = key_path(cpath, item.key());
      auto [qs, rs] = split_pair(item.key(), p);
      int q = at_path(p, [&] { return base.index_of(qs); });
      int r = at_path(p, [&] { return base.index_of(rs); });
      Vector v = get_vector(item.value(), p);
      if (v.size() != k) invariant(p, "cocycle value must have " + std::to_string(k) + " coordinates");
      cocycle[static_cast<std::size_t>(q) * n + static_cast<std::size_t>(r)] = v;
    }
  }
  return at_path(path, [&] { return VirtAbelian(base, layer, action, cocycle); });
}

json virtabelian_json(const VirtAbelian& g) {
  const auto& base = g.base();
  json action = json::object();
  json cocycle = json::object();
  for (int q = 0; q < static_cast<int>(base.order()); ++q) {
    if (!acts_trivially(g.layer(), g.action(q))) action[base.name(q)] = matrix_json(g.action(q));
    for (int r = 0; r < static_cast<int>(base.order()); ++r)
      if (!g.layer().is_zero(g.cocycle(q, r))) cocycle[base.name(q) + "," + base.name(r)] = vector_json(g.cocycle(q, r));
  }
  return json{{"layer", abelian_json(g.layer())}, {"base", cayley_json(base)}, {"action", action}, {"cocycle", cocycle}};
}

Pi1 parse_pi1(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected a group specification object");
  if (j.contains("rank")) return parse_abelian(j, path);
  if (j.contains("layer")) return parse_virtabelian(j, path);
  if (j.contains("catalog") || j.contains("elements")) return parse_cayley(j, path);
  schema(path, "expected an abelian, catalog, table or extension specification");
}

json pi1_json(const Pi1& p) {
  if (const auto* a = std::get_if<FgAbelian>(&p)) return abelian_json(*a);
  if (const auto* c = std::get_if<CayleyGroup>(&p)) return cayley_json(*c);
  return virtabelian_json(std::get<VirtAbelian>(p));
}

// ---------------------------------------------------------------- subgroups

SubgroupData parse_subgroup(const json& j, const std::string& path) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "full") return SubgroupData::full();
    if (s == "trivial") return SubgroupData::trivial();
    if (s == "center") return SubgroupData::center();
    schema(path, "expected \"full\", \"trivial\", \"center\" or an object");
  }
  if (!j.is_object()) schema(path, "expected a subgroup specification");
  if (j.contains("generators")) {
    check_keys(j, path, {"generators"}, {});
    return SubgroupData::from_generators(get_matrix(j["generators"], key_path(path, "generators"), 0));
  }
  check_keys(j, path, {"elements"}, {});
  return SubgroupData::from_elements(get_strings(j["elements"], key_path(path, "elements")));
}

json subgroup_json(const SubgroupData& s) {
  switch (s.kind) {
    case SubgroupData::Kind::Full: return "full";
    case SubgroupData::Kind::Trivial: return "trivial";
    case SubgroupData::Kind::Center: return "center";
    case SubgroupData::Kind::Generators: return json{{"generators", matrix_json(s.generators)}};
    case SubgroupData::Kind::Elements: return json{{"elements", s.elements}};
  }
  return "full";
}

// Checks subgroup data against its ambient group in degree i of `m`.
void check_subgroup(SpaceModel& m, int i, const SubgroupData& s, const std::string& path) {
  using K = SubgroupData::Kind;
  if (s.kind == K::Full || s.kind == K::Trivial) return;
  if (i >= 2) {
    if (s.kind != K::Generators) invariant(path, "higher degrees take \"full\", \"trivial\" or generators");
    if (s.generators.cols() != m.pi_at(i).generator_count() && s.generators.rows() > 0)
      invariant(key_path(path, "generators"), "generator rows must have " +
                                                  std::to_string(m.pi_at(i).generator_count()) + " coordinates");
    return;
  }
  if (const auto* a = std::get_if<FgAbelian>(&m.pi1)) {
    if (s.kind == K::Elements) invariant(path, "element lists need a group given by a table");
    if (s.kind == K::Generators && s.generators.rows() > 0 && s.generators.cols() != a->generator_count())
      invariant(key_path(path, "generators"),
                "generator rows must have " + std::to_string(a->generator_count()) + " coordinates");
    return;
  }
  if (const auto* c = std::get_if<CayleyGroup>(&m.pi1)) {
    if (s.kind == K::Generators) invariant(path, "generator matrices need an abelian group given by invariants");
    if (s.kind == K::Elements) {
      std::vector<int> seeds;
      for (std::size_t e = 0; e < s.elements.size(); ++e)
        seeds.push_back(at_path(index_path(key_path(path, "elements"), e), [&] { return c->index_of(s.elements[e]); }));
      Subgroup sub = subgroup_generated(*c, seeds);
      Subgroup z = center(*c);
      for (int x : sub.elements)
        if (!z.contains(x)) {
          m.warnings.push_back(path + ": subgroup is not contained in the center of pi_1");
          break;
        }
    }
    return;
  }
  if (s.kind != K::Center) throw Error(ErrorKind::Unsupported, "extension pi_1 takes \"full\", \"trivial\" or \"center\"", path);
}

}  // namespace

// ---------------------------------------------------------------- pi_1 helpers

ExtNat pi1_order(const Pi1& p) {
  return std::visit(
      [](const auto& g) -> ExtNat {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CayleyGroup>) return ExtNat(static_cast<long>(g.order()));
        else return g.order();
      },
      p);
}

Integer pi1_free_rank(const Pi1& p) {
  if (const auto* a = std::get_if<FgAbelian>(&p)) return Integer(static_cast<unsigned long>(a->rank()));
  if (const auto* v = std::get_if<VirtAbelian>(&p)) return Integer(static_cast<unsigned long>(v->layer().rank()));
  return 0;
}

bool pi1_is_trivial(const Pi1& p) { return pi1_order(p).is_one(); }

bool pi1_is_abelian(const Pi1& p) {
  if (std::holds_alternative<FgAbelian>(p)) return true;
  if (const auto* c = std::get_if<CayleyGroup>(&p)) return is_abelian(*c);
  return std::get<VirtAbelian>(p).is_abelian();
}

std::string pi1_label(const Pi1& p) {
  if (const auto* a = std::get_if<FgAbelian>(&p)) return a->to_string();
  if (const auto* c = std::get_if<CayleyGroup>(&p)) return c->label().empty() ? identify(*c) : c->label();
  const auto& v = std::get<VirtAbelian>(p);
  return "(" + v.layer().to_string() + ")." + pi1_label(Pi1(v.base()));
}

FgAbelian pi1_abelianization(const Pi1& p) {
  if (const auto* a = std::get_if<FgAbelian>(&p)) return *a;
  if (const auto* c = std::get_if<CayleyGroup>(&p)) return abelianization(*c);
  return abelianization(std::get<VirtAbelian>(p));
}

GroupInfo pi1_info(const Pi1& p) { return GroupInfo{pi1_label(p), pi1_order(p), pi1_free_rank(p), pi1_is_abelian(p)}; }

// ---------------------------------------------------------------- SpaceModel

FgAbelian SpaceModel::pi_at(int i) const {
  if (i > truncation)
    throw Error(ErrorKind::InsufficientData,
                name + ": degree " + std::to_string(i) + " exceeds truncation " + std::to_string(truncation));
  if (i < 2) throw Error(ErrorKind::InvalidInput, "pi_at expects a degree >= 2");
  auto it = pi.find(i);
  return it == pi.end() ? FgAbelian() : it->second;
}

std::optional<SubgroupData> SpaceModel::gottlieb_at(int i) const {
  if (i > truncation)
    throw Error(ErrorKind::InsufficientData,
                name + ": degree " + std::to_string(i) + " exceeds truncation " + std::to_string(truncation));
  if (i < 1) throw Error(ErrorKind::InvalidInput, "degree must be >= 1");
  const bool trivial = i == 1 ? pi1_is_trivial(pi1) : pi_at(i).is_trivial();
  if (trivial) return SubgroupData::full();
  auto it = gottlieb.find(i);
  if (it == gottlieb.end()) return std::nullopt;
  return it->second;
}

bool SpaceModel::whitehead_trivial() const {
  for (const auto& [deg, entries] : whitehead) {
    FgAbelian target = pi_at(deg.first + deg.second - 1);
    for (const auto& e : entries)
      if (!target.is_zero(target.reduce(e.value))) return false;
  }
  return true;
}

bool SpaceModel::pi1_action_trivial() const {
  for (const auto& [deg, maps] : pi1_action)
    for (const auto& [key, m] : maps)
      if (!acts_trivially(pi_at(deg), m)) return false;
  return true;
}

IntMatrix SpaceModel::pi1_action_at(int i, const std::string& key) const {
  auto it = pi1_action.find(i);
  if (it != pi1_action.end()) {
    auto jt = it->second.find(key);
    if (jt != it->second.end()) return jt->second;
  }
  return IntMatrix::identity(pi_at(i).generator_count());
}

void validate(SpaceModel& m) {
  m.warnings.clear();
  if (m.name.empty()) invariant("$.name", "name must be non-empty");
  if (m.truncation < 1) invariant("$.truncation", "truncation must be >= 1");
  for (const auto& [i, g] : m.pi) {
    const std::string p = "$.pi." + std::to_string(i);
    if (i < 2 || i > m.truncation) invariant(p, "degree outside [2, truncation]");
    if (m.aspherical && !g.is_trivial()) invariant(p, "aspherical space with nontrivial higher homotopy");
  }
  for (const auto& [i, s] : m.gottlieb) {
    const std::string p = "$.gottlieb." + std::to_string(i);
    if (i < 1 || i > m.truncation) invariant(p, "degree outside [1, truncation]");
    check_subgroup(m, i, s, p);
  }
  if (const auto* c = std::get_if<CayleyGroup>(&m.pi1)) {
    auto it = m.gottlieb.find(1);
    if (it != m.gottlieb.end() && it->second.kind == SubgroupData::Kind::Full && !is_abelian(*c))
      m.warnings.push_back("$.gottlieb.1: subgroup is not contained in the center of pi_1");
  }
  if (const auto* v = std::get_if<VirtAbelian>(&m.pi1)) {
    auto it = m.gottlieb.find(1);
    if (it != m.gottlieb.end() && it->second.kind == SubgroupData::Kind::Full && !v->is_abelian())
      m.warnings.push_back("$.gottlieb.1: subgroup is not contained in the center of pi_1");
  }
  for (const auto& [deg, entries] : m.whitehead) {
    const auto [i, j] = deg;
    const std::string p = "$.whitehead." + std::to_string(i) + "," + std::to_string(j);
    if (i < 2 || j < 2) invariant(p, "pairings are between degrees >= 2");
    if (i + j - 1 > m.truncation) invariant(p, "pairing lands past the truncation");
    const FgAbelian pi_i = m.pi_at(i), pi_j = m.pi_at(j), target = m.pi_at(i + j - 1);
    // W[a][b] in the target group
    std::vector<std::vector<Vector>> w(pi_i.generator_count(),
                                       std::vector<Vector>(pi_j.generator_count(), target.zero()));
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& en = entries[e];
      const std::string ep = index_path(p, e);
      if (en.a >= pi_i.generator_count()) invariant(key_path(ep, "a"), "generator index out of range");
      if (en.b >= pi_j.generator_count()) invariant(key_path(ep, "b"), "generator index out of range");
      if (en.value.size() != target.generator_count())
        invariant(key_path(ep, "value"), "value must have " + std::to_string(target.generator_count()) + " coordinates");
      w[en.a][en.b] = target.reduce(en.value);
    }
    auto rows_of = [](const SubgroupData& s, std::size_t k) {
      if (s.kind == SubgroupData::Kind::Full) return IntMatrix::identity(k);
      if (s.kind == SubgroupData::Kind::Generators) return s.generators;
      return IntMatrix(0, k);
    };
    if (auto gi = m.gottlieb_at(i)) {
      IntMatrix rows = rows_of(*gi, pi_i.generator_count());
      for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t b = 0; b < pi_j.generator_count(); ++b) {
          Vector sum = target.zero();
          for (std::size_t a = 0; a < pi_i.generator_count(); ++a)
            for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += rows(r, a) * w[a][b][t];
          if (!target.is_zero(target.reduce(sum))) invariant(p, "nonzero Whitehead pairing with a Gottlieb element");
        }
    }
    if (auto gj = m.gottlieb_at(j)) {
      IntMatrix rows = rows_of(*gj, pi_j.generator_count());
      for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t a = 0; a < pi_i.generator_count(); ++a) {
          Vector sum = target.zero();
          for (std::size_t b = 0; b < pi_j.generator_count(); ++b)
            for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += rows(r, b) * w[a][b][t];
          if (!target.is_zero(target.reduce(sum))) invariant(p, "nonzero Whitehead pairing with a Gottlieb element");
        }
    }
  }
  for (const auto& [i, maps] : m.pi1_action) {
    const std::string p = "$.pi1_action." + std::to_string(i);
    if (i < 2 || i > m.truncation) invariant(p, "degree outside [2, truncation]");
    const FgAbelian target = m.pi_at(i);
    for (const auto& [key, mat] : maps) {
      const std::string kp = key_path(p, key);
      if (const auto* a = std::get_if<FgAbelian>(&m.pi1)) {
        bool ok = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
                  key.size() < 6 && static_cast<std::size_t>(std::stoi(key)) < a->generator_count();
        if (!ok) invariant(kp, "key must be a generator index of pi_1");
      } else if (const auto* c = std::get_if<CayleyGroup>(&m.pi1)) {
        at_path(kp, [&] { return c->index_of(key); });
      } else {
        at_path(kp, [&] { return std::get<VirtAbelian>(m.pi1).base().index_of(key); });
      }
      at_path(kp, [&] {
        validate_automorphism(target, mat, "pi_1 action");
        return 0;
      });
    }
  }
}

// ---------------------------------------------------------------- TransformationModel

IntMatrix TransformationModel::action_at(int g, int degree) const {
  auto it = action.find(group.name(g));
  if (it != action.end()) {
    auto jt = it->second.find(degree);
    if (jt != it->second.end()) return jt->second;
  }
  if (degree == 1) {
    const auto* a = std::get_if<FgAbelian>(&space.pi1);
    return IntMatrix::identity(a ? a->generator_count() : 0);
  }
  return IntMatrix::identity(space.pi_at(degree).generator_count());
}

VirtAbelian TransformationModel::pi1_extension() const {
  const auto* layer = std::get_if<FgAbelian>(&space.pi1);
  if (!layer) throw Error(ErrorKind::Unsupported, "pi_1 extensions need pi_1(X) given by abelian invariants");
  const std::size_t n = group.order();
  std::vector<IntMatrix> act;
  for (std::size_t g = 0; g < n; ++g) act.push_back(action_at(static_cast<int>(g), 1));
  std::vector<Vector> c(n * n, layer->zero());
  if (cocycle)
    for (const auto& [key, v] : *cocycle)
      c[static_cast<std::size_t>(group.index_of(key.first)) * n + static_cast<std::size_t>(group.index_of(key.second))] = v;
  return VirtAbelian(group, *layer, act, c);
}

void validate(const TransformationModel& m) {
  const SpaceModel& x = m.space;
  std::set<int> degrees;
  for (const auto& [elt, maps] : m.action) {
    const std::string ep = "$.action." + elt;
    at_path(ep, [&] { return m.group.index_of(elt); });
    for (const auto& [d, mat] : maps) {
      const std::string dp = key_path(ep, std::to_string(d));
      if (d < 1 || d > x.truncation) invariant(dp, "degree outside [1, truncation]");
      FgAbelian target;
      if (d == 1) {
        const auto* a = std::get_if<FgAbelian>(&x.pi1);
        if (!a) throw Error(ErrorKind::Unsupported, "actions on pi_1 need pi_1(X) given by abelian invariants", dp);
        target = *a;
      } else {
        target = x.pi_at(d);
      }
      at_path(dp, [&] {
        validate_automorphism(target, mat, "action");
        return 0;
      });
      degrees.insert(d);
    }
  }
  const int n = static_cast<int>(m.group.order());
  for (int d : degrees) {
    FgAbelian target = d == 1 ? std::get<FgAbelian>(x.pi1) : x.pi_at(d);
    const std::string dp = "$.action.*." + std::to_string(d);
    if (!acts_trivially(target, m.action_at(m.group.identity(), d))) invariant(dp, "identity must act trivially");
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        if (!same_automorphism(target, m.action_at(g, d) * m.action_at(h, d), m.action_at(m.group.mul(g, h), d)))
          invariant(dp, "action is not a homomorphism at (" + m.group.name(g) + ", " + m.group.name(h) + ")");
  }
  if (m.cocycle) {
    const auto* a = std::get_if<FgAbelian>(&x.pi1);
    if (!a) throw Error(ErrorKind::Unsupported, "cocycles need pi_1(X) given by abelian invariants", "$.cocycle");
    for (const auto& [key, v] : *m.cocycle) {
      const std::string p = "$.cocycle." + key.first + "," + key.second;
      at_path(p, [&] { return m.group.index_of(key.first); });
      at_path(p, [&] { return m.group.index_of(key.second); });
      if (v.size() != a->generator_count())
        invariant(p, "cocycle value must have " + std::to_string(a->generator_count()) + " coordinates");
    }
    VirtAbelian ext = at_path("$.cocycle", [&] { return m.pi1_extension(); });
    if (m.free && x.aspherical && torsion_witness(ext))
      invariant("$.cocycle", "extension has torsion, so the action on an aspherical space cannot be free");
  }
  if (m.g0) {
    std::vector<int> seeds;
    for (std::size_t i = 0; i < m.g0->size(); ++i)
      seeds.push_back(at_path(index_path("$.g0", i), [&] { return m.group.index_of((*m.g0)[i]); }));
    std::set<int> distinct(seeds.begin(), seeds.end());
    if (subgroup_generated(m.group, seeds).size() != distinct.size()) invariant("$.g0", "g0 is not a subgroup");
  }
  if (m.sphere_dimension && *m.sphere_dimension < 1) invariant("$.sphere_dimension", "must be >= 1");
  SpaceModel copy = x;
  for (const auto& [i, s] : m.equivariant_gottlieb) {
    const std::string p = "$.equivariant_gottlieb." + std::to_string(i);
    if (i < 1 || i > x.truncation) invariant(p, "degree outside [1, truncation]");
    check_subgroup(copy, i, s, p);
  }
}

// ---------------------------------------------------------------- loading

SpaceModel load_space(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "name", "truncation", "pi1"},
             {"aspherical", "pi", "gottlieb", "whitehead", "pi1_action", "note"});
  if (get_string(j["kind"], key_path(path, "kind")) != "space") schema(key_path(path, "kind"), "expected \"space\"");
  SpaceModel m;
  m.name = get_string(j["name"], key_path(path, "name"));
  m.truncation = get_int(j["truncation"], key_path(path, "truncation"));
  if (j.contains("aspherical")) m.aspherical = get_bool(j["aspherical"], key_path(path, "aspherical"));
  if (j.contains("note")) m.note = get_string(j["note"], key_path(path, "note"));
  m.pi1 = parse_pi1(j["pi1"], key_path(path, "pi1"));
  if (j.contains("pi")) {
    const std::string p = key_path(path, "pi");
    if (!j["pi"].is_object()) schema(p, "expected an object keyed by degree");
    for (const auto& item : j["pi"].items())
      m.pi[get_degree(item.key(), key_path(p, item.key()))] = parse_abelian(item.value(), key_path(p, item.key()));
  }
  if (j.contains("gottlieb")) {
    const std::string p = key_path(path, "gottlieb");
    if (!j["gottlieb"].is_object()) schema(p, "expected an object keyed by degree");
    for (const auto& item : j["gottlieb"].items())
      m.gottlieb[get_degree(item.key(), key_path(p, item.key()))] = parse_subgroup(item.value(), key_path(p, item.key()));
  }
  if (j.contains("whitehead")) {
    const std::string p = key_path(path, "whitehead");
    const json& w = j["whitehead"];
    if (w.is_string()) {
      if (w.get<std::string>() != "trivial") schema(p, "expected \"trivial\" or pairing tables");
    } else {
      if (!w.is_object()) schema(p, "expected \"trivial\" or pairing tables");
      for (const auto& item : w.items()) {
        const std::string kp = key_path(p, item.key());
        auto [is, js] = split_pair(item.key(), kp);
        std::pair<int, int> deg{get_degree(is, kp), get_degree(js, kp)};
        if (!item.value().is_array()) schema(kp, "expected an array of pairings");
        std::vector<WhiteheadEntry> entries;
        for (std::size_t e = 0; e < item.value().size(); ++e) {
          const json& en = item.value()[e];
          const std::string ep = index_path(kp, e);
          check_keys(en, ep, {"a", "b", "value"}, {});
          int a = get_int(en["a"], key_path(ep, "a")), b = get_int(en["b"], key_path(ep, "b"));
          if (a < 0 || b < 0) invariant(ep, "generator indices must be non-negative");
          entries.push_back(WhiteheadEntry{static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                                           get_vector(en["value"], key_path(ep, "value"))});
        }
        m.whitehead[deg] = std::move(entries);
      }
    }
  }
  if (j.contains("pi1_action")) {
    const std::string p = key_path(path, "pi1_action");
    const json& a = j["pi1_action"];
    if (a.is_string()) {
      if (a.get<std::string>() != "trivial") schema(p, "expected \"trivial\" or matrices");
    } else {
      if (!a.is_object()) schema(p, "expected \"trivial\" or matrices");
      for (const auto& item : a.items()) {
        const std::string dp = key_path(p, item.key());
        int d = get_degree(item.key(), dp);
        if (!item.value().is_object()) schema(dp, "expected an object keyed by pi_1 elements");
        for (const auto& inner : item.value().items())
          m.pi1_action[d][inner.key()] = get_matrix(inner.value(), key_path(dp, inner.key()), 0);
      }
    }
  }
  validate(m);
  return m;
}

TransformationModel load_transformation(const json& j, const Catalog* catalog, const std::string& path) {
  check_keys(j, path, {"kind", "space", "group", "free"},
             {"name", "note", "action", "cocycle", "g0", "sphere_dimension", "equivariant_gottlieb"});
  if (get_string(j["kind"], key_path(path, "kind")) != "transformation")
    schema(key_path(path, "kind"), "expected \"transformation\"");
  TransformationModel m;
  if (j.contains("name")) m.name = get_string(j["name"], key_path(path, "name"));
  if (j.contains("note")) m.note = get_string(j["note"], key_path(path, "note"));
  const std::string sp = key_path(path, "space");
  if (j["space"].is_string()) {
    m.space_ref = j["space"].get<std::string>();
    m.space = at_path(sp, [&] { return catalog ? catalog->space(m.space_ref) : Catalog::builtin().space(m.space_ref); });
  } else {
    m.space = load_space(j["space"], sp);
  }
  m.group = parse_cayley(j["group"], key_path(path, "group"));
  m.free = get_bool(j["free"], key_path(path, "free"));
  if (j.contains("action")) {
    const std::string ap = key_path(path, "action");
    if (!j["action"].is_object()) schema(ap, "expected an object keyed by group elements");
    for (const auto& item : j["action"].items()) {
      const std::string ep = key_path(ap, item.key());
      if (!item.value().is_object()) schema(ep, "expected an object keyed by degree");
      auto& maps = m.action[item.key()];
      for (const auto& inner : item.value().items()) {
        const std::string dp = key_path(ep, inner.key());
        int d = get_degree(inner.key(), dp);
        if (inner.value().is_string()) {
          if (inner.value().get<std::string>() != "auto") schema(dp, "expected a matrix or \"auto\"");
          continue;
        }
        maps[d] = get_matrix(inner.value(), dp, 0);
      }
      if (maps.empty()) m.action.erase(item.key());
    }
  }
  if (j.contains("cocycle")) {
    const std::string cp = key_path(path, "cocycle");
    if (!j["cocycle"].is_object()) schema(cp, "expected an object keyed by \"q,r\"");
    m.cocycle.emplace();
    for (const auto& item : j["cocycle"].items()) {
      const std::string kp = key_path(cp, item.key());
      (*m.cocycle)[split_pair(item.key(), kp)] = get_vector(item.value(), kp);
    }
  }
  if (j.contains("g0")) m.g0 = get_strings(j["g0"], key_path(path, "g0"));
  if (j.contains("sphere_dimension")) m.sphere_dimension = get_int(j["sphere_dimension"], key_path(path, "sphere_dimension"));
  if (j.contains("equivariant_gottlieb")) {
    const std::string p = key_path(path, "equivariant_gottlieb");
    if (!j["equivariant_gottlieb"].is_object()) schema(p, "expected an object keyed by degree");
    for (const auto& item : j["equivariant_gottlieb"].items())
      m.equivariant_gottlieb[get_degree(item.key(), key_path(p, item.key()))] =
          parse_subgroup(item.value(), key_path(p, item.key()));
  }
  validate(m);
  return m;
}

Model load_model(std::string_view document, const Catalog* catalog, std::string_view default_name) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what(), "$");
  }
  if (!j.is_object() || !j.contains("kind")) schema("$.kind", "missing required key");
  std::string kind = get_string(j["kind"], "$.kind");
  if (kind == "space") return load_space(j);
  if (kind == "transformation") {
    TransformationModel m = load_transformation(j, catalog);
    if (m.name.empty()) m.name = std::string(default_name);
    if (m.name.empty()) schema("$.name", "transformation needs a name");
    if (catalog) catalog->link_orbit_reference(m);
    return m;
  }
  schema("$.kind", "expected \"space\" or \"transformation\"");
}

// ---------------------------------------------------------------- serialization

json to_json(const SpaceModel& m) {
  json out;
  out["kind"] = "space";
  out["name"] = m.name;
  if (!m.note.empty()) out["note"] = m.note;
  out["truncation"] = m.truncation;
  out["aspherical"] = m.aspherical;
  out["pi1"] = pi1_json(m.pi1);
  json pi = json::object();
  for (const auto& [i, g] : m.pi) pi[std::to_string(i)] = abelian_json(g);
  out["pi"] = pi;
  json gott = json::object();
  for (const auto& [i, s] : m.gottlieb) gott[std::to_string(i)] = subgroup_json(s);
  out["gottlieb"] = gott;
  if (m.whitehead.empty()) {
    out["whitehead"] = "trivial";
  } else {
    json w = json::object();
    for (const auto& [deg, entries] : m.whitehead) {
      json arr = json::array();
      for (const auto& e : entries) arr.push_back(json{{"a", e.a}, {"b", e.b}, {"value", vector_json(e.value)}});
      w[std::to_string(deg.first) + "," + std::to_string(deg.second)] = arr;
    }
    out["whitehead"] = w;
  }
  if (m.pi1_action.empty()) {
    out["pi1_action"] = "trivial";
  } else {
    json a = json::object();
    for (const auto& [d, maps] : m.pi1_action)
      for (const auto& [key, mat] : maps) a[std::to_string(d)][key] = matrix_json(mat);
    out["pi1_action"] = a;
  }
  return out;
}

json to_json(const TransformationModel& m) {
  json out;
  out["kind"] = "transformation";
  out["name"] = m.name;
  if (!m.note.empty()) out["note"] = m.note;
  out["space"] = m.space_ref.empty() ? to_json(m.space) : json(m.space_ref);
  out["group"] = cayley_json(m.group);
  out["free"] = m.free;
  json action = json::object();
  for (const auto& [elt, maps] : m.action)
    for (const auto& [d, mat] : maps) action[elt][std::to_string(d)] = matrix_json(mat);
  out["action"] = action;
  if (m.cocycle) {
    json c = json::object();
    for (const auto& [key, v] : *m.cocycle) c[key.first + "," + key.second] = vector_json(v);
    out["cocycle"] = c;
  }
  if (m.g0) out["g0"] = *m.g0;
  if (m.sphere_dimension) out["sphere_dimension"] = *m.sphere_dimension;
  if (!m.equivariant_gottlieb.empty()) {
    json e = json::object();
    for (const auto& [i, s] : m.equivariant_gottlieb) e[std::to_string(i)] = subgroup_json(s);
    out["equivariant_gottlieb"] = e;
  }
  return out;
}

std::string serialize(const Model& m) {
  return std::visit([](const auto& x) { return to_json(x).dump(2); }, m);
}

// ---------------------------------------------------------------- catalog

SpaceModel sphere_template(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "sphere dimension must be >= 1");
  SpaceModel m;
  m.name = "S" + std::to_string(d);
  m.note = "template: homotopy known through the sphere's own dimension";
  m.truncation = d;
  m.aspherical = d == 1;
  m.pi1 = d == 1 ? FgAbelian::free(1) : FgAbelian();
  if (d >= 2) m.pi[d] = FgAbelian::free(1);
  if (d % 2 == 0) m.gottlieb[d] = SubgroupData::trivial();
  if (d == 1 || d == 3 || d == 7) m.gottlieb[d] = SubgroupData::full();
  validate(m);
  return m;
}

TransformationModel antipodal_template(int d) {
  TransformationModel m;
  m.name = "S" + std::to_string(d) + "-antipodal";
  m.space_ref = "S" + std::to_string(d);
  m.space = sphere_template(d);
  m.group = from_catalog("Z2");
  m.free = true;
  m.sphere_dimension = d;
  if (d == 1) {
    m.cocycle.emplace();
    (*m.cocycle)[{"t", "t"}] = Vector{Integer(1)};
  } else if (d % 2 == 0) {
    m.action["t"][d] = IntMatrix::from_rows({{-1}});
  }
  validate(m);
  return m;
}

namespace {
std::optional<int> template_dimension(std::string_view name, std::string_view suffix) {
  if (name.size() < 2 + suffix.size() || name.front() != 'S') return std::nullopt;
  if (name.substr(name.size() - suffix.size()) != suffix) return std::nullopt;
  std::string_view digits = name.substr(1, name.size() - 1 - suffix.size());
  if (digits.empty() || digits.size() > 4 || digits.front() == '0') return std::nullopt;
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  return std::stoi(std::string(digits));
}
}  // namespace

const Catalog& Catalog::builtin() {
  static const Catalog c = from_documents(builtin_catalog_documents());
  return c;
}

Catalog Catalog::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::NotFound, "catalog directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> docs;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    docs.emplace_back(f.filename().string(), ss.str());
  }
  return from_documents(docs);
}

Catalog Catalog::from_documents(const std::vector<std::pair<std::string, std::string>>& docs) {
  Catalog c;
  std::vector<std::pair<std::string, json>> transformations;
  for (const auto& [file, text] : docs) {
    try {
      json j;
      try {
        j = json::parse(text);
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what(), "$");
      }
      if (!j.is_object() || !j.contains("kind")) schema("$.kind", "missing required key");
      std::string kind = get_string(j["kind"], "$.kind");
      if (kind == "space") {
        c.add_space(load_space(j));
      } else if (kind == "transformation") {
        transformations.emplace_back(file, std::move(j));
      } else {
        schema("$.kind", "expected \"space\" or \"transformation\"");
      }
    } catch (const Error& e) {
      throw Error(e.kind(), file + ": " + e.message(), e.path());
    }
  }
  for (auto& [file, j] : transformations) {
    try {
      TransformationModel m = load_transformation(j, &c);
      if (m.name.empty()) m.name = std::filesystem::path(file).stem().string();
      c.add_transformation(std::move(m));
    } catch (const Error& e) {
      throw Error(e.kind(), file + ": " + e.message(), e.path());
    }
  }
  return c;
}

void Catalog::add_space(SpaceModel m) {
  if (spaces_.count(m.name)) throw Error(ErrorKind::InvalidInput, "duplicate space '" + m.name + "'");
  std::string key = m.name;
  spaces_.emplace(std::move(key), std::move(m));
}

void Catalog::add_transformation(TransformationModel m) {
  if (transformations_.count(m.name)) throw Error(ErrorKind::InvalidInput, "duplicate transformation '" + m.name + "'");
  std::string key = m.name;
  transformations_.emplace(std::move(key), std::move(m));
}

SpaceModel Catalog::space(std::string_view name) const {
  auto it = spaces_.find(name);
  if (it != spaces_.end()) return it->second;
  if (auto d = template_dimension(name, "")) return sphere_template(*d);
  throw Error(ErrorKind::NotFound, "unknown space '" + std::string(name) + "'");
}

TransformationModel Catalog::transformation(std::string_view name) const {
  TransformationModel out;
  auto it = transformations_.find(name);
  if (it != transformations_.end()) {
    out = it->second;
  } else if (auto d = template_dimension(name, "-antipodal")) {
    out = antipodal_template(*d);
    if (has_space(out.space_ref)) {
      out.space = space(out.space_ref);
      validate(out);
    }
  } else {
    throw Error(ErrorKind::NotFound, "unknown transformation '" + std::string(name) + "'");
  }
  link_orbit_reference(out);
  return out;
}

bool Catalog::has_space(std::string_view name) const { return spaces_.find(name) != spaces_.end(); }
bool Catalog::has_transformation(std::string_view name) const {
  return transformations_.find(name) != transformations_.end();
}

std::vector<std::string> Catalog::space_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : spaces_) out.push_back(k);
  return out;
}

std::vector<std::string> Catalog::transformation_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : transformations_) out.push_back(k);
  return out;
}

void Catalog::link_orbit_reference(TransformationModel& tg) const {
  tg.reference_orbit_g1.reset();
  if (!tg.sphere_dimension || *tg.sphere_dimension % 2 == 0) return;
  const std::string label = tg.group.label().empty() ? identify(tg.group) : tg.group.label();
  auto it = spaces_.find(tg.space.name + "/" + label);
  if (it == spaces_.end()) return;
  const auto* pi1 = std::get_if<CayleyGroup>(&it->second.pi1);
  if (!pi1 || !(*pi1 == tg.group)) return;
  auto g1 = it->second.gottlieb_at(1);
  if (g1) tg.reference_orbit_g1 = *g1;
}

// ---------------------------------------------------------------- orbit spaces

std::string to_string(OrbitG1Rule r) {
  switch (r) {
    case OrbitG1Rule::SimplyConnected: return "simply connected";
    case OrbitG1Rule::Inherited: return "trivial group: inherited from X";
    case OrbitG1Rule::AsphericalCenter: return "aspherical: center of pi_1";
    case OrbitG1Rule::SphereCatalog: return "odd sphere: catalog entry for the coset space";
    case OrbitG1Rule::ActionKernel: return "only the identity acts trivially on higher homotopy";
    case OrbitG1Rule::Unknown: return "unknown";
  }
  return "unknown";
}

OrbitSpace orbit_space(const TransformationModel& tg) {
  if (!tg.free) throw Error(ErrorKind::Unsupported, "orbit spaces are only modelled for free actions");
  const SpaceModel& x = tg.space;
  OrbitSpace out;
  SpaceModel& y = out.model;
  const std::string label = tg.group.label().empty() ? identify(tg.group) : tg.group.label();
  y.name = x.name + "/" + label;
  y.note = "orbit space";
  y.truncation = x.truncation;
  y.aspherical = x.aspherical;
  y.pi = x.pi;
  y.whitehead = x.whitehead;
  for (const auto& [i, s] : x.gottlieb)
    if (i >= 2) y.gottlieb[i] = s;

  if (tg.group.order() == 1) {
    y.pi1 = x.pi1;
    y.pi1_action = x.pi1_action;
    if (auto g1 = x.gottlieb_at(1)) y.gottlieb[1] = *g1;
    out.g1_rule = pi1_is_trivial(x.pi1) ? OrbitG1Rule::SimplyConnected : OrbitG1Rule::Inherited;
    validate(y);
    return out;
  }
  const auto* layer = std::get_if<FgAbelian>(&x.pi1);
  if (!layer) throw Error(ErrorKind::Unsupported, "orbit spaces need pi_1(X) given by abelian invariants");
  if (!layer->is_trivial() && !x.pi1_action_trivial())
    throw Error(ErrorKind::Unsupported, "orbit spaces need pi_1(X) to act trivially on higher homotopy");

  // pi_1 key -> acting group element, used to transport the higher actions.
  std::vector<std::pair<std::string, int>> keys;
  bool higher_trivial = true;
  for (int g = 0; g < static_cast<int>(tg.group.order()); ++g)
    for (int i = 2; i <= x.truncation; ++i)
      if (!acts_trivially(x.pi_at(i), tg.action_at(g, i))) higher_trivial = false;

  if (layer->is_trivial()) {
    CayleyGroup g = tg.group;
    g.set_label(label);
    y.pi1 = g;
    for (int q = 0; q < static_cast<int>(g.order()); ++q) keys.emplace_back(g.name(q), q);
  } else {
    if (!tg.cocycle) throw Error(ErrorKind::InvalidInput, "a cocycle is required when pi_1(X) is nontrivial");
    VirtAbelian ext = tg.pi1_extension();
    if (ext.layer().is_finite() && ext.order().value() <= static_cast<long>(CayleyGroup::kSearchCap)) {
      CayleyGroup c = to_cayley(ext);
      c.set_label(identify(c));
      auto elems = ext.elements();
      for (std::size_t e = 0; e < elems.size(); ++e) keys.emplace_back(c.name(static_cast<int>(e)), elems[e].base);
      y.pi1 = c;
    } else if (ext.is_abelian() && higher_trivial) {
      y.pi1 = abelianization(ext);
    } else {
      for (int q = 0; q < static_cast<int>(ext.base().order()); ++q) keys.emplace_back(ext.base().name(q), q);
      y.pi1 = ext;
    }
  }
  for (int i = 2; i <= x.truncation; ++i)
    for (const auto& [key, q] : keys) {
      IntMatrix m = tg.action_at(q, i);
      if (!acts_trivially(x.pi_at(i), m)) y.pi1_action[i][key] = m;
    }

  if (pi1_is_trivial(y.pi1)) {
    out.g1_rule = OrbitG1Rule::SimplyConnected;
  } else if (x.aspherical) {
    y.gottlieb[1] = SubgroupData::center();
    out.g1_rule = OrbitG1Rule::AsphericalCenter;
  } else if (tg.reference_orbit_g1 && tg.sphere_dimension && *tg.sphere_dimension % 2 == 1) {
    y.gottlieb[1] = *tg.reference_orbit_g1;
    out.g1_rule = OrbitG1Rule::SphereCatalog;
  } else {
    bool only_identity = layer->is_trivial();
    for (int g = 0; g < static_cast<int>(tg.group.order()) && only_identity; ++g) {
      if (g == tg.group.identity()) continue;
      bool trivial_everywhere = true;
      for (int i = 2; i <= x.truncation && trivial_everywhere; ++i)
        trivial_everywhere = acts_trivially(x.pi_at(i), tg.action_at(g, i));
      if (trivial_everywhere) only_identity = false;
    }
    if (only_identity) {
      y.gottlieb[1] = SubgroupData::trivial();
      out.g1_rule = OrbitG1Rule::ActionKernel;
    }
  }
  validate(y);
  return out;
}

}  // namespace thg
