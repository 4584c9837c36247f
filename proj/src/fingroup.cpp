#include "thg/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "thg/error.hpp"

namespace thg {

CayleyGroup::CayleyGroup() : names_{"e"}, table_{0}, inverse_{0}, identity_(0), label_("trivial") {}

CayleyGroup CayleyGroup::from_table(std::vector<std::string> names, std::vector<std::vector<int>> table,
                                    std::string label) {
  const std::size_t n = names.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "group must have at least one element");
  if (std::set<std::string>(names.begin(), names.end()).size() != n)
    throw Error(ErrorKind::InvalidInput, "element names are not unique");
  if (table.size() != n) throw Error(ErrorKind::InvalidInput, "table has wrong number of rows");
  CayleyGroup g;
  g.names_ = std::move(names);
  g.label_ = std::move(label);
  g.table_.assign(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n) throw Error(ErrorKind::InvalidInput, "table row " + std::to_string(r) + " has wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      int v = table[r][c];
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(ErrorKind::InvalidInput, "table entry out of range");
      if (seen[static_cast<std::size_t>(v)]) throw Error(ErrorKind::InvalidInput, "table is not a Latin square (row " + std::to_string(r) + ")");
      seen[static_cast<std::size_t>(v)] = true;
      g.table_[r * n + c] = v;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      auto v = static_cast<std::size_t>(g.table_[r * n + c]);
      if (seen[v]) throw Error(ErrorKind::InvalidInput, "table is not a Latin square (column " + std::to_string(c) + ")");
      seen[v] = true;
    }
  }
  std::optional<int> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = g.table_[e * n + x] == static_cast<int>(x) && g.table_[x * n + e] == static_cast<int>(x);
    if (ok) identity = static_cast<int>(e);
  }
  if (!identity) throw Error(ErrorKind::InvalidInput, "table has no two-sided identity");
  g.identity_ = *identity;
  g.inverse_.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (g.table_[x * n + y] == g.identity_ && g.table_[y * n + x] == g.identity_) g.inverse_[x] = static_cast<int>(y);
  for (std::size_t x = 0; x < n; ++x)
    if (g.inverse_[x] < 0) throw Error(ErrorKind::InvalidInput, "element " + g.names_[x] + " has no two-sided inverse");
  if (n <= kSearchCap) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          auto ab = static_cast<std::size_t>(g.table_[a * n + b]);
          auto bc = static_cast<std::size_t>(g.table_[b * n + c]);
          if (g.table_[ab * n + c] != g.table_[a * n + bc])
            throw Error(ErrorKind::InvalidInput, "table is not associative at (" + g.names_[a] + ", " + g.names_[b] + ", " +
                                                     g.names_[c] + ")");
        }
  }
  return g;
}

std::optional<int> CayleyGroup::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int CayleyGroup::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::NotFound, "no element named '" + std::string(name) + "' in group " + label_);
}

int CayleyGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool Subgroup::contains(int x) const { return std::binary_search(elements.begin(), elements.end(), x); }

// ---------------------------------------------------------------- catalog

namespace {

CayleyGroup cyclic_group(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "cyclic group order must be >= 1");
  if (k == 1) return CayleyGroup();
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(i == 0 ? "e" : i == 1 ? "t" : "t^" + std::to_string(i));
  std::vector<std::vector<int>> table(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
  return CayleyGroup::from_table(std::move(names), std::move(table), "Z" + std::to_string(k));
}

CayleyGroup dihedral_group(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dihedral parameter must be >= 1");
  // r^a s^b with index a + n b
  std::vector<std::string> names;
  auto rpow = [](int a) { return a == 0 ? std::string() : a == 1 ? std::string("r") : "r^" + std::to_string(a); };
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < n; ++a) {
      std::string s = rpow(a) + (b ? "s" : "");
      names.push_back(s.empty() ? "e" : s);
    }
  const auto size = static_cast<std::size_t>(2 * n);
  std::vector<std::vector<int>> table(size, std::vector<int>(size));
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < n; ++a)
      for (int d = 0; d < 2; ++d)
        for (int c = 0; c < n; ++c) {
          int na = ((a + (b ? -c : c)) % n + n) % n;
          int nb = (b + d) % 2;
          table[static_cast<std::size_t>(a + n * b)][static_cast<std::size_t>(c + n * d)] = na + n * nb;
        }
  return CayleyGroup::from_table(std::move(names), std::move(table), "D" + std::to_string(n));
}

CayleyGroup quaternion_group() {
  // units 1, i, j, k; element index 2u + (negative ? 1 : 0)
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = x / 2, v = y / 2;
      int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[u][v];
      table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 2 * unit[u][v] + (s < 0 ? 1 : 0);
    }
  return CayleyGroup::from_table(std::move(names), std::move(table), "Q8");
}

CayleyGroup klein_group() {
  std::vector<std::string> names = {"e", "a", "b", "ab"};
  // a = (1,0), b = (0,1) in Z2 x Z2, index = bit pattern
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = x ^ y;
  return CayleyGroup::from_table(std::move(names), std::move(table), "Z2xZ2");
}

std::optional<int> parse_parameter(std::string_view s, char prefix) {
  if (s.size() < 2 || s[0] != prefix) return std::nullopt;
  std::string_view rest = s.substr(1);
  if (rest.front() == '(') {
    if (rest.back() != ')') return std::nullopt;
    rest = rest.substr(1, rest.size() - 2);
  }
  if (rest.empty() || rest.size() > 6) return std::nullopt;
  int v = 0;
  for (char c : rest) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

CayleyGroup catalog_factor(std::string_view name) {
  if (name == "trivial" || name == "1") return CayleyGroup();
  if (name == "Q8") return quaternion_group();
  if (auto k = parse_parameter(name, 'Z'); k && *k >= 1) return cyclic_group(*k);
  if (auto n = parse_parameter(name, 'D'); n && *n >= 1) return dihedral_group(*n);
  throw Error(ErrorKind::NotFound, "unknown catalog group '" + std::string(name) + "'");
}

}  // namespace

CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b) {
  std::vector<std::string> names;
  const std::size_t n = a.order(), m = b.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) names.push_back("(" + a.names()[i] + "," + b.names()[j] + ")");
  std::vector<std::vector<int>> table(n * m, std::vector<int>(n * m));
  for (std::size_t x = 0; x < n * m; ++x)
    for (std::size_t y = 0; y < n * m; ++y) {
      int p = a.mul(static_cast<int>(x / m), static_cast<int>(y / m));
      int q = b.mul(static_cast<int>(x % m), static_cast<int>(y % m));
      table[x][y] = p * static_cast<int>(m) + q;
    }
  return CayleyGroup::from_table(std::move(names), std::move(table), a.label() + "x" + b.label());
}

CayleyGroup from_catalog(std::string_view name) {
  if (name == "Z2xZ2") return klein_group();
  std::vector<std::string_view> factors;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '(') ++depth;
    if (name[i] == ')') --depth;
    if (name[i] == 'x' && depth == 0) {
      factors.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  }
  factors.push_back(name.substr(start));
  CayleyGroup g = catalog_factor(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, catalog_factor(factors[i]));
  if (factors.size() > 1) g.set_label(std::string(name));
  return g;
}

// ---------------------------------------------------------------- subgroups

Subgroup whole_group(const CayleyGroup& g) {
  Subgroup s;
  for (std::size_t i = 0; i < g.order(); ++i) s.elements.push_back(static_cast<int>(i));
  return s;
}

Subgroup trivial_subgroup(const CayleyGroup& g) { return Subgroup{{g.identity()}}; }

Subgroup subgroup_generated(const CayleyGroup& g, const std::vector<int>& seeds) {
  std::vector<bool> in(g.order(), false);
  std::deque<int> queue{g.identity()};
  in[static_cast<std::size_t>(g.identity())] = true;
  for (int s : seeds)
    if (s < 0 || static_cast<std::size_t>(s) >= g.order()) throw Error(ErrorKind::InvalidInput, "seed index out of range");
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s : seeds) {
      int y = g.mul(x, s);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = true;
        queue.push_back(y);
      }
    }
  }
  Subgroup out;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (in[i]) out.elements.push_back(static_cast<int>(i));
  return out;
}

Subgroup center(const CayleyGroup& g) {
  Subgroup out;
  const int n = static_cast<int>(g.order());
  for (int z = 0; z < n; ++z) {
    bool central = true;
    for (int x = 0; x < n && central; ++x) central = g.mul(z, x) == g.mul(x, z);
    if (central) out.elements.push_back(z);
  }
  return out;
}

Subgroup commutator_subgroup(const CayleyGroup& g) {
  std::set<int> comms;
  const int n = static_cast<int>(g.order());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) comms.insert(g.mul(g.mul(x, y), g.mul(g.inverse(x), g.inverse(y))));
  return subgroup_generated(g, std::vector<int>(comms.begin(), comms.end()));
}

bool is_normal(const CayleyGroup& g, const Subgroup& n) {
  for (int x = 0; x < static_cast<int>(g.order()); ++x)
    for (int h : n.elements)
      if (!n.contains(g.mul(g.mul(x, h), g.inverse(x)))) return false;
  return true;
}

bool is_abelian(const CayleyGroup& g) {
  const int n = static_cast<int>(g.order());
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

FgAbelian abelian_structure(const CayleyGroup& g, const Subgroup& s) {
  for (int x : s.elements)
    for (int y : s.elements)
      if (g.mul(x, y) != g.mul(y, x)) throw Error(ErrorKind::InvalidInput, "subgroup is not abelian");
  auto power_of = [&](int x, long m) {
    int r = g.identity();
    for (long i = 0; i < m; ++i) r = g.mul(r, x);
    return r;
  };
  long order = static_cast<long>(s.size());
  Vector factors;
  long rest = order;
  for (long p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // n[k] = log_p #{x : x^(p^k) = 1}
    std::vector<int> logs(static_cast<std::size_t>(e) + 2, 0);
    long pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      long count = std::count_if(s.elements.begin(), s.elements.end(), [&](int x) { return power_of(x, pk) == g.identity(); });
      int l = 0;
      for (long c = count; c > 1; c /= p) ++l;
      logs[static_cast<std::size_t>(k)] = l;
    }
    logs[static_cast<std::size_t>(e) + 1] = logs[static_cast<std::size_t>(e)];
    // at_least[k] = number of cyclic factors of order >= p^k
    auto at_least = [&](int k) { return logs[static_cast<std::size_t>(k)] - logs[static_cast<std::size_t>(k) - 1]; };
    long q = 1;
    for (int k = 1; k <= e; ++k) {
      q *= p;
      int exact = at_least(k) - (k < e ? at_least(k + 1) : 0);
      for (int i = 0; i < exact; ++i) factors.emplace_back(q);
    }
  }
  return canonical_form(0, factors);
}

CayleyGroup quotient(const CayleyGroup& g, const Subgroup& n) {
  if (!n.contains(g.identity()) || !is_normal(g, n))
    throw Error(ErrorKind::InvalidInput, "quotient by a subgroup that is not normal");
  const std::size_t order = g.order();
  std::vector<int> coset(order, -1);
  std::vector<int> reps;
  auto assign = [&](int rep) {
    int id = static_cast<int>(reps.size());
    reps.push_back(rep);
    for (int h : n.elements) coset[static_cast<std::size_t>(g.mul(rep, h))] = id;
  };
  assign(g.identity());
  for (std::size_t x = 0; x < order; ++x)
    if (coset[x] < 0) assign(static_cast<int>(x));
  std::vector<std::string> names;
  for (int r : reps) names.push_back(g.name(r));
  const std::size_t k = reps.size();
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) table[a][b] = coset[static_cast<std::size_t>(g.mul(reps[a], reps[b]))];
  return CayleyGroup::from_table(std::move(names), std::move(table));
}

FgAbelian abelianization(const CayleyGroup& g) {
  CayleyGroup q = quotient(g, commutator_subgroup(g));
  return abelian_structure(q, whole_group(q));
}

// ---------------------------------------------------------------- isomorphism

namespace {

std::vector<int> greedy_generators(const CayleyGroup& g) {
  std::vector<int> elems;
  for (std::size_t i = 0; i < g.order(); ++i) elems.push_back(static_cast<int>(i));
  std::stable_sort(elems.begin(), elems.end(), [&](int x, int y) { return g.element_order(x) > g.element_order(y); });
  std::vector<int> gens;
  Subgroup span = trivial_subgroup(g);
  for (int x : elems) {
    if (span.size() == g.order()) break;
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = subgroup_generated(g, gens);
  }
  return gens;
}

// Extends gens[i] -> imgs[i] along right multiplication; false on conflict or collision.
bool extend_map(const CayleyGroup& a, const CayleyGroup& b, const std::vector<int>& gens, const std::vector<int>& imgs,
                std::vector<int>& map) {
  map.assign(a.order(), -1);
  std::vector<bool> used(b.order(), false);
  map[static_cast<std::size_t>(a.identity())] = b.identity();
  used[static_cast<std::size_t>(b.identity())] = true;
  std::deque<int> queue{a.identity()};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < imgs.size(); ++k) {
      int y = a.mul(x, gens[k]);
      int z = b.mul(map[static_cast<std::size_t>(x)], imgs[k]);
      int& slot = map[static_cast<std::size_t>(y)];
      if (slot < 0) {
        if (used[static_cast<std::size_t>(z)]) return false;
        slot = z;
        used[static_cast<std::size_t>(z)] = true;
        queue.push_back(y);
      } else if (slot != z) {
        return false;
      }
    }
  }
  return true;
}

std::vector<int> order_profile(const CayleyGroup& g) {
  std::vector<int> p;
  for (std::size_t i = 0; i < g.order(); ++i) p.push_back(g.element_order(static_cast<int>(i)));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const CayleyGroup& a, const CayleyGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order() > CayleyGroup::kSearchCap || b.order() > CayleyGroup::kSearchCap)
    throw Error(ErrorKind::Unsupported, "isomorphism search is limited to order <= 64");
  const std::vector<int> gens = greedy_generators(a);
  std::vector<int> imgs;
  std::vector<int> map;
  std::function<bool()> search = [&]() -> bool {
    if (!extend_map(a, b, gens, imgs, map)) return false;
    if (imgs.size() == gens.size()) return true;
    const int want = a.element_order(gens[imgs.size()]);
    for (std::size_t h = 0; h < b.order(); ++h) {
      if (b.element_order(static_cast<int>(h)) != want) continue;
      imgs.push_back(static_cast<int>(h));
      if (search()) return true;
      imgs.pop_back();
    }
    return false;
  };
  if (!search()) return std::nullopt;
  return map;
}

bool is_isomorphic(const CayleyGroup& a, const CayleyGroup& b) {
  if (a.order() > CayleyGroup::kSearchCap || b.order() > CayleyGroup::kSearchCap)
    throw Error(ErrorKind::Unsupported, "isomorphism testing is limited to order <= 64");
  if (a.order() != b.order()) return false;
  if (order_profile(a) != order_profile(b)) return false;
  if (center(a).size() != center(b).size()) return false;
  if (abelianization(a) != abelianization(b)) return false;
  return find_isomorphism(a, b).has_value();
}

std::string identify(const CayleyGroup& g) {
  if (g.order() == 1) return "trivial";
  if (is_abelian(g)) {
    FgAbelian a = abelian_structure(g, whole_group(g));
    std::string out;
    for (const auto& d : a.torsion()) out += (out.empty() ? "Z" : "xZ") + d.get_str();
    return out;
  }
  if (g.order() <= CayleyGroup::kSearchCap) {
    if (g.order() == 8 && is_isomorphic(g, from_catalog("Q8"))) return "Q8";
    if (g.order() % 2 == 0 && is_isomorphic(g, from_catalog("D" + std::to_string(g.order() / 2))))
      return "D" + std::to_string(g.order() / 2);
  }
  return "order-" + std::to_string(g.order()) + " group";
}

}  // namespace thg
