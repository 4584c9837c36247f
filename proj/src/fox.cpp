#include "thg/fox.hpp"

#include <map>

#include "thg/error.hpp"

namespace thg::fox {

Integer binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

MultiplicityTriple multiplicities(int n, int i) {
  if (n < 1 || i < 1 || i > n)
    throw Error(ErrorKind::InvalidInput, "multiplicities need 1 <= i <= n (got n=" + std::to_string(n) +
                                             ", i=" + std::to_string(i) + ")");
  return MultiplicityTriple{n, i, binomial(n - 2, i - 2), binomial(n - 1, i - 2), binomial(n - 1, i - 1)};
}

Integer stacked_multiplicity(int n, int i) {
  if (i == 1) return 1;
  Integer sum = 0;
  for (int m = std::max(i, 2); m <= n; ++m) sum += binomial(m - 2, i - 2);
  return sum;
}

namespace {

void require_degree(const SpaceModel& x, int n, int lowest) {
  if (n < lowest) throw Error(ErrorKind::InvalidInput, "degree must be >= " + std::to_string(lowest));
  if (n > x.truncation)
    throw Error(ErrorKind::InsufficientData, x.name + ": degree " + std::to_string(n) + " exceeds truncation " +
                                                 std::to_string(x.truncation));
}

GroupInfo abelian_info(const FgAbelian& a) {
  return GroupInfo{a.to_string(), a.order(), Integer(static_cast<unsigned long>(a.rank())), true};
}

// Multiplicity of degree i in a summary, counting the base as degree 1.
std::map<int, Integer> degree_multiplicities(const TowerSummary& t, bool base_counts) {
  std::map<int, Integer> out;
  if (base_counts) out[1] = 1;
  for (const auto& l : t.layers) out[l.degree] += l.multiplicity;
  return out;
}

}  // namespace

TowerSummary tau_invariants(const SpaceModel& x, int n) {
  require_degree(x, n, 1);
  TowerSummary t;
  t.base = pi1_info(x.pi1);
  for (int i = 2; i <= n; ++i) {
    Integer flat = multiplicities(n, i).gamma;
    if (flat != stacked_multiplicity(n, i))
      throw Error(ErrorKind::Internal, "layer multiplicity mismatch at degree " + std::to_string(i));
    t.layers.push_back(TowerLayer{i, x.pi_at(i), flat});
  }
  t.is_direct_product = x.whitehead_trivial() && x.pi1_action_trivial();
  return t;
}

TowerSummary loop_tau_invariants(const SpaceModel& x, int n) {
  require_degree(x, n, 2);
  TowerSummary t;
  t.base = abelian_info(FgAbelian());
  for (int i = 2; i <= n; ++i) t.layers.push_back(TowerLayer{i, x.pi_at(i), multiplicities(n, i).alpha});
  t.is_direct_product = true;
  return t;
}

std::optional<Subgroup> gottlieb1_elements(const SpaceModel& x) {
  const auto* c = std::get_if<CayleyGroup>(&x.pi1);
  if (!c) return std::nullopt;
  auto s = x.gottlieb_at(1);
  if (!s) return std::nullopt;
  switch (s->kind) {
    case SubgroupData::Kind::Full: return whole_group(*c);
    case SubgroupData::Kind::Trivial: return trivial_subgroup(*c);
    case SubgroupData::Kind::Center: return center(*c);
    case SubgroupData::Kind::Elements: {
      std::vector<int> seeds;
      for (const auto& name : s->elements) seeds.push_back(c->index_of(name));
      return subgroup_generated(*c, seeds);
    }
    case SubgroupData::Kind::Generators: break;
  }
  throw Error(ErrorKind::InvariantViolation, "generator matrices need an abelian pi_1");
}

std::optional<FgAbelian> gottlieb_group(const SpaceModel& x, int i) {
  auto s = x.gottlieb_at(i);
  if (!s) return std::nullopt;
  using K = SubgroupData::Kind;
  if (i >= 2) {
    FgAbelian p = x.pi_at(i);
    if (s->kind == K::Full) return p;
    if (s->kind == K::Trivial) return FgAbelian();
    return subgroup_structure(p, s->generators);
  }
  if (const auto* a = std::get_if<FgAbelian>(&x.pi1)) {
    if (s->kind == K::Full || s->kind == K::Center) return *a;
    if (s->kind == K::Trivial) return FgAbelian();
    return subgroup_structure(*a, s->generators);
  }
  if (const auto* c = std::get_if<CayleyGroup>(&x.pi1)) {
    Subgroup sub = *gottlieb1_elements(x);
    try {
      return abelian_structure(*c, sub);
    } catch (const Error&) {
      throw Error(ErrorKind::InvariantViolation, x.name + ": G_1 is not abelian, so it cannot be central");
    }
  }
  const auto& v = std::get<VirtAbelian>(x.pi1);
  if (s->kind == K::Trivial) return FgAbelian();
  if (s->kind == K::Center) return center_summary(v).group;
  if (!v.is_abelian()) throw Error(ErrorKind::InvariantViolation, x.name + ": G_1 is not abelian, so it cannot be central");
  return abelianization(v);
}

std::optional<ExtNat> gottlieb_index(const SpaceModel& x, int i) {
  auto s = x.gottlieb_at(i);
  if (!s) return std::nullopt;
  using K = SubgroupData::Kind;
  if (s->kind == K::Full) return ExtNat(1);
  if (i >= 2) {
    FgAbelian p = x.pi_at(i);
    if (s->kind == K::Trivial) return p.order();
    return subgroup_index(p, s->generators);
  }
  if (const auto* a = std::get_if<FgAbelian>(&x.pi1)) {
    if (s->kind == K::Center) return ExtNat(1);
    if (s->kind == K::Trivial) return a->order();
    return subgroup_index(*a, s->generators);
  }
  if (const auto* c = std::get_if<CayleyGroup>(&x.pi1)) {
    Subgroup sub = *gottlieb1_elements(x);
    return ExtNat(static_cast<long>(c->order() / sub.size()));
  }
  const auto& v = std::get<VirtAbelian>(x.pi1);
  if (s->kind == K::Trivial) return v.order();
  return center_summary(v).index;
}

GottliebFox gottlieb_fox_invariants(const SpaceModel& x, int n) {
  require_degree(x, n, 1);
  GottliebFox out;
  std::vector<std::optional<FgAbelian>> groups(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    groups[static_cast<std::size_t>(i)] = gottlieb_group(x, i);
    if (!groups[static_cast<std::size_t>(i)]) out.missing.push_back(i);
  }
  if (!out.missing.empty()) return out;
  TowerSummary t;
  t.base = abelian_info(*groups[1]);
  for (int i = 2; i <= n; ++i)
    t.layers.push_back(TowerLayer{i, *groups[static_cast<std::size_t>(i)], multiplicities(n, i).gamma});
  // Whitehead products and pi_1 actions vanish on Gottlieb elements.
  t.is_direct_product = true;
  out.summary = std::move(t);
  return out;
}

Verdict is_n_gottlieb(const SpaceModel& x, int n) {
  require_degree(x, n, 1);
  auto idx = gottlieb_index(x, n);
  if (!idx) return Verdict::Indeterminate;
  return verdict_of(idx->is_one());
}

Verdict is_n_gottlieb_fox(const SpaceModel& x, int n) {
  require_degree(x, n, 1);
  ExtNat product = 1;
  bool missing = false;
  for (int i = 1; i <= n; ++i) {
    auto idx = gottlieb_index(x, i);
    if (!idx) {
      missing = true;
      continue;
    }
    product = product * idx->pow(multiplicities(n, i).gamma);
  }
  // A known factor above 1 already decides the product.
  if (!product.is_one()) return Verdict::False;
  return missing ? Verdict::Indeterminate : Verdict::True;
}

CheckReport fox_sequence_check(const SpaceModel& x, int n) {
  require_degree(x, n, 2);
  CheckReport r;
  TowerSummary tn = tau_invariants(x, n), tp = tau_invariants(x, n - 1), loop = loop_tau_invariants(x, n);
  auto full = degree_multiplicities(tn, true), prev = degree_multiplicities(tp, true),
       kern = degree_multiplicities(loop, false);
  bool layers_ok = true;
  std::string detail;
  for (int i = 1; i <= n; ++i) {
    Integer lhs = full[i], rhs = kern[i] + prev[i];
    if (lhs != rhs) {
      layers_ok = false;
      detail += "degree " + std::to_string(i) + ": " + lhs.get_str() + " != " + rhs.get_str() + "; ";
    }
  }
  if (layers_ok) detail = "multiplicities split degree by degree";
  r.add(CheckEntry{"fox.sequence.layers", x.name, n, layers_ok ? CheckStatus::Pass : CheckStatus::Fail,
                   "C(n-1,i-1) = C(n-2,i-2) + C(n-2,i-1)", "torus group split sequence: layer multiset", "derived",
                   detail});
  ExtNat lhs = tn.finite_order(), rhs = loop.finite_order() * tp.finite_order();
  r.add(CheckEntry{"fox.sequence.order", x.name, n, lhs == rhs ? CheckStatus::Pass : CheckStatus::Fail,
                   "|tau_n| = |kernel| * |tau_{n-1}|", "torus group split sequence: order", "derived",
                   lhs.to_string() + " vs " + rhs.to_string()});
  Integer rl = tn.free_rank(), rr = loop.free_rank() + tp.free_rank();
  r.add(CheckEntry{"fox.sequence.rank", x.name, n, rl == rr ? CheckStatus::Pass : CheckStatus::Fail,
                   "rank tau_n = rank kernel + rank tau_{n-1}", "torus group split sequence: free rank", "derived",
                   rl.get_str() + " vs " + rr.get_str()});
  return r;
}

CheckReport gottlieb_fox_equivalence_check(const SpaceModel& x, int max_n) {
  require_degree(x, max_n, 1);
  CheckReport r;
  Verdict prefix = Verdict::True;
  for (int n = 1; n <= max_n; ++n) {
    prefix = verdict_and(prefix, is_n_gottlieb(x, n));
    Verdict b = is_n_gottlieb_fox(x, n);
    CheckStatus st;
    if (prefix == Verdict::Indeterminate || b == Verdict::Indeterminate) st = CheckStatus::Indeterminate;
    else st = prefix == b ? CheckStatus::Pass : CheckStatus::Fail;
    std::string detail = "Gottlieb through n: " + to_string(prefix) + ", index product 1: " + to_string(b);
    if (auto idx = gottlieb_index(x, 1); idx && !idx->is_one()) detail += ", [pi_1 : G_1] = " + idx->to_string();
    r.add(CheckEntry{"fox.gottlieb-fox-equivalence", x.name, n, st, "index product over gamma multiplicities",
                     "Gottlieb through degree n iff Gottlieb-Fox in degree n", "derived", detail});
  }
  return r;
}

}  // namespace thg::fox
