#include "thg/tower.hpp"

#include <map>
#include <sstream>

#include "thg/error.hpp"

namespace thg {

bool same_automorphism(const FgAbelian& layer, const IntMatrix& m, const IntMatrix& n) {
  const std::size_t k = layer.generator_count();
  for (std::size_t j = 0; j < k; ++j) {
    Vector e(k, Integer(0));
    e[j] = 1;
    if (layer.reduce(m.apply(e)) != layer.reduce(n.apply(e))) return false;
  }
  return true;
}

void validate_automorphism(const FgAbelian& layer, const IntMatrix& m, const std::string& what) {
  const std::size_t r = layer.rank(), k = layer.generator_count();
  if (m.rows() != k || m.cols() != k)
    throw Error(ErrorKind::InvariantViolation, what + " must be " + std::to_string(k) + "x" + std::to_string(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const bool free_i = i < r, free_j = j < r;
      if (free_i && free_j) continue;
      if (i == j) {
        if (m(i, j) != 1 && m(i, j) != -1)
          throw Error(ErrorKind::InvariantViolation, what + " must act on torsion coordinates by +-1");
      } else if (m(i, j) != 0) {
        throw Error(ErrorKind::InvariantViolation, what + " mixes free and torsion coordinates");
      }
    }
  if (r > 0) {
    IntMatrix f(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) f(i, j) = m(i, j);
    Integer d = determinant(f);
    if (d != 1 && d != -1) throw Error(ErrorKind::InvariantViolation, what + " is not invertible over Z");
  }
}

bool acts_trivially(const FgAbelian& layer, const IntMatrix& m) {
  return same_automorphism(layer, m, IntMatrix::identity(layer.generator_count()));
}

namespace {

// x = a (mod m) combined with x = b (mod n); nullopt if incompatible.
std::optional<std::pair<Integer, Integer>> crt(const Integer& a, const Integer& m, const Integer& b, const Integer& n) {
  Integer g = gcd(m, n);
  Integer diff = b - a;
  if (diff % g != 0) return std::nullopt;
  Integer lcm = m / g * n;
  Integer mg = m / g, ng = n / g, inv;
  if (ng == 1) {
    inv = 0;
  } else {
    mpz_invert(inv.get_mpz_t(), mg.get_mpz_t(), ng.get_mpz_t());
  }
  Integer t = (diff / g) * inv;
  mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), ng.get_mpz_t());
  Integer x = a + m * t;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), lcm.get_mpz_t());
  return std::make_pair(x, lcm);
}

// Solves M_k a = rhs_k in the layer for every k; each M_k has block form
// (free block arbitrary, torsion block diagonal).
std::optional<Vector> solve_layer_system(const FgAbelian& layer, const std::vector<IntMatrix>& ms,
                                         const std::vector<Vector>& rhs) {
  const std::size_t r = layer.rank(), k = layer.generator_count();
  Vector out(k, Integer(0));
  if (r > 0) {
    IntMatrix stacked(0, r);
    Vector b;
    for (std::size_t s = 0; s < ms.size(); ++s)
      for (std::size_t i = 0; i < r; ++i) {
        Vector row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = ms[s](i, j);
        stacked.append_row(row);
        b.push_back(rhs[s][i]);
      }
    auto sol = solve_integer(stacked, b);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) out[i] = (*sol)[i];
  }
  for (std::size_t j = 0; j < layer.torsion().size(); ++j) {
    const Integer& d = layer.torsion()[j];
    Integer x = 0, mod = 1;
    for (std::size_t s = 0; s < ms.size(); ++s) {
      Integer coef = ms[s](r + j, r + j), b = rhs[s][r + j];
      mpz_fdiv_r(coef.get_mpz_t(), coef.get_mpz_t(), d.get_mpz_t());
      mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
      Integer g = gcd(coef, d);  // gcd(0, d) = d
      if (b % g != 0) return std::nullopt;
      Integer m = d / g;
      Integer a0 = 0;
      if (m > 1) {
        Integer cg = coef / g, inv;
        mpz_invert(inv.get_mpz_t(), cg.get_mpz_t(), m.get_mpz_t());
        a0 = (b / g) * inv;
        mpz_fdiv_r(a0.get_mpz_t(), a0.get_mpz_t(), m.get_mpz_t());
      }
      auto merged = crt(x, mod, a0, m);
      if (!merged) return std::nullopt;
      x = merged->first;
      mod = merged->second;
    }
    out[r + j] = x;
  }
  return layer.reduce(out);
}

Vector add(const FgAbelian& layer, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return layer.reduce(std::move(out));
}

Vector negate(const FgAbelian& layer, const Vector& a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return layer.reduce(std::move(out));
}

}  // namespace

// ---------------------------------------------------------------- VirtAbelian

VirtAbelian::VirtAbelian(CayleyGroup base, FgAbelian layer, std::vector<IntMatrix> action, std::vector<Vector> cocycle)
    : base_(std::move(base)), layer_(std::move(layer)), action_(std::move(action)), cocycle_(std::move(cocycle)) {
  const std::size_t n = base_.order(), k = layer_.generator_count();
  if (action_.size() != n) throw Error(ErrorKind::InvariantViolation, "action must have one matrix per base element");
  for (std::size_t q = 0; q < n; ++q) validate_automorphism(layer_, action_[q], "action(" + base_.names()[q] + ")");
  if (!same_automorphism(layer_, action_[static_cast<std::size_t>(base_.identity())], IntMatrix::identity(k)))
    throw Error(ErrorKind::InvariantViolation, "action of the identity is not the identity");
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t r = 0; r < n; ++r) {
      auto qr = static_cast<std::size_t>(base_.mul(static_cast<int>(q), static_cast<int>(r)));
      if (!same_automorphism(layer_, action_[q] * action_[r], action_[qr]))
        throw Error(ErrorKind::InvariantViolation,
                    "action is not a homomorphism at (" + base_.names()[q] + ", " + base_.names()[r] + ")");
    }
  if (cocycle_.empty()) cocycle_.assign(n * n, Vector(k, Integer(0)));
  if (cocycle_.size() != n * n) throw Error(ErrorKind::InvariantViolation, "cocycle table has wrong size");
  for (auto& c : cocycle_) c = layer_.reduce(c);
  const int e = base_.identity();
  for (std::size_t q = 0; q < n; ++q) {
    if (!layer_.is_zero(this->cocycle(e, static_cast<int>(q))) || !layer_.is_zero(this->cocycle(static_cast<int>(q), e)))
      throw Error(ErrorKind::InvariantViolation, "cocycle is not normalized at " + base_.names()[q]);
  }
  for (int q = 0; q < static_cast<int>(n); ++q)
    for (int r = 0; r < static_cast<int>(n); ++r)
      for (int s = 0; s < static_cast<int>(n); ++s) {
        Vector lhs = add(layer_, act(q, this->cocycle(r, s)), this->cocycle(q, base_.mul(r, s)));
        Vector rhs = add(layer_, this->cocycle(q, r), this->cocycle(base_.mul(q, r), s));
        if (lhs != rhs)
          throw Error(ErrorKind::InvariantViolation, "cocycle identity fails at (" + base_.name(q) + ", " + base_.name(r) +
                                                         ", " + base_.name(s) + ")");
      }
}

VirtAbelian VirtAbelian::split(CayleyGroup base, FgAbelian layer) {
  const std::size_t k = layer.generator_count();
  std::vector<IntMatrix> action(base.order(), IntMatrix::identity(k));
  return VirtAbelian(std::move(base), std::move(layer), std::move(action), {});
}

const Vector& VirtAbelian::cocycle(int q, int r) const {
  return cocycle_.at(static_cast<std::size_t>(q) * base_.order() + static_cast<std::size_t>(r));
}

Vector VirtAbelian::act(int q, std::span<const Integer> a) const { return layer_.reduce(action(q).apply(a)); }

void VirtAbelian::check_element(const TowerElement& x) const {
  if (x.layer.size() != layer_.generator_count())
    throw Error(ErrorKind::InvalidInput, "element has " + std::to_string(x.layer.size()) + " layer coordinates, expected " +
                                             std::to_string(layer_.generator_count()));
  if (x.base < 0 || static_cast<std::size_t>(x.base) >= base_.order())
    throw Error(ErrorKind::InvalidInput, "element base index out of range");
}

TowerElement VirtAbelian::identity() const { return TowerElement{layer_.zero(), base_.identity()}; }

TowerElement VirtAbelian::make(Vector layer, int base) const {
  TowerElement x{std::move(layer), base};
  check_element(x);
  x.layer = layer_.reduce(std::move(x.layer));
  return x;
}

TowerElement VirtAbelian::multiply(const TowerElement& x, const TowerElement& y) const {
  check_element(x);
  check_element(y);
  Vector a = add(layer_, add(layer_, x.layer, act(x.base, y.layer)), cocycle(x.base, y.base));
  return TowerElement{std::move(a), base_.mul(x.base, y.base)};
}

TowerElement VirtAbelian::inverse(const TowerElement& x) const {
  check_element(x);
  const int qi = base_.inverse(x.base);
  Vector t = negate(layer_, add(layer_, x.layer, cocycle(x.base, qi)));
  return TowerElement{act(qi, t), qi};
}

bool VirtAbelian::equal(const TowerElement& x, const TowerElement& y) const {
  check_element(x);
  check_element(y);
  return x.base == y.base && layer_.reduce(x.layer) == layer_.reduce(y.layer);
}

ExtNat VirtAbelian::order() const { return layer_.order() * ExtNat(static_cast<long>(base_.order())); }

bool VirtAbelian::action_trivial() const {
  const IntMatrix id = IntMatrix::identity(layer_.generator_count());
  for (const auto& m : action_)
    if (!same_automorphism(layer_, m, id)) return false;
  return true;
}

bool VirtAbelian::is_abelian() const {
  if (!thg::is_abelian(base_) || !action_trivial()) return false;
  const int n = static_cast<int>(base_.order());
  for (int q = 0; q < n; ++q)
    for (int r = q + 1; r < n; ++r)
      if (cocycle(q, r) != cocycle(r, q)) return false;
  return true;
}

std::string VirtAbelian::element_name(const TowerElement& x) const {
  std::string out = "(";
  for (std::size_t i = 0; i < x.layer.size(); ++i) {
    if (i) out += ",";
    out += x.layer[i].get_str();
  }
  return out + ";" + base_.name(x.base) + ")";
}

TowerElement VirtAbelian::parse_element(std::string_view name) const {
  auto fail = [&]() { return Error(ErrorKind::InvalidInput, "malformed tower element '" + std::string(name) + "'"); };
  if (name.size() < 3 || name.front() != '(' || name.back() != ')') throw fail();
  std::string_view body = name.substr(1, name.size() - 2);
  auto semi = body.rfind(';');
  if (semi == std::string_view::npos) throw fail();
  std::string_view coords = body.substr(0, semi);
  Vector layer;
  while (!coords.empty()) {
    auto comma = coords.find(',');
    std::string tok(coords.substr(0, comma));
    Integer v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw fail();
    layer.push_back(v);
    if (comma == std::string_view::npos) break;
    coords = coords.substr(comma + 1);
  }
  return make(std::move(layer), base_.index_of(body.substr(semi + 1)));
}

std::vector<TowerElement> VirtAbelian::elements() const {
  if (!layer_.is_finite()) throw Error(ErrorKind::Unsupported, "cannot enumerate an infinite layer");
  std::vector<Vector> layer_elems{Vector{}};
  for (const auto& d : layer_.torsion()) {
    std::vector<Vector> next;
    for (const auto& v : layer_elems)
      for (Integer x = 0; x < d; ++x) {
        Vector w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    layer_elems = std::move(next);
  }
  std::vector<TowerElement> out;
  for (int q = 0; q < static_cast<int>(base_.order()); ++q)
    for (const auto& v : layer_elems) out.push_back(TowerElement{v, q});
  return out;
}

// ---------------------------------------------------------------- center

CenterSummary center_summary(const VirtAbelian& g) {
  const FgAbelian& layer = g.layer();
  const CayleyGroup& base = g.base();
  const std::size_t r = layer.rank(), k = layer.generator_count(), n = base.order();
  if (!layer.is_finite() && layer.torsion().size() + r == 0) {
    // unreachable: an infinite layer has rank > 0
  }
  if (layer.is_finite() && n > CayleyGroup::kSearchCap)
    throw Error(ErrorKind::Unsupported, "center computation limited to base order <= 64");

  CenterSummary out;
  out.fixed_generators = IntMatrix(0, k);
  if (r > 0) {
    IntMatrix stacked(0, r);
    for (std::size_t q = 0; q < n; ++q) {
      const IntMatrix& m = g.action(static_cast<int>(q));
      for (std::size_t i = 0; i < r; ++i) {
        Vector row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = m(i, j) - (i == j ? 1 : 0);
        stacked.append_row(row);
      }
    }
    IntMatrix ker = left_kernel(stacked.transpose());
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      Vector row = ker.row(i);
      row.resize(k, Integer(0));
      out.fixed_generators.append_row(row);
    }
  }
  for (std::size_t j = 0; j < layer.torsion().size(); ++j) {
    const Integer& d = layer.torsion()[j];
    bool all_plus = true;
    for (std::size_t q = 0; q < n && all_plus; ++q) {
      Integer s = g.action(static_cast<int>(q))(r + j, r + j) - 1;
      all_plus = s % d == 0;
    }
    Vector row(k, Integer(0));
    if (all_plus) {
      row[r + j] = 1;
    } else if (d % 2 == 0) {
      row[r + j] = d / 2;
    } else {
      continue;
    }
    out.fixed_generators.append_row(row);
  }
  out.fixed_layer = subgroup_structure(layer, out.fixed_generators);

  // Base elements carrying central elements, with one central lift each.
  const IntMatrix id = IntMatrix::identity(k);
  const Subgroup base_center = center(base);
  std::vector<int> qs;
  std::vector<Vector> lifts;
  for (int q : base_center.elements) {
    if (!same_automorphism(layer, g.action(q), id)) continue;
    std::vector<IntMatrix> ms;
    std::vector<Vector> rhs;
    for (int s = 0; s < static_cast<int>(n); ++s) {
      ms.push_back(id - g.action(s));
      Vector b(k);
      for (std::size_t i = 0; i < k; ++i) b[i] = g.cocycle(s, q)[i] - g.cocycle(q, s)[i];
      rhs.push_back(std::move(b));
    }
    auto sol = q == base.identity() ? std::optional<Vector>(layer.zero()) : solve_layer_system(layer, ms, rhs);
    if (!sol) continue;
    qs.push_back(q);
    lifts.push_back(*sol);
  }
  out.base_part = Subgroup{qs};

  const std::size_t m = out.fixed_generators.rows(), c = qs.size();
  // Relations among fixed generators.
  IntMatrix fixed_with_torsion = out.fixed_generators;
  for (std::size_t j = 0; j < layer.torsion().size(); ++j) {
    Vector row(k, Integer(0));
    row[r + j] = layer.torsion()[j];
    fixed_with_torsion.append_row(row);
  }
  IntMatrix relations(0, m + c);
  IntMatrix ker = left_kernel(fixed_with_torsion);
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    Vector row = ker.row(i);
    row.resize(m);
    row.resize(m + c, Integer(0));
    relations.append_row(row);
  }
  auto index_of = [&](int q) {
    for (std::size_t i = 0; i < c; ++i)
      if (qs[i] == q) return i;
    throw Error(ErrorKind::Internal, "central base elements not closed");
  };
  const IntMatrix fixed_t = fixed_with_torsion.transpose();
  {
    Vector row(m + c, Integer(0));
    row[m + index_of(base.identity())] = 1;
    relations.append_row(row);
  }
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      const int qr = base.mul(qs[a], qs[b]);
      const std::size_t ab = index_of(qr);
      Vector phi(k);
      for (std::size_t i = 0; i < k; ++i) phi[i] = lifts[a][i] + lifts[b][i] + g.cocycle(qs[a], qs[b])[i] - lifts[ab][i];
      auto y = solve_integer(fixed_t, phi);
      if (!y) throw Error(ErrorKind::Internal, "central lift product left the fixed layer");
      Vector row(m + c, Integer(0));
      for (std::size_t i = 0; i < m; ++i) row[i] = -(*y)[i];
      row[m + a] += 1;
      row[m + b] += 1;
      row[m + ab] -= 1;
      relations.append_row(row);
    }
  out.group = cokernel(m + c, {}, relations);
  for (std::size_t i = 0; i < m; ++i) out.generators.push_back(g.make(out.fixed_generators.row(i), base.identity()));
  for (std::size_t a = 0; a < c; ++a)
    if (qs[a] != base.identity()) out.generators.push_back(g.make(lifts[a], qs[a]));
  out.finite_order = out.fixed_layer.order() * ExtNat(static_cast<long>(c));
  out.index = subgroup_index(layer, out.fixed_generators) * ExtNat(static_cast<long>(n / c));
  return out;
}

// ---------------------------------------------------------------- realization

CayleyGroup to_cayley(const VirtAbelian& g) {
  if (!g.layer().is_finite()) throw Error(ErrorKind::Unsupported, "cannot tabulate a group with an infinite layer");
  if (g.order().value() > static_cast<long>(CayleyGroup::kSearchCap))
    throw Error(ErrorKind::Unsupported, "tabulation limited to order <= 64");
  auto elems = g.elements();
  std::map<std::string, int> index;
  std::vector<std::string> names;
  for (const auto& x : elems) {
    names.push_back(g.element_name(x));
    index[names.back()] = static_cast<int>(names.size()) - 1;
  }
  std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(g.element_name(g.multiply(elems[a], elems[b])));
  return CayleyGroup::from_table(std::move(names), std::move(table));
}

FgAbelian abelianization(const VirtAbelian& g) {
  const FgAbelian& layer = g.layer();
  const CayleyGroup& base = g.base();
  const std::size_t r = layer.rank(), k = layer.generator_count(), n = base.order();
  if (n > CayleyGroup::kSearchCap) throw Error(ErrorKind::Unsupported, "abelianization limited to base order <= 64");
  // Generators: layer coordinates, then one symbol x_q per base element.
  IntMatrix rel(0, k + n);
  for (std::size_t j = 0; j < layer.torsion().size(); ++j) {
    Vector row(k + n, Integer(0));
    row[r + j] = layer.torsion()[j];
    rel.append_row(row);
  }
  for (std::size_t q = 0; q < n; ++q) {
    const IntMatrix& m = g.action(static_cast<int>(q));
    for (std::size_t i = 0; i < k; ++i) {
      Vector row(k + n, Integer(0));
      for (std::size_t j = 0; j < k; ++j) row[j] = (i == j ? 1 : 0) - m(j, i);
      rel.append_row(row);
    }
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t s = 0; s < n; ++s) {
      Vector row(k + n, Integer(0));
      const Vector& c = g.cocycle(static_cast<int>(q), static_cast<int>(s));
      for (std::size_t j = 0; j < k; ++j) row[j] = -c[j];
      row[k + q] += 1;
      row[k + s] += 1;
      row[k + static_cast<std::size_t>(base.mul(static_cast<int>(q), static_cast<int>(s)))] -= 1;
      rel.append_row(row);
    }
  {
    Vector row(k + n, Integer(0));
    row[k + static_cast<std::size_t>(base.identity())] = 1;
    rel.append_row(row);
  }
  return cokernel(k + n, {}, rel);
}

bool extension_order_check(const VirtAbelian& g) {
  const ExtNat expected = g.layer().order() * ExtNat(static_cast<long>(g.base().order()));
  if (!g.layer().is_finite()) return expected.is_infinite() && g.order().is_infinite();
  if (expected.value() > static_cast<long>(CayleyGroup::kSearchCap)) return g.order() == expected;
  CayleyGroup t = to_cayley(g);
  return ExtNat(static_cast<long>(t.order())) == expected;
}

std::optional<TowerElement> torsion_witness(const VirtAbelian& g) {
  const FgAbelian& layer = g.layer();
  const CayleyGroup& base = g.base();
  const std::size_t k = layer.generator_count();
  for (int q = 0; q < static_cast<int>(base.order()); ++q) {
    if (q == base.identity()) continue;
    const int m = base.element_order(q);
    IntMatrix norm(k, k);
    IntMatrix power = IntMatrix::identity(k);
    Vector constant(k, Integer(0));
    int qk = base.identity();
    for (int i = 0; i < m; ++i) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) norm(a, b) += power(a, b);
      power = power * g.action(q);
      qk = base.mul(qk, q);
      if (i + 1 < m) {
        const Vector& c = g.cocycle(qk, q);
        for (std::size_t a = 0; a < k; ++a) constant[a] += c[a];
      }
    }
    auto sol = solve_layer_system(layer, {norm}, {negate(layer, layer.reduce(constant))});
    if (sol) return g.make(*sol, q);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- TowerSummary

ExtNat TowerSummary::finite_order() const {
  ExtNat out = base.order;
  for (const auto& l : layers) out = out * l.group.order().pow(l.multiplicity);
  return out;
}

Integer TowerSummary::free_rank() const {
  Integer out = base.free_rank;
  for (const auto& l : layers) out += Integer(static_cast<unsigned long>(l.group.rank())) * l.multiplicity;
  return out;
}

std::string TowerSummary::to_string() const {
  std::ostringstream os;
  os << "base " << base.label << " (order " << base.order.to_string() << ", " << (base.abelian ? "abelian" : "non-abelian")
     << ")";
  for (const auto& l : layers) {
    if (l.multiplicity == 0) continue;
    os << "; pi_" << l.degree << " = " << l.group.to_string() << " ^" << l.multiplicity.get_str();
  }
  os << "; order " << finite_order().to_string() << ", free rank " << free_rank().get_str()
     << (is_direct_product ? ", direct product" : ", not a direct product");
  return os.str();
}

}  // namespace thg
