#include "thg/abelian.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "thg/error.hpp"

namespace thg {

// ---------------------------------------------------------------- ExtNat

ExtNat::ExtNat(Integer v) : value_(std::move(v)) {
  if (*value_ < 0) throw Error(ErrorKind::Internal, "negative extended natural");
}

ExtNat ExtNat::infinity() {
  ExtNat e;
  e.value_.reset();
  return e;
}

const Integer& ExtNat::value() const {
  if (!value_) throw Error(ErrorKind::Internal, "value() on infinite extended natural");
  return *value_;
}

ExtNat operator*(const ExtNat& a, const ExtNat& b) {
  if (a.is_finite() && a.value() == 0) return a;
  if (b.is_finite() && b.value() == 0) return b;
  if (a.is_infinite() || b.is_infinite()) return ExtNat::infinity();
  return ExtNat(Integer(a.value() * b.value()));
}

bool operator==(const ExtNat& a, const ExtNat& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return a.value() == b.value();
}

ExtNat ExtNat::pow(const Integer& k) const {
  if (k == 0) return ExtNat(1);
  if (is_infinite()) return infinity();
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), value_->get_mpz_t(), k.get_ui());
  return ExtNat(out);
}

std::string ExtNat::to_string() const { return is_infinite() ? "inf" : value_->get_str(); }

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  IntMatrix m(0, cols);
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    m.append_row(v);
  }
  return m;
}

Vector IntMatrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector IntMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::append_row(std::span<const Integer> row) {
  if (row.size() != cols_) throw Error(ErrorKind::InvalidInput, "row length does not match column count");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void IntMatrix::append_rows(const IntMatrix& other) {
  for (std::size_t r = 0; r < other.rows(); ++r) append_row(other.row(r));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::InvalidInput, "vector length does not match column count");
  Vector out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidInput, "matrix product dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::InvalidInput, "matrix difference dimension mismatch");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------- Smith normal form

namespace {

struct SmithWork {
  IntMatrix a, left, right;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < left.cols(); ++c) std::swap(left(i, c), left(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < right.rows(); ++r) std::swap(right(r, i), right(r, j));
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += q * a(j, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) += q * left(j, c);
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += q * a(r, j);
    for (std::size_t r = 0; r < right.rows(); ++r) right(r, i) += q * right(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = -left(i, c);
  }

  // Moves the smallest nonzero |entry| of the trailing block to (t, t).
  bool place_pivot(std::size_t t) {
    std::size_t br = 0, bc = 0;
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < a.rows(); ++r)
      for (std::size_t c = t; c < a.cols(); ++c) {
        if (a(r, c) == 0) continue;
        Integer v = abs(a(r, c));
        if (!found || v < best) {
          best = v;
          br = r;
          bc = c;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, br);
    swap_cols(t, bc);
    return true;
  }

  void reduce(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < a.rows(); ++r) {
        if (a(r, t) == 0) continue;
        Integer q = a(r, t) / a(t, t);  // truncating
        add_row(r, t, -q);
        if (a(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < a.cols(); ++c) {
        if (a(t, c) == 0) continue;
        Integer q = a(t, c) / a(t, t);
        add_col(c, t, -q);
        if (a(t, c) != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder sits in row or column t; bring it to the pivot.
        std::size_t br = t, bc = t;
        Integer best = abs(a(t, t));
        for (std::size_t r = t + 1; r < a.rows(); ++r)
          if (a(r, t) != 0 && abs(a(r, t)) < best) { best = abs(a(r, t)); br = r; bc = t; }
        for (std::size_t c = t + 1; c < a.cols(); ++c)
          if (a(t, c) != 0 && abs(a(t, c)) < best) { best = abs(a(t, c)); br = t; bc = c; }
        swap_rows(t, br);
        swap_cols(t, bc);
        continue;
      }
      // Row and column clear: enforce divisibility of the trailing block.
      bool fixed = true;
      for (std::size_t r = t + 1; r < a.rows() && fixed; ++r)
        for (std::size_t c = t + 1; c < a.cols(); ++c)
          if (a(r, c) % a(t, t) != 0) {
            add_row(t, r, Integer(1));
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (a(t, t) < 0) negate_row(t);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t steps = std::min(m.rows(), m.cols());
  Vector diag(steps, Integer(0));
  for (std::size_t t = 0; t < steps; ++t) {
    if (!w.place_pivot(t)) break;
    w.reduce(t);
    diag[t] = w.a(t, t);
  }
  return SmithForm{std::move(diag), std::move(w.left), std::move(w.right)};
}

std::size_t matrix_rank(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  return static_cast<std::size_t>(std::count_if(snf.diag.begin(), snf.diag.end(), [](const Integer& d) { return d != 0; }));
}

IntMatrix left_kernel(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::size_t rank = 0;
  for (const auto& d : snf.diag)
    if (d != 0) ++rank;
  IntMatrix out(0, m.rows());
  for (std::size_t r = rank; r < m.rows(); ++r) out.append_row(snf.left.row(r));
  return out;
}

std::optional<Vector> solve_integer(const IntMatrix& m, std::span<const Integer> rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorKind::InvalidInput, "right-hand side length mismatch");
  auto snf = smith_normal_form(m);
  Vector lb = snf.left.apply(rhs);
  Vector y(m.cols(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const bool pivot = i < snf.diag.size() && snf.diag[i] != 0;
    if (!pivot) {
      if (lb[i] != 0) return std::nullopt;
      continue;
    }
    if (lb[i] % snf.diag[i] != 0) return std::nullopt;
    y[i] = lb[i] / snf.diag[i];
  }
  return snf.right.apply(y);
}

// ---------------------------------------------------------------- FgAbelian

FgAbelian FgAbelian::free(std::size_t rank) { return canonical_form(rank, {}); }

FgAbelian FgAbelian::cyclic(const Integer& n) {
  if (n == 0) return free(1);
  Integer a = abs(n);
  if (a == 1) return {};
  return canonical_form(0, {a});
}

Integer FgAbelian::torsion_order() const {
  Integer out = 1;
  for (const auto& d : torsion_) out *= d;
  return out;
}

ExtNat FgAbelian::order() const { return rank_ > 0 ? ExtNat::infinity() : ExtNat(torsion_order()); }

Vector FgAbelian::reduce(Vector coords) const {
  if (coords.size() != generator_count())
    throw Error(ErrorKind::InvalidInput, "coordinate vector has " + std::to_string(coords.size()) +
                                             " entries, group " + to_string() + " has " +
                                             std::to_string(generator_count()) + " generators");
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    Integer& x = coords[rank_ + j];
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), torsion_[j].get_mpz_t());
  }
  return coords;
}

bool FgAbelian::is_zero(std::span<const Integer> coords) const {
  Vector r = reduce(Vector(coords.begin(), coords.end()));
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

std::string FgAbelian::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (rank_ > 0) out = rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
  for (const auto& d : torsion_) {
    if (!out.empty()) out += " x ";
    out += "Z_" + d.get_str();
  }
  return out;
}

FgAbelian canonical_form(std::size_t rank, const Vector& torsion) {
  for (const auto& t : torsion)
    if (t < 2) throw Error(ErrorKind::InvalidInput, "torsion entry " + t.get_str() + " is < 2");
  FgAbelian out;
  out.rank_ = rank;
  if (torsion.empty()) return out;
  auto snf = smith_normal_form(IntMatrix::diagonal(torsion));
  for (const auto& d : snf.diag)
    if (d > 1) out.torsion_.push_back(d);
  return out;
}

FgAbelian direct_product(const FgAbelian& a, const FgAbelian& b) {
  Vector t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return canonical_form(a.rank() + b.rank(), t);
}

FgAbelian power(const FgAbelian& a, std::size_t k) {
  Vector t;
  t.reserve(a.torsion().size() * k);
  for (std::size_t i = 0; i < k; ++i) t.insert(t.end(), a.torsion().begin(), a.torsion().end());
  return canonical_form(a.rank() * k, t);
}

FgAbelian cokernel(std::size_t ambient_rank, const Vector& ambient_torsion, const IntMatrix& relations) {
  const std::size_t k = ambient_rank + ambient_torsion.size();
  if (relations.cols() != k)
    throw Error(ErrorKind::InvalidInput, "relation matrix has " + std::to_string(relations.cols()) +
                                             " columns, ambient has " + std::to_string(k) + " generators");
  IntMatrix stacked(0, k);
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    Vector row = relations.row(r);
    for (std::size_t j = 0; j < ambient_torsion.size(); ++j) {
      Integer& x = row[ambient_rank + j];
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), ambient_torsion[j].get_mpz_t());
    }
    stacked.append_row(row);
  }
  for (std::size_t j = 0; j < ambient_torsion.size(); ++j) {
    Vector row(k, Integer(0));
    row[ambient_rank + j] = ambient_torsion[j];
    stacked.append_row(row);
  }
  auto snf = smith_normal_form(stacked);
  std::size_t nonzero = 0;
  FgAbelian out;
  for (const auto& d : snf.diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) out.torsion_.push_back(d);
  }
  out.rank_ = k - nonzero;
  return out;
}

FgAbelian cokernel(const FgAbelian& ambient, const IntMatrix& relations) {
  return cokernel(ambient.rank(), ambient.torsion(), relations);
}

ExtNat subgroup_index(const FgAbelian& ambient, const IntMatrix& generators) {
  FgAbelian q = cokernel(ambient, generators);
  return q.order();
}

FgAbelian subgroup_structure(const FgAbelian& ambient, const IntMatrix& generators) {
  const std::size_t k = ambient.generator_count();
  if (generators.cols() != k) throw Error(ErrorKind::InvalidInput, "generator matrix column mismatch");
  // Relations among the generators: y with y * gens in the torsion lattice.
  IntMatrix stacked = generators;
  for (std::size_t j = 0; j < ambient.torsion().size(); ++j) {
    Vector row(k, Integer(0));
    row[ambient.rank() + j] = ambient.torsion()[j];
    stacked.append_row(row);
  }
  IntMatrix ker = left_kernel(stacked);
  IntMatrix relations(0, generators.rows());
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    Vector row = ker.row(r);
    row.resize(generators.rows());
    relations.append_row(row);
  }
  return cokernel(generators.rows(), {}, relations);
}

bool is_isomorphic(const FgAbelian& a, const FgAbelian& b) { return a == b; }

}  // namespace thg
