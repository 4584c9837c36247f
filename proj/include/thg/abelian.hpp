#pragma once

// Finitely generated abelian groups over exact integers.
//
// Coordinates of an element of FgAbelian(rank, [d1..dk]) are the free
// coordinates followed by one residue per invariant factor.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thg {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

/// Natural number or infinity. Used for group orders and subgroup indices.
class ExtNat {
 public:
  ExtNat() : value_(Integer(0)) {}
  ExtNat(Integer v);  // NOLINT(google-explicit-constructor)
  ExtNat(long v) : ExtNat(Integer(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtNat infinity();

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Integer& value() const;
  bool is_one() const { return is_finite() && *value_ == 1; }

  friend ExtNat operator*(const ExtNat& a, const ExtNat& b);
  friend bool operator==(const ExtNat& a, const ExtNat& b);

  /// a^k with ∞^0 = 1.
  ExtNat pow(const Integer& k) const;

  std::string to_string() const;

 private:
  std::optional<Integer> value_;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> entries);
  static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void append_row(std::span<const Integer> row);
  void append_rows(const IntMatrix& other);

  IntMatrix transpose() const;
  Vector apply(std::span<const Integer> v) const;  // this * v (column vector)
  bool is_identity() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  Vector diag;     // min(rows, cols) entries, divisor chain, zeros last
  IntMatrix left;  // rows x rows, unimodular
  IntMatrix right; // cols x cols, unimodular
};

/// left * m * right is diagonal with `diag` on the diagonal.
SmithForm smith_normal_form(const IntMatrix& m);

/// Invariant-factor form: every torsion entry >= 2 and d_i | d_{i+1}.
class FgAbelian {
 public:
  FgAbelian() = default;  // trivial group

  static FgAbelian free(std::size_t rank);
  static FgAbelian cyclic(const Integer& n);  // n = 0 gives Z, n = 1 trivial

  std::size_t rank() const { return rank_; }
  const Vector& torsion() const { return torsion_; }
  std::size_t generator_count() const { return rank_ + torsion_.size(); }

  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return rank_ == 0; }
  Integer torsion_order() const;
  ExtNat order() const;

  /// Reduce torsion coordinates into [0, d).
  Vector reduce(Vector coords) const;
  bool is_zero(std::span<const Integer> coords) const;
  Vector zero() const { return Vector(generator_count(), Integer(0)); }

  /// "Z^2 x Z_2 x Z_4"; the trivial group prints as "0".
  std::string to_string() const;

  friend bool operator==(const FgAbelian& a, const FgAbelian& b) = default;
  friend auto operator<=>(const FgAbelian& a, const FgAbelian& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (a.torsion_.size() != b.torsion_.size()) return a.torsion_.size() <=> b.torsion_.size();
    for (std::size_t i = 0; i < a.torsion_.size(); ++i) {
      int c = cmp(a.torsion_[i], b.torsion_[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  friend FgAbelian canonical_form(std::size_t rank, const Vector& torsion);
  friend FgAbelian cokernel(std::size_t, const Vector&, const IntMatrix&);

  std::size_t rank_ = 0;
  Vector torsion_;
};

/// Throws InvalidInput on a torsion entry < 2.
FgAbelian canonical_form(std::size_t rank, const Vector& torsion);

FgAbelian direct_product(const FgAbelian& a, const FgAbelian& b);
FgAbelian power(const FgAbelian& a, std::size_t k);

/// Quotient of Z^rank + sum Z_t by the span of the relation rows.
FgAbelian cokernel(std::size_t ambient_rank, const Vector& ambient_torsion, const IntMatrix& relations);
FgAbelian cokernel(const FgAbelian& ambient, const IntMatrix& relations);

/// Index of the subgroup spanned by the generator rows; infinity on rank deficit.
ExtNat subgroup_index(const FgAbelian& ambient, const IntMatrix& generators);

/// Isomorphism type of the subgroup spanned by the generator rows.
FgAbelian subgroup_structure(const FgAbelian& ambient, const IntMatrix& generators);

bool is_isomorphic(const FgAbelian& a, const FgAbelian& b);

/// Basis (as rows) of {y : y * m = 0} over the integers.
IntMatrix left_kernel(const IntMatrix& m);

/// Some integer x with m * x = rhs, if one exists.
std::optional<Vector> solve_integer(const IntMatrix& m, std::span<const Integer> rhs);

/// Rank over the rationals.
std::size_t matrix_rank(const IntMatrix& m);

}  // namespace thg
