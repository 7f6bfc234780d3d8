#pragma once

#include <optional>

#include "twoiso/weighted_space.hpp"

namespace twoiso {

/// Upper bound on how far an operator raises total degree; nullopt is "unbounded".
using DegreeGrowth = std::optional<int>;

/// Dense operator on a WeightedSpace. Column j of the matrix holds the
/// coefficients of the image of basis monomial j.
class Op {
 public:
  /// Throws DimensionMismatch unless matrix is square with side space.dimension().
  Op(WeightedSpace space, Matrix matrix, DegreeGrowth degree_growth);

  const WeightedSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  const DegreeGrowth& degree_growth() const { return degree_growth_; }
  int dimension() const { return space_.dimension(); }

  /// Copy carrying the tightest growth bound readable from the matrix.
  Op with_scanned_growth(double tol = 0.0) const;
  Op with_growth(DegreeGrowth growth) const;

 private:
  WeightedSpace space_;
  Matrix matrix_;
  DegreeGrowth degree_growth_;
};

Op identity(const WeightedSpace& space);
Op zero_op(const WeightedSpace& space);

/// Smallest g with matrix(i, j) == 0 (|.| <= tol) whenever deg(i) > deg(j) + g; at least 0.
int scan_degree_growth(const Matrix& matrix, const WeightedSpace& space,
                       double tol = 0.0);

/// Matrix-vector product in coefficient coordinates. A function object, so
/// unqualified calls never pick up std::apply through argument-dependent lookup.
inline constexpr struct ApplyFn {
  Vec operator()(const Op& a, const Vec& x) const;
} apply{};

/// Adjoint in the weighted inner product: W^-1 A^H W. Growth becomes unbounded.
Op adjoint(const Op& a);

/// x -> <x, v> u. Throws NotRankOne if u or v is zero. Growth is scanned.
Op rank_one(const Vec& u, const Vec& v, const WeightedSpace& space);

/// A∘B. Growths add.
Op compose(const Op& a, const Op& b);
Op operator+(const Op& a, const Op& b);
Op operator-(const Op& a, const Op& b);
Op operator*(Complex c, const Op& a);

/// I - 2 T*T + T*^2 T^2 on the full (possibly truncated) matrix.
Op delta2(const Op& t);

/// Largest singular value of W^1/2 A W^-1/2.
double weighted_operator_norm(const Op& a);

/// Span of basis monomials of degree <= max_degree - 2 * growth. On a space
/// that is not a truncation this is the whole space. Throws
/// TruncationTooSmall if empty and InvalidArgument if growth is unbounded.
Subspace safe_subspace(const Op& t);

/// Largest total degree on which T and T^2 are computed exactly, or nullopt
/// when the space is not a truncation.
std::optional<int> safe_degree(const Op& t);

/// True when x has no coefficients above the safe degree of t.
bool is_truncation_safe(const Op& t, const Vec& x);

struct QuadraticDefect {
  double value = 0.0;
  bool safe = true;
};

/// ||x||^2 - 2||Tx||^2 + ||T^2 x||^2 in the weighted norm, flagged unsafe if x
/// leaves the safe subspace.
QuadraticDefect defect_quadratic(const Op& t, const Vec& x);

/// <Δ₂(T)x, y> from four quadratic defects by complex polarization.
/// Throws NotTruncationSafe if x or y leaves the safe subspace.
Complex defect_pairing(const Op& t, const Vec& x, const Vec& y);

struct DefectReport {
  /// defect_matrix(i, j) = <Δ₂(T) e_j, e_i> for the subspace's orthonormal basis.
  Matrix defect_matrix;
  double max_residual = 0.0;
  int safe_dim = 0;
};

/// Restriction of Δ₂(T) to sub, reconstructed from forward applications only.
/// Throws NotTruncationSafe if sub is not contained in the safe subspace.
DefectReport defect_form_by_polarization(const Op& t, const Subspace& sub);

/// Coordinates sum_j <Δ₂(T)x, e_j> e_j of Δ₂(T)x against the safe subspace.
Vec defect_image_on_safe(const Op& t, const Vec& x);

}  // namespace twoiso
