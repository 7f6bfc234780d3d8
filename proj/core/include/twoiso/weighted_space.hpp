#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace twoiso {

using Complex = std::complex<double>;

/// Coefficient vector over the basis of a WeightedSpace.
using Vec = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Residual norm below which Gram-Schmidt treats a vector as dependent.
inline constexpr double kRankTolerance = 1e-10;

/// A basis monomial z^k (disc) or z1^m z2^n (bidisc), identified by its exponents.
struct BasisLabel {
  std::vector<int> multi_index;

  int total_degree() const;
  std::string to_string() const;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

enum class SpaceKind { Dirichlet, Bidisc, Custom };

std::string to_string(SpaceKind kind);

/// Finite-dimensional coefficient space with a diagonal weighted inner product
///
///   <x, y> = sum_i w_i x_i conj(y_i).
///
/// Dirichlet and bidisc spaces are degree truncations of infinite-dimensional
/// function spaces; a custom space is either a truncation or a complete
/// finite-dimensional Hilbert space (e.g. C^d), which decides whether operator
/// verdicts need the safe-subspace bookkeeping.
class WeightedSpace {
 public:
  /// Throws InvalidArgument on empty/mismatched input, non-positive weights,
  /// duplicate labels or labels of differing length.
  WeightedSpace(SpaceKind kind, std::vector<BasisLabel> labels,
                std::vector<double> weights, bool truncation);

  SpaceKind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(labels_.size()); }
  const std::vector<BasisLabel>& labels() const { return labels_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double weight(int i) const { return weights_(i); }
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  int max_degree() const { return max_degree_; }
  bool is_truncation() const { return truncation_; }

  std::optional<int> index_of(const BasisLabel& label) const;

  /// Coefficient vector of the monomial with the given exponents (coefficient 1).
  /// Throws InvalidArgument if the monomial is not in the space.
  Vec monomial(std::vector<int> multi_index) const;
  Vec zero() const { return Vec::Zero(dimension()); }

  friend bool operator==(const WeightedSpace& a, const WeightedSpace& b);

 private:
  SpaceKind kind_;
  std::vector<BasisLabel> labels_;
  Eigen::VectorXd weights_;
  std::vector<int> degrees_;
  int max_degree_ = 0;
  bool truncation_ = false;
};

/// Monomials 1, z, ..., z^max_degree with weights k + 1 (k = 0 included, so ||1|| = 1).
WeightedSpace make_dirichlet_space(int max_degree);

/// Monomials z1^m z2^n with m + n <= max_total_degree, unit weights, ordered by
/// total degree and then by m descending.
WeightedSpace make_bidisc_space(int max_total_degree);

/// C^d with the standard inner product. Not a truncation.
WeightedSpace make_euclidean_space(int dim);

/// Weighted C^d with labels (0), ..., (d - 1). Not a truncation.
WeightedSpace make_weighted_space(std::vector<double> weights);

Complex inner(const Vec& x, const Vec& y, const WeightedSpace& space);
double norm_squared(const Vec& x, const WeightedSpace& space);
double norm(const Vec& x, const WeightedSpace& space);

void check_dimension(const Vec& x, const WeightedSpace& space);

/// Subspace of a WeightedSpace with an orthonormal basis in the weighted inner product.
class Subspace {
 public:
  /// Span of the generators, orthonormalized by modified Gram-Schmidt with one
  /// reorthogonalization pass. Generators whose residual norm is at most
  /// rank_tol are dropped.
  static Subspace span(const WeightedSpace& space, std::vector<Vec> generators,
                       double rank_tol = kRankTolerance);

  static Subspace whole(const WeightedSpace& space);
  static Subspace zero(const WeightedSpace& space);

  /// Span of the basis monomials at the given indices.
  static Subspace coordinate(const WeightedSpace& space,
                             const std::vector<int>& indices);

  const WeightedSpace& space() const { return space_; }
  const std::vector<Vec>& generators() const { return generators_; }
  const std::vector<Vec>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool empty() const { return basis_.empty(); }

  /// True if ||x - project(x)|| <= tol * max(1, ||x||).
  bool contains(const Vec& x, double tol = 1e-10) const;

 private:
  Subspace(WeightedSpace space, std::vector<Vec> generators,
           std::vector<Vec> basis);

  WeightedSpace space_;
  std::vector<Vec> generators_;
  std::vector<Vec> basis_;
};

/// Orthogonal projection sum_j <x, e_j> e_j onto sub.
Vec project(const Vec& x, const Subspace& sub);

/// All vectors of `within` orthogonal to `sub`. When sub is contained in
/// within, dim(sub) + dim(result) = dim(within); otherwise the result is
/// within ∩ sub⊥.
Subspace orthogonal_complement(const Subspace& sub, const Subspace& within);
Subspace orthogonal_complement(const Subspace& sub);

}  // namespace twoiso
