#include "twoiso/operator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "twoiso/errors.hpp"

namespace twoiso {

Op::Op(WeightedSpace space, Matrix matrix, DegreeGrowth degree_growth)
    : space_(std::move(space)),
      matrix_(std::move(matrix)),
      degree_growth_(degree_growth) {
  const auto n = space_.dimension();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionMismatch("operator matrix is " + std::to_string(matrix_.rows()) +
                            "x" + std::to_string(matrix_.cols()) +
                            " but space has dimension " + std::to_string(n));
  }
  if (degree_growth_ && *degree_growth_ < 0) {
    throw InvalidArgument("degree growth must be non-negative");
  }
}

Op Op::with_scanned_growth(double tol) const {
  return {space_, matrix_, scan_degree_growth(matrix_, space_, tol)};
}

Op Op::with_growth(DegreeGrowth growth) const { return {space_, matrix_, growth}; }

Op identity(const WeightedSpace& space) {
  return {space, Matrix::Identity(space.dimension(), space.dimension()), 0};
}

Op zero_op(const WeightedSpace& space) {
  return {space, Matrix::Zero(space.dimension(), space.dimension()), 0};
}

int scan_degree_growth(const Matrix& matrix, const WeightedSpace& space,
                       double tol) {
  int growth = 0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      if (std::abs(matrix(i, j)) > tol) {
        growth = std::max(growth, space.degree(static_cast<int>(i)) -
                                      space.degree(static_cast<int>(j)));
      }
    }
  }
  return growth;
}

namespace {

void check_same_space(const Op& a, const Op& b) {
  if (!(a.space() == b.space())) {
    throw DimensionMismatch("operators act on different spaces");
  }
}

DegreeGrowth add_growth(const DegreeGrowth& a, const DegreeGrowth& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

DegreeGrowth max_growth(const DegreeGrowth& a, const DegreeGrowth& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

}  // namespace

Vec ApplyFn::operator()(const Op& a, const Vec& x) const {
  check_dimension(x, a.space());
  return a.matrix() * x;
}

Op adjoint(const Op& a) {
  const Eigen::VectorXcd w = a.space().weights().cast<Complex>();
  const Eigen::VectorXcd w_inv = w.cwiseInverse();
  Matrix m = w_inv.asDiagonal() * a.matrix().adjoint() * w.asDiagonal();
  return {a.space(), std::move(m), std::nullopt};
}

Op rank_one(const Vec& u, const Vec& v, const WeightedSpace& space) {
  check_dimension(u, space);
  check_dimension(v, space);
  if (u.isZero(0.0) || v.isZero(0.0)) throw NotRankOne();
  // Row vector x -> <x, v> = sum_i w_i x_i conj(v_i).
  const Eigen::RowVectorXcd functional =
      space.weights().cast<Complex>().cwiseProduct(v.conjugate()).transpose();
  Matrix m = u * functional;
  const int growth = scan_degree_growth(m, space);
  return {space, std::move(m), growth};
}

Op compose(const Op& a, const Op& b) {
  check_same_space(a, b);
  return {a.space(), a.matrix() * b.matrix(),
          add_growth(a.degree_growth(), b.degree_growth())};
}

Op operator+(const Op& a, const Op& b) {
  check_same_space(a, b);
  return {a.space(), a.matrix() + b.matrix(),
          max_growth(a.degree_growth(), b.degree_growth())};
}

Op operator-(const Op& a, const Op& b) {
  check_same_space(a, b);
  return {a.space(), a.matrix() - b.matrix(),
          max_growth(a.degree_growth(), b.degree_growth())};
}

Op operator*(Complex c, const Op& a) {
  return {a.space(), c * a.matrix(), a.degree_growth()};
}

Op delta2(const Op& t) {
  const Op ts = adjoint(t);
  const Matrix& m = t.matrix();
  const Matrix& ms = ts.matrix();
  const auto n = t.dimension();
  Matrix d = Matrix::Identity(n, n) - 2.0 * ms * m + ms * ms * m * m;
  return {t.space(), std::move(d), std::nullopt};
}

double weighted_operator_norm(const Op& a) {
  const Eigen::VectorXd sqrt_w = a.space().weights().cwiseSqrt();
  const Matrix conj = sqrt_w.cast<Complex>().asDiagonal() * a.matrix() *
                      sqrt_w.cwiseInverse().cast<Complex>().asDiagonal();
  Eigen::JacobiSVD<Matrix> svd(conj);
  return svd.singularValues()(0);
}

std::optional<int> safe_degree(const Op& t) {
  if (!t.space().is_truncation()) return std::nullopt;
  if (!t.degree_growth()) {
    throw InvalidArgument("safe subspace needs a finite degree growth");
  }
  const int limit = t.space().max_degree() - 2 * *t.degree_growth();
  if (limit < 0) throw TruncationTooSmall();
  return limit;
}

Subspace safe_subspace(const Op& t) {
  const auto limit = safe_degree(t);
  if (!limit) return Subspace::whole(t.space());
  std::vector<int> indices;
  for (int i = 0; i < t.dimension(); ++i) {
    if (t.space().degree(i) <= *limit) indices.push_back(i);
  }
  return Subspace::coordinate(t.space(), indices);
}

bool is_truncation_safe(const Op& t, const Vec& x) {
  check_dimension(x, t.space());
  if (!t.space().is_truncation()) return true;
  if (!t.degree_growth()) return false;
  const int limit = t.space().max_degree() - 2 * *t.degree_growth();
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  for (int i = 0; i < t.dimension(); ++i) {
    if (t.space().degree(i) > limit && std::abs(x(i)) > 1e-13 * scale) {
      return false;
    }
  }
  return true;
}

QuadraticDefect defect_quadratic(const Op& t, const Vec& x) {
  const auto& space = t.space();
  const Vec tx = apply(t, x);
  const Vec ttx = apply(t, tx);
  const double value =
      norm_squared(x, space) - 2.0 * norm_squared(tx, space) + norm_squared(ttx, space);
  return {value, is_truncation_safe(t, x)};
}

namespace {

// Images of a vector under T and T^2, so that polarization needs no further
// matrix products: T(x + c y) = Tx + c Ty.
struct Orbit {
  Vec x;
  Vec tx;
  Vec ttx;
};

Orbit orbit(const Op& t, const Vec& x) {
  Vec tx = apply(t, x);
  Vec ttx = apply(t, tx);
  return {x, std::move(tx), std::move(ttx)};
}

double quadratic(const WeightedSpace& space, const Orbit& a, const Orbit& b,
                 Complex c) {
  return norm_squared(a.x + c * b.x, space) -
         2.0 * norm_squared(a.tx + c * b.tx, space) +
         norm_squared(a.ttx + c * b.ttx, space);
}

// <Δ₂ x, y> = 1/4 sum_k i^k q(x + i^k y).
Complex polarize(const WeightedSpace& space, const Orbit& x, const Orbit& y) {
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex sum = 0.0;
  for (const auto& c : kPowers) {
    sum += c * quadratic(space, x, y, c);
  }
  return 0.25 * sum;
}

void require_safe(const Op& t, const Vec& x, const char* what) {
  if (!is_truncation_safe(t, x)) {
    throw NotTruncationSafe(std::string(what) +
                            " is outside the truncation-safe subspace");
  }
}

}  // namespace

Complex defect_pairing(const Op& t, const Vec& x, const Vec& y) {
  require_safe(t, x, "first argument");
  require_safe(t, y, "second argument");
  return polarize(t.space(), orbit(t, x), orbit(t, y));
}

DefectReport defect_form_by_polarization(const Op& t, const Subspace& sub) {
  if (!(sub.space() == t.space())) {
    throw DimensionMismatch("subspace and operator live in different spaces");
  }
  std::vector<Orbit> orbits;
  orbits.reserve(sub.basis().size());
  for (const auto& e : sub.basis()) {
    require_safe(t, e, "subspace basis vector");
    orbits.push_back(orbit(t, e));
  }
  const auto n = static_cast<Eigen::Index>(orbits.size());
  DefectReport report;
  report.defect_matrix = Matrix::Zero(n, n);
  report.safe_dim = static_cast<int>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& ej = orbits[static_cast<std::size_t>(j)];
      const auto& ei = orbits[static_cast<std::size_t>(i)];
      const Complex entry = polarize(t.space(), ej, ei);
      report.defect_matrix(i, j) = entry;
      report.max_residual = std::max(report.max_residual, std::abs(entry));
    }
  }
  return report;
}

Vec defect_image_on_safe(const Op& t, const Vec& x) {
  require_safe(t, x, "vector");
  const Subspace safe = safe_subspace(t);
  const Orbit ox = orbit(t, x);
  Vec image = t.space().zero();
  for (const auto& e : safe.basis()) {
    image += polarize(t.space(), ox, orbit(t, e)) * e;
  }
  return image;
}

}  // namespace twoiso
