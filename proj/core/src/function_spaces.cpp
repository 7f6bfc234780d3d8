#include "twoiso/function_spaces.hpp"

#include <algorithm>
#include <cmath>

#include "twoiso/errors.hpp"

namespace twoiso {

int PolyCoeffs::degree() const {
  for (int i = static_cast<int>(a.size()); i >= 1; --i) {
    if (a[static_cast<std::size_t>(i - 1)] != Complex(0.0)) return i;
  }
  return 0;
}

Complex PolyCoeffs::coeff(int i) const {
  if (i < 1 || i > static_cast<int>(a.size())) return 0.0;
  return a[static_cast<std::size_t>(i - 1)];
}

Op dirichlet_shift(int N) {
  if (N < 2) throw InvalidArgument("dirichlet_shift needs N >= 2");
  const auto space = make_dirichlet_space(N);
  Matrix m = Matrix::Zero(N + 1, N + 1);
  for (int k = 0; k < N; ++k) m(k + 1, k) = 1.0;
  return {space, std::move(m), 1};
}

Op perturbed_dirichlet(int N, const PolyCoeffs& p) {
  const int deg = p.degree();
  if (deg > N - 1) {
    throw InvalidArgument("polynomial degree " + std::to_string(deg) +
                          " too large for truncation N = " + std::to_string(N));
  }
  const Op shift = dirichlet_shift(N);
  if (deg == 0) return shift;
  const auto& space = shift.space();
  Vec pv = space.zero();
  for (int i = 1; i <= deg; ++i) pv(i) = p.coeff(i);
  Op result = shift + rank_one(pv, space.monomial({0}), space);
  return result.with_growth(std::max(1, deg));
}

Op perturbed_dirichlet_monomial(int N, Complex alpha, int n) {
  if (n < 0 || n > N - 1) {
    throw InvalidArgument("monomial power out of range for truncation");
  }
  const Op shift = dirichlet_shift(N);
  if (alpha == Complex(0.0)) return shift;
  const auto& space = shift.space();
  Vec pv = space.zero();
  pv(n) = alpha;
  return shift + rank_one(pv, space.monomial({0}), space);
}

double pper_condition_residual(const PolyCoeffs& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    sum += static_cast<double>(i + 1) * std::norm(p.a[i]);
  }
  return sum + 2.0 * p.coeff(1).real();
}

double pper_defect_on_one(const PolyCoeffs& p) { return -pper_condition_residual(p); }

double pper_kernel_residual(const PolyCoeffs& p, std::optional<int> max_degree) {
  const double d = pper_defect_on_one(p);
  double sum = d * d;
  // <Δ₂1, z^m / sqrt(m+1)> = -sqrt(m+1) a_{m+1}.
  const int last = max_degree ? std::min(p.degree(), *max_degree + 1) : p.degree();
  for (int i = 2; i <= last; ++i) sum += i * std::norm(p.coeff(i));
  return std::sqrt(sum);
}

Op bidisc_shift(int N, int axis) {
  if (N < 2) throw InvalidArgument("bidisc_shift needs N >= 2");
  if (axis != 1 && axis != 2) throw InvalidArgument("axis must be 1 or 2");
  const auto space = make_bidisc_space(N);
  Matrix m = Matrix::Zero(space.dimension(), space.dimension());
  for (int j = 0; j < space.dimension(); ++j) {
    auto exps = space.labels()[static_cast<std::size_t>(j)].multi_index;
    exps[static_cast<std::size_t>(axis - 1)] += 1;
    if (const auto i = space.index_of({exps})) m(*i, j) = 1.0;
  }
  return {space, std::move(m), 1};
}

Vec bidisc_example_u(const WeightedSpace& space) {
  return space.monomial({0, 1}) - space.monomial({2, 0});
}

Vec bidisc_example_v(const WeightedSpace& space) { return space.monomial({1, 0}); }

Op bidisc_example_operator(int N) {
  if (N < 4) throw InvalidArgument("bidisc_example_operator needs N >= 4");
  const Op shift = bidisc_shift(N, 1);
  const auto& space = shift.space();
  const Op k = rank_one(bidisc_example_u(space), bidisc_example_v(space), space);
  return (shift + k).with_growth(2);
}

}  // namespace twoiso
