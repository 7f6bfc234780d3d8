#include "twoiso/random.hpp"

#include <cmath>
#include <numbers>

namespace twoiso {

Vec random_vec(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vec x(dim);
  for (int i = 0; i < dim; ++i) x(i) = Complex(normal(rng), normal(rng));
  return x;
}

Matrix random_matrix(int dim, Rng& rng) {
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j) m.col(j) = random_vec(dim, rng);
  return m;
}

Matrix random_unitary(int dim, Rng& rng) {
  const Matrix g = random_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

}  // namespace twoiso
