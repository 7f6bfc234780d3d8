#pragma once

#include <optional>
#include <vector>

#include "twoiso/operator.hpp"
#include "twoiso/weighted_space.hpp"

namespace twoiso {

/// Coefficients a_1..a_k of p(z) = sum_i a_i z^i. The constant term is zero.
struct PolyCoeffs {
  std::vector<Complex> a;

  /// Highest i with a_i != 0, or 0 for the zero polynomial.
  int degree() const;
  Complex coeff(int i) const;
};

/// M_z on the Dirichlet space truncated at degree N; z^N maps to 0.
/// Throws InvalidArgument for N < 2.
Op dirichlet_shift(int N);

/// M_z + p⊗1 on the Dirichlet space truncated at degree N. Growth max(1, deg p).
/// Throws InvalidArgument if deg p > N - 1.
Op perturbed_dirichlet(int N, const PolyCoeffs& p);

/// M_z + (alpha z^n)⊗1 for any n >= 0; n = 0 leaves the p(0) = 0 family.
Op perturbed_dirichlet_monomial(int N, Complex alpha, int n);

/// sum_i i|a_i|^2 + 2 Re(a_1). Zero is necessary for M_z + p⊗1 to be a
/// 2-isometry but sufficient only when p = a_1 z: <Δ₂1, z^m> = -(m+1) a_{m+1}.
double pper_condition_residual(const PolyCoeffs& p);

/// ||1||^2 - 2||M̃1||^2 + ||M̃^2 1||^2 in closed form: -2 Re(a_1) - sum_i i|a_i|^2.
double pper_defect_on_one(const PolyCoeffs& p);

/// ||Δ₂(M_z + p⊗1) 1|| in closed form: sqrt(d^2 + sum_{i>=2} i|a_i|^2) with d the
/// defect on 1. Zero exactly for the 2-isometric M_z + p⊗1. With max_degree set,
/// only the components on z^m, m <= max_degree, are counted.
double pper_kernel_residual(const PolyCoeffs& p,
                            std::optional<int> max_degree = std::nullopt);

/// M_{z1} (axis 1) or M_{z2} (axis 2) on H^2 of the bidisc truncated at total degree N.
Op bidisc_shift(int N, int axis);

/// u = -z1^2 + z2 and v = z1 for the bidisc perturbation below.
Vec bidisc_example_u(const WeightedSpace& space);
Vec bidisc_example_v(const WeightedSpace& space);

/// M_{z1} + (-z1^2 + z2)⊗z1 on the bidisc truncated at total degree N >= 4.
/// Carries the declared growth bound 2.
Op bidisc_example_operator(int N);

}  // namespace twoiso
