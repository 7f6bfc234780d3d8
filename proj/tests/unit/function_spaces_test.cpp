#include <gtest/gtest.h>

#include <numbers>

#include "poly_oracle.hpp"
#include "test_util.hpp"

namespace twoiso {
namespace {

PolyCoeffs random_poly(Rng& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  PolyCoeffs p;
  const int k = deg(rng);
  for (int i = 0; i < k; ++i) {
    p.a.push_back(std::sqrt(radius(rng)) * random_phase(rng));
  }
  return p;
}

TEST(DirichletShift, Examples) {
  const Op mz = dirichlet_shift(3);
  const auto& d = mz.space();
  EXPECT_EQ(apply(mz, d.monomial({1})), d.monomial({2}));
  EXPECT_EQ(apply(mz, d.monomial({3})), d.zero());
  EXPECT_EQ(mz.degree_growth(), 1);
  // weights 2, 3, 4 on z, z^2, z^3
  EXPECT_DOUBLE_EQ(defect_quadratic(mz, d.monomial({1})).value, 0.0);
  EXPECT_FALSE(defect_quadratic(mz, d.monomial({3})).safe);
  EXPECT_THROW(dirichlet_shift(1), InvalidArgument);
  const Op m10 = dirichlet_shift(10);
  EXPECT_LE(defect_form_by_polarization(m10, safe_subspace(m10)).max_residual, 1e-12);
}

TEST(PerturbedDirichlet, Examples) {
  const Op t = perturbed_dirichlet(6, {{-2.0}});
  const auto& d = t.space();
  EXPECT_EQ(apply(t, d.monomial({0})), Vec(-d.monomial({1})));
  EXPECT_EQ(apply(t, d.monomial({1})), d.monomial({2}));
  EXPECT_EQ(perturbed_dirichlet(6, {}).matrix(), dirichlet_shift(6).matrix());
  EXPECT_EQ(perturbed_dirichlet(6, {{0.0, 0.0}}).matrix(), dirichlet_shift(6).matrix());
  EXPECT_EQ(perturbed_dirichlet(8, {{1.0, 0.0, 0.0, 2.0}}).degree_growth(), 4);
  EXPECT_EQ(perturbed_dirichlet(8, {{1.0}}).degree_growth(), 1);
  EXPECT_THROW(perturbed_dirichlet(4, {{0.0, 0.0, 0.0, 0.0, 1.0}}), InvalidArgument);
}

TEST(PperCondition, Examples) {
  EXPECT_DOUBLE_EQ(pper_condition_residual({{-2.0}}), 0.0);
  const Complex alpha = -1.0 + std::polar(1.0, std::numbers::pi / 3);
  EXPECT_NEAR(pper_condition_residual({{alpha}}), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(pper_condition_residual({{0.0, 1.0}}), 2.0);
}

TEST(BidiscShift, Examples) {
  const Op m1 = bidisc_shift(4, 1);
  const auto& b = m1.space();
  EXPECT_EQ(apply(m1, b.monomial({0, 1})), b.monomial({1, 1}));
  EXPECT_EQ(apply(bidisc_shift(4, 2), b.monomial({1, 0})), b.monomial({1, 1}));
  EXPECT_EQ(apply(adjoint(m1), b.monomial({0, 0})), b.zero());
  Rng rng(4);
  const auto safe = safe_subspace(m1);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec f = project(random_vec(b.dimension(), rng), safe);
    EXPECT_NEAR(norm(apply(m1, f), b), norm(f, b), 1e-12);
  }
  EXPECT_LE(defect_form_by_polarization(m1, safe).max_residual, 1e-12);
  EXPECT_THROW(bidisc_shift(1, 1), InvalidArgument);
  EXPECT_THROW(bidisc_shift(4, 3), InvalidArgument);
}

TEST(BidiscExample, Examples) {
  const Op mt = bidisc_example_operator(6);
  const auto& b = mt.space();
  EXPECT_EQ(mt.degree_growth(), 2);
  EXPECT_LT((apply(mt, b.monomial({1, 0})) - b.monomial({0, 1})).norm(), 1e-15);
  EXPECT_LT((apply(mt, apply(mt, b.monomial({1, 0}))) - b.monomial({1, 1})).norm(), 1e-15);
  EXPECT_LT((apply(mt, b.monomial({0, 1})) - b.monomial({1, 1})).norm(), 1e-15);
  EXPECT_THROW(bidisc_example_operator(3), InvalidArgument);
}

TEST(FunctionSpacesProperty, DefectOnOneMatchesClosedForm) {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(rng, 5);
    const Op t = perturbed_dirichlet(12, p);
    const double measured = defect_quadratic(t, t.space().monomial({0})).value;
    testing::Poly coeffs{0.0};
    coeffs.insert(coeffs.end(), p.a.begin(), p.a.end());
    EXPECT_NEAR(measured, testing::defect_on({1.0}, coeffs), 1e-10);
    EXPECT_NEAR(measured, pper_defect_on_one(p), 1e-10);
  }
}

// Residual-zero polynomials with a_1 = -1 + r e^{i theta}, r^2 = 1 - sum_{i>=2} i|a_i|^2.
PolyCoeffs residual_zero_poly(Rng& rng, int degree) {
  std::uniform_real_distribution<double> small(0.05, 0.2);
  PolyCoeffs p;
  p.a.push_back(0.0);
  double tail = 0.0;
  for (int k = 2; k <= degree; ++k) {
    const Complex a = small(rng) * random_phase(rng);
    tail += k * std::norm(a);
    p.a.push_back(a);
  }
  p.a[0] = -1.0 + std::sqrt(1.0 - tail) * random_phase(rng);
  return p;
}

TEST(FunctionSpacesProperty, PperEquivalenceAndBranch) {
  Rng rng(53);
  std::vector<PolyCoeffs> polys;
  for (int i = 0; i < 100; ++i) polys.push_back(random_poly(rng, 5));
  for (int i = 0; i < 20; ++i) polys.push_back(residual_zero_poly(rng, 1));
  int admissible = 0;
  for (const auto& p : polys) {
    const Op mz = dirichlet_shift(12);
    Vec pv = mz.space().zero();
    for (int i = 1; i <= p.degree(); ++i) pv(i) = p.coeff(i);
    const Vec one = mz.space().monomial({0});
    const auto r = theorem_verdict(PerturbationProblem::create(mz, pv, one));
    const bool expected = std::abs(pper_condition_residual(p)) <= 1e-8;
    EXPECT_EQ(r.branch, Branch::I);
    EXPECT_EQ(r.verdict_oracle, expected);
    EXPECT_EQ(r.verdict_theorem, expected);
    admissible += expected ? 1 : 0;
  }
  EXPECT_EQ(admissible, 20);
}

// The closed-form condition does not see the cross terms <Δ₂1, z^m>, so a
// residual-zero p with a_2, a_3, ... nonzero is not a 2-isometry.
TEST(FunctionSpacesProperty, ResidualZeroWithHigherTermsIsNotTwoIsometry) {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = residual_zero_poly(rng, 2 + trial % 4);
    ASSERT_NEAR(pper_condition_residual(p), 0.0, 1e-12);
    // N = 20 keeps every z^m with m < deg p inside the safe subspace.
    const Op t = perturbed_dirichlet(20, p);
    testing::Poly coeffs{0.0};
    coeffs.insert(coeffs.end(), p.a.begin(), p.a.end());
    for (int m = 1; m + 1 <= p.degree(); ++m) {
      testing::Poly zm(static_cast<std::size_t>(m + 1), 0.0);
      zm.back() = 1.0;
      const Complex oracle = testing::defect_pairing_on({1.0}, zm, coeffs);
      const Complex measured =
          defect_pairing(t, t.space().monomial({0}), t.space().monomial({m}));
      EXPECT_LT(std::abs(oracle + (m + 1.0) * p.coeff(m + 1)), 1e-10);
      EXPECT_LT(std::abs(measured - oracle), 1e-10);
    }
    const Vec one = t.space().monomial({0});
    Vec pv = t.space().zero();
    for (int i = 1; i <= p.degree(); ++i) pv(i) = p.coeff(i);
    const auto r = theorem_verdict(PerturbationProblem::create(dirichlet_shift(20), pv, one));
    EXPECT_FALSE(r.verdict_oracle);
    EXPECT_FALSE(r.verdict_theorem);
    EXPECT_NEAR(r.kernel_residual, pper_kernel_residual(p), 1e-10);
  }
}

TEST(FunctionSpacesProperty, KernelResidualClosedForm) {
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_poly(rng, 5);
    const Op t = perturbed_dirichlet(12, p);
    EXPECT_NEAR(kernel_condition_residual(t, t.space().monomial({0})),
                pper_kernel_residual(p, safe_degree(t)), 1e-10);
  }
  EXPECT_DOUBLE_EQ(pper_kernel_residual({{-2.0}}), 0.0);
  EXPECT_NEAR(pper_kernel_residual({{-1.0 + std::sqrt(0.7), 0.3, Complex(0.0, 0.2)}}),
              std::sqrt(2 * 0.09 + 3 * 0.04), 1e-12);
}

TEST(FunctionSpacesProperty, BidiscExampleReportsBranchII) {
  const Op m1 = bidisc_shift(6, 1);
  const auto& b = m1.space();
  const auto r = theorem_verdict(
      PerturbationProblem::create(m1, bidisc_example_u(b), bidisc_example_v(b)));
  EXPECT_EQ(r.branch, Branch::II);
  EXPECT_TRUE(r.verdict_theorem);
  EXPECT_TRUE(r.verdict_oracle);

  const Op mt = bidisc_example_operator(6);
  const auto low = safe_subspace(mt);
  ASSERT_EQ(low.dim(), 6);  // total degree <= 2
  EXPECT_LE(defect_form_by_polarization(mt, low).max_residual, 1e-10);
}

}  // namespace
}  // namespace twoiso
