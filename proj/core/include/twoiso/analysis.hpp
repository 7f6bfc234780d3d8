#pragma once

#include <optional>
#include <string>
#include <utility>

#include "twoiso/operator.hpp"
#include "twoiso/weighted_space.hpp"

namespace twoiso {

struct Tolerances {
  /// Threshold for parallelism of T*v and v (branch detection).
  double rank = 1e-9;
  /// Threshold on defect residuals for 2-isometry verdicts.
  double defect = 1e-8;
};

struct NormalizedPair {
  Vec u;
  Vec v;
  /// Weighted norm of the v that was passed in.
  double input_v_norm = 1.0;
};

/// Rescales so that ||v|| = 1 while keeping u⊗v unchanged: (||v|| u, v / ||v||).
/// Throws NotRankOne for a zero input.
NormalizedPair normalize_pair(const Vec& u, const Vec& v, const WeightedSpace& space);

/// Rank-one perturbation T + u⊗v of a 2-isometry T, with ||v|| = 1.
class PerturbationProblem {
 public:
  /// Normalizes (u, v) and checks that T is a 2-isometry on its safe
  /// subspace. Throws NotRankOne, DimensionMismatch, or BaseNotTwoIsometry
  /// (unless allow_non_2iso_base is set).
  static PerturbationProblem create(Op base, const Vec& u, const Vec& v,
                                    Tolerances tol = {},
                                    bool allow_non_2iso_base = false);

  const Op& base() const { return base_; }
  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }
  const Tolerances& tolerances() const { return tol_; }
  const WeightedSpace& space() const { return base_.space(); }

  /// T + u⊗v.
  const Op& perturbed() const { return perturbed_; }

  bool v_was_normalized() const { return v_was_normalized_; }
  double input_v_norm() const { return input_v_norm_; }
  /// Max polarized residual of Δ₂(T) on the safe subspace of T.
  double base_defect() const { return base_defect_; }
  bool base_check_overridden() const { return base_check_overridden_; }

 private:
  PerturbationProblem(Op base, Vec u, Vec v, Tolerances tol, Op perturbed);

  Op base_;
  Vec u_;
  Vec v_;
  Tolerances tol_;
  Op perturbed_;
  bool v_was_normalized_ = false;
  double input_v_norm_ = 1.0;
  double base_defect_ = 0.0;
  bool base_check_overridden_ = false;
};

enum class Branch { I, II };

std::string to_string(Branch branch);
/// "(i)" or "(ii)".
std::string branch_label(Branch branch);

/// S = {x in ker K : Tx in ker K} = span{v, T*v}⊥.
Subspace compute_S(const Op& t, const Vec& v);

/// T*v - <T*v, v> v when its norm exceeds tol_rank; this vector spans
/// S⊥ ∩ ker K. nullopt when T*v is parallel to v.
std::optional<Vec> canonical_x(const Op& t, const Vec& v, double tol_rank);

/// I iff ker K = v⊥ is invariant under T.
Branch branch(const PerturbationProblem& problem);

/// Re(<T* P T* u, x> / <T*v, x>) with P the projection onto v⊥. Uses the
/// canonical x unless one is supplied. Throws DegenerateDenominator when
/// |<T*v, x>| <= tol_rank, InvalidArgument in branch I without an explicit x.
double gamma(const PerturbationProblem& problem,
             const std::optional<Vec>& x = std::nullopt);

/// |‖u‖² + 2(γ + Re<u, Tv>)|.
double condition_iib_residual(const PerturbationProblem& problem, double gamma);

struct InvarianceResidual {
  /// max ||P_{S⊥} Δ₂ s|| over the orthonormal basis of S ∩ safe.
  double on_S = 0.0;
  /// ||Δ₂ x̂ - <Δ₂ x̂, x̂> x̂|| restricted to the safe subspace; 0 if no x.
  double on_complement = 0.0;
  /// dim(S ∩ safe).
  int evaluated_dim = 0;

  double value() const { return std::max(on_S, on_complement); }
};

/// Invariance of S under Δ₂(T̃), measured through the polarized defect form
/// on S ∩ safe, together with the equivalent check on span{x} = S⊥ ∩ ker K.
InvarianceResidual condition_iia_residual(const Op& ttilde, const Subspace& S,
                                          const Subspace& safe,
                                          const std::optional<Vec>& x);

/// ||Δ₂(T̃)v|| against an orthonormal basis of the safe subspace.
/// Throws NotTruncationSafe if v is not safe for T̃.
double kernel_condition_residual(const Op& ttilde, const Vec& v);

struct TheoremReport {
  Branch branch = Branch::I;
  double kernel_residual = 0.0;
  std::optional<double> gamma;
  std::optional<double> cond_iia_residual;
  std::optional<double> cond_iib_residual;
  double oracle_defect = 0.0;
  bool verdict_theorem = false;
  bool verdict_oracle = false;

  Tolerances tolerances;
  std::optional<Vec> x;
  int dim = 0;
  int safe_dim = 0;
  std::optional<int> safe_degree;
  int S_dim = 0;
  std::optional<int> S_evaluated_dim;
  bool v_normalized = false;
  double input_v_norm = 1.0;
  double base_defect = 0.0;
  bool base_check_overridden = false;

  /// Verdict of the characterization, recomputed from the stored residuals.
  bool recompute_verdict_theorem() const;
  bool verdicts_agree() const { return verdict_theorem == verdict_oracle; }
};

/// Runs the full characterization and the direct oracle (max polarized
/// residual of Δ₂(T̃) on its safe subspace).
TheoremReport theorem_verdict(const PerturbationProblem& problem);

}  // namespace twoiso
