#include "twoiso/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "twoiso/errors.hpp"

namespace twoiso {

NormalizedPair normalize_pair(const Vec& u, const Vec& v, const WeightedSpace& space) {
  check_dimension(u, space);
  check_dimension(v, space);
  if (u.isZero(0.0) || v.isZero(0.0)) throw NotRankOne();
  const double nv = norm(v, space);
  NormalizedPair pair;
  pair.input_v_norm = nv;
  pair.u = nv == 1.0 ? u : Vec(nv * u);
  pair.v = nv == 1.0 ? v : Vec(v / nv);
  return pair;
}

PerturbationProblem::PerturbationProblem(Op base, Vec u, Vec v, Tolerances tol,
                                         Op perturbed)
    : base_(std::move(base)),
      u_(std::move(u)),
      v_(std::move(v)),
      tol_(tol),
      perturbed_(std::move(perturbed)) {}

PerturbationProblem PerturbationProblem::create(Op base, const Vec& u, const Vec& v,
                                                Tolerances tol,
                                                bool allow_non_2iso_base) {
  if (!(tol.rank > 0.0) || !(tol.defect > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  const auto& space = base.space();
  auto pair = normalize_pair(u, v, space);
  Op perturbed = base + rank_one(pair.u, pair.v, space);
  const double base_defect =
      defect_form_by_polarization(base, safe_subspace(base)).max_residual;
  if (base_defect > tol.defect && !allow_non_2iso_base) {
    throw BaseNotTwoIsometry("base operator is not a 2-isometry: defect " +
                             std::to_string(base_defect) + " > " +
                             std::to_string(tol.defect));
  }
  PerturbationProblem problem(std::move(base), std::move(pair.u), std::move(pair.v),
                              tol, std::move(perturbed));
  problem.input_v_norm_ = pair.input_v_norm;
  problem.v_was_normalized_ = std::abs(pair.input_v_norm - 1.0) > 1e-12;
  problem.base_defect_ = base_defect;
  problem.base_check_overridden_ = base_defect > tol.defect;
  return problem;
}

std::string to_string(Branch branch) { return branch == Branch::I ? "I" : "II"; }

std::string branch_label(Branch branch) {
  return branch == Branch::I ? "(i)" : "(ii)";
}

Subspace compute_S(const Op& t, const Vec& v) {
  const auto& space = t.space();
  const Vec tsv = apply(adjoint(t), v);
  return orthogonal_complement(Subspace::span(space, std::vector<Vec>{v, tsv}));
}

std::optional<Vec> canonical_x(const Op& t, const Vec& v, double tol_rank) {
  const auto& space = t.space();
  const Vec tsv = apply(adjoint(t), v);
  Vec x = tsv - inner(tsv, v, space) * v;
  if (norm(x, space) <= tol_rank) return std::nullopt;
  return x;
}

Branch branch(const PerturbationProblem& problem) {
  return canonical_x(problem.base(), problem.v(), problem.tolerances().rank)
             ? Branch::II
             : Branch::I;
}

double gamma(const PerturbationProblem& problem, const std::optional<Vec>& x) {
  const auto& space = problem.space();
  const auto& tol = problem.tolerances();
  std::optional<Vec> chosen = x;
  if (!chosen) chosen = canonical_x(problem.base(), problem.v(), tol.rank);
  if (!chosen) {
    throw InvalidArgument("gamma is undefined in branch I (S⊥ ∩ ker K = {0})");
  }
  check_dimension(*chosen, space);
  const Op ts = adjoint(problem.base());
  const Vec& v = problem.v();
  Vec y = apply(ts, problem.u());
  y -= inner(y, v, space) * v;  // P_{ker K}
  const Complex numerator = inner(apply(ts, y), *chosen, space);
  const Complex denominator = inner(apply(ts, v), *chosen, space);
  if (std::abs(denominator) <= tol.rank) throw DegenerateDenominator();
  return (numerator / denominator).real();
}

double condition_iib_residual(const PerturbationProblem& problem, double gamma) {
  const auto& space = problem.space();
  const Vec tv = apply(problem.base(), problem.v());
  const double u2 = norm_squared(problem.u(), space);
  return std::abs(u2 + 2.0 * (gamma + inner(problem.u(), tv, space).real()));
}

InvarianceResidual condition_iia_residual(const Op& ttilde, const Subspace& S,
                                          const Subspace& safe,
                                          const std::optional<Vec>& x) {
  const auto& space = ttilde.space();
  InvarianceResidual result;

  const Subspace s_perp = orthogonal_complement(S);
  const Subspace s_safe = orthogonal_complement(s_perp, safe);
  result.evaluated_dim = s_safe.dim();
  for (const auto& s : s_safe.basis()) {
    double sum = 0.0;
    for (const auto& w : s_perp.basis()) {
      sum += std::norm(defect_pairing(ttilde, s, w));
    }
    result.on_S = std::max(result.on_S, std::sqrt(sum));
  }

  if (x) {
    const Vec xhat = *x / norm(*x, space);
    const Vec image = defect_image_on_safe(ttilde, xhat);
    const Vec off = image - inner(image, xhat, space) * xhat;
    result.on_complement = norm(off, space);
  }
  return result;
}

double kernel_condition_residual(const Op& ttilde, const Vec& v) {
  return norm(defect_image_on_safe(ttilde, v), ttilde.space());
}

bool TheoremReport::recompute_verdict_theorem() const {
  const double tol = tolerances.defect;
  if (kernel_residual > tol) return false;
  if (branch == Branch::I) return true;
  return cond_iia_residual.has_value() && cond_iib_residual.has_value() &&
         *cond_iia_residual <= tol && *cond_iib_residual <= tol;
}

TheoremReport theorem_verdict(const PerturbationProblem& problem) {
  const auto& tol = problem.tolerances();
  const Op& ttilde = problem.perturbed();
  const Subspace safe = safe_subspace(ttilde);

  TheoremReport report;
  report.tolerances = tol;
  report.dim = problem.space().dimension();
  report.safe_dim = safe.dim();
  report.safe_degree = safe_degree(ttilde);
  report.v_normalized = problem.v_was_normalized();
  report.input_v_norm = problem.input_v_norm();
  report.base_defect = problem.base_defect();
  report.base_check_overridden = problem.base_check_overridden();

  report.kernel_residual = kernel_condition_residual(ttilde, problem.v());

  const Subspace S = compute_S(problem.base(), problem.v());
  report.S_dim = S.dim();
  report.x = canonical_x(problem.base(), problem.v(), tol.rank);
  report.branch = report.x ? Branch::II : Branch::I;

  if (report.branch == Branch::II) {
    const double g = gamma(problem, report.x);
    report.gamma = g;
    report.cond_iib_residual = condition_iib_residual(problem, g);
    const auto iia = condition_iia_residual(ttilde, S, safe, report.x);
    report.cond_iia_residual = iia.value();
    report.S_evaluated_dim = iia.evaluated_dim;
  }

  report.oracle_defect = defect_form_by_polarization(ttilde, safe).max_residual;
  report.verdict_theorem = report.recompute_verdict_theorem();
  report.verdict_oracle = report.oracle_defect <= tol.defect;
  return report;
}

}  // namespace twoiso
