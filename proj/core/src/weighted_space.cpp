#include "twoiso/weighted_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "twoiso/errors.hpp"

namespace twoiso {

int BasisLabel::total_degree() const {
  return std::accumulate(multi_index.begin(), multi_index.end(), 0);
}

std::string BasisLabel::to_string() const {
  if (multi_index.size() == 1) {
    return "z^" + std::to_string(multi_index[0]);
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < multi_index.size(); ++i) {
    if (i > 0) out << ' ';
    out << 'z' << (i + 1) << '^' << multi_index[i];
  }
  return out.str();
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Dirichlet:
      return "dirichlet";
    case SpaceKind::Bidisc:
      return "bidisc";
    case SpaceKind::Custom:
      return "custom";
  }
  return "custom";
}

WeightedSpace::WeightedSpace(SpaceKind kind, std::vector<BasisLabel> labels,
                             std::vector<double> weights, bool truncation)
    : kind_(kind), labels_(std::move(labels)), truncation_(truncation) {
  if (labels_.empty()) {
    throw InvalidArgument("weighted space must have dimension >= 1");
  }
  if (labels_.size() != weights.size()) {
    throw InvalidArgument("weighted space: " + std::to_string(labels_.size()) +
                          " labels but " + std::to_string(weights.size()) +
                          " weights");
  }
  const std::size_t arity = labels_.front().multi_index.size();
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto& label = labels_[i];
    if (label.multi_index.size() != arity) {
      throw InvalidArgument("basis labels must share one multi-index length");
    }
    if (std::any_of(label.multi_index.begin(), label.multi_index.end(),
                    [](int e) { return e < 0; })) {
      throw InvalidArgument("basis label exponents must be non-negative");
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw InvalidArgument("weights must be finite and strictly positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[j] == label) {
        throw InvalidArgument("duplicate basis label " + label.to_string());
      }
    }
  }
  weights_ = Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                static_cast<Eigen::Index>(weights.size()));
  degrees_.reserve(labels_.size());
  for (const auto& label : labels_) {
    degrees_.push_back(label.total_degree());
  }
  max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
}

std::optional<int> WeightedSpace::index_of(const BasisLabel& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

Vec WeightedSpace::monomial(std::vector<int> multi_index) const {
  BasisLabel label{std::move(multi_index)};
  const auto index = index_of(label);
  if (!index) {
    throw InvalidArgument("monomial " + label.to_string() + " not in space");
  }
  Vec x = zero();
  x(*index) = 1.0;
  return x;
}

bool operator==(const WeightedSpace& a, const WeightedSpace& b) {
  return a.kind_ == b.kind_ && a.truncation_ == b.truncation_ &&
         a.labels_ == b.labels_ && a.weights_ == b.weights_;
}

WeightedSpace make_dirichlet_space(int max_degree) {
  if (max_degree < 0) throw InvalidArgument("max_degree must be >= 0");
  std::vector<BasisLabel> labels;
  std::vector<double> weights;
  for (int k = 0; k <= max_degree; ++k) {
    labels.push_back({{k}});
    weights.push_back(k + 1.0);
  }
  return {SpaceKind::Dirichlet, std::move(labels), std::move(weights), true};
}

WeightedSpace make_bidisc_space(int max_total_degree) {
  if (max_total_degree < 0) throw InvalidArgument("max_total_degree must be >= 0");
  std::vector<BasisLabel> labels;
  for (int d = 0; d <= max_total_degree; ++d) {
    for (int m = d; m >= 0; --m) {
      labels.push_back({{m, d - m}});
    }
  }
  std::vector<double> weights(labels.size(), 1.0);
  return {SpaceKind::Bidisc, std::move(labels), std::move(weights), true};
}

WeightedSpace make_weighted_space(std::vector<double> weights) {
  std::vector<BasisLabel> labels;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    labels.push_back({{static_cast<int>(i)}});
  }
  return {SpaceKind::Custom, std::move(labels), std::move(weights), false};
}

WeightedSpace make_euclidean_space(int dim) {
  if (dim < 1) throw InvalidArgument("dimension must be >= 1");
  return make_weighted_space(std::vector<double>(static_cast<std::size_t>(dim), 1.0));
}

void check_dimension(const Vec& x, const WeightedSpace& space) {
  if (x.size() != space.dimension()) {
    throw DimensionMismatch("vector of length " + std::to_string(x.size()) +
                            " in space of dimension " +
                            std::to_string(space.dimension()));
  }
}

Complex inner(const Vec& x, const Vec& y, const WeightedSpace& space) {
  check_dimension(x, space);
  check_dimension(y, space);
  // Eigen's dot conjugates its left operand.
  return y.dot(space.weights().cast<Complex>().cwiseProduct(x));
}

double norm_squared(const Vec& x, const WeightedSpace& space) {
  check_dimension(x, space);
  return space.weights().dot(x.cwiseAbs2());
}

double norm(const Vec& x, const WeightedSpace& space) {
  return std::sqrt(norm_squared(x, space));
}

Subspace::Subspace(WeightedSpace space, std::vector<Vec> generators,
                   std::vector<Vec> basis)
    : space_(std::move(space)),
      generators_(std::move(generators)),
      basis_(std::move(basis)) {}

namespace {

// Orthogonalizes x against basis (twice) and appends it if it survives.
bool append_orthonormal(const WeightedSpace& space, std::vector<Vec>& basis,
                        Vec x, double rank_tol) {
  const double scale = std::max(1.0, norm(x, space));
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : basis) {
      x -= inner(x, e, space) * e;
    }
  }
  const double r = norm(x, space);
  if (r <= rank_tol * scale) return false;
  basis.push_back(x / r);
  return true;
}

}  // namespace

Subspace Subspace::span(const WeightedSpace& space, std::vector<Vec> generators,
                        double rank_tol) {
  std::vector<Vec> basis;
  for (const auto& g : generators) {
    check_dimension(g, space);
    append_orthonormal(space, basis, g, rank_tol);
  }
  return {space, std::move(generators), std::move(basis)};
}

Subspace Subspace::whole(const WeightedSpace& space) {
  std::vector<int> all(static_cast<std::size_t>(space.dimension()));
  std::iota(all.begin(), all.end(), 0);
  return coordinate(space, all);
}

Subspace Subspace::zero(const WeightedSpace& space) { return {space, {}, {}}; }

Subspace Subspace::coordinate(const WeightedSpace& space,
                              const std::vector<int>& indices) {
  std::vector<Vec> generators;
  std::vector<Vec> basis;
  for (int i : indices) {
    if (i < 0 || i >= space.dimension()) {
      throw InvalidArgument("basis index out of range");
    }
    Vec e = space.zero();
    e(i) = 1.0;
    generators.push_back(e);
    basis.push_back(e / std::sqrt(space.weight(i)));
  }
  return {space, std::move(generators), std::move(basis)};
}

bool Subspace::contains(const Vec& x, double tol) const {
  const double scale = std::max(1.0, norm(x, space_));
  return norm(x - project(x, *this), space_) <= tol * scale;
}

Vec project(const Vec& x, const Subspace& sub) {
  check_dimension(x, sub.space());
  Vec result = sub.space().zero();
  for (const auto& e : sub.basis()) {
    result += inner(x, e, sub.space()) * e;
  }
  return result;
}

Subspace orthogonal_complement(const Subspace& sub, const Subspace& within) {
  if (!(sub.space() == within.space())) {
    throw DimensionMismatch("subspaces live in different spaces");
  }
  const auto& space = within.space();
  // x in within is orthogonal to sub iff it is orthogonal to P_within(sub).
  std::vector<Vec> excluded;
  for (const auto& e : sub.basis()) {
    append_orthonormal(space, excluded, project(e, within), kRankTolerance);
  }
  const std::size_t skip = excluded.size();
  std::vector<Vec> working = excluded;
  for (const auto& w : within.basis()) {
    append_orthonormal(space, working, w, kRankTolerance);
  }
  std::vector<Vec> result(working.begin() + static_cast<std::ptrdiff_t>(skip),
                          working.end());
  std::vector<Vec> generators = result;
  return Subspace::span(space, std::move(generators));
}

Subspace orthogonal_complement(const Subspace& sub) {
  return orthogonal_complement(sub, Subspace::whole(sub.space()));
}

}  // namespace twoiso
