#include "twoiso/json_io.hpp"

#include <string>

#include "twoiso/errors.hpp"

namespace twoiso::json_io {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<BasisLabel> labels_from_json(const json& doc) {
  std::vector<BasisLabel> labels;
  for (const auto& entry : doc) {
    labels.push_back({entry.get<std::vector<int>>()});
  }
  return labels;
}

void check_matches(const WeightedSpace& built, const json& doc) {
  if (doc.contains("weights")) {
    const auto weights = doc.at("weights").get<std::vector<double>>();
    if (static_cast<int>(weights.size()) != built.dimension()) {
      throw InvalidArgument("space weights do not match kind/max_degree");
    }
    for (int i = 0; i < built.dimension(); ++i) {
      if (weights[static_cast<std::size_t>(i)] != built.weight(i)) {
        throw InvalidArgument("space weights do not match kind/max_degree");
      }
    }
  }
  if (doc.contains("labels") && labels_from_json(doc.at("labels")) != built.labels()) {
    throw InvalidArgument("space labels do not match kind/max_degree");
  }
}

}  // namespace

json to_json(const WeightedSpace& space) {
  json labels = json::array();
  for (const auto& label : space.labels()) labels.push_back(label.multi_index);
  std::vector<double> weights(space.weights().data(),
                              space.weights().data() + space.dimension());
  json doc = {{"kind", to_string(space.kind())},
              {"max_degree", space.max_degree()},
              {"weights", weights},
              {"labels", labels}};
  if (space.kind() == SpaceKind::Custom) doc["truncated"] = space.is_truncation();
  return doc;
}

WeightedSpace space_from_json(const json& doc) {
  return guarded("space", [&]() -> WeightedSpace {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "dirichlet" || kind == "bidisc") {
      const int n = doc.at("max_degree").get<int>();
      auto space = kind == "dirichlet" ? make_dirichlet_space(n) : make_bidisc_space(n);
      check_matches(space, doc);
      return space;
    }
    if (kind == "custom") {
      auto weights = doc.at("weights").get<std::vector<double>>();
      std::vector<BasisLabel> labels;
      if (doc.contains("labels")) {
        labels = labels_from_json(doc.at("labels"));
      } else {
        for (std::size_t i = 0; i < weights.size(); ++i) {
          labels.push_back({{static_cast<int>(i)}});
        }
      }
      const bool truncated = doc.value("truncated", false);
      return {SpaceKind::Custom, std::move(labels), std::move(weights), truncated};
    }
    throw InvalidArgument("unknown space kind '" + kind + "'");
  });
}

Complex complex_from_json(const json& doc) {
  return guarded("complex number", [&] {
    if (doc.is_number()) return Complex(doc.get<double>(), 0.0);
    if (!doc.is_array() || doc.size() != 2) {
      throw InvalidArgument("complex number must be [re, im]");
    }
    return Complex(doc.at(0).get<double>(), doc.at(1).get<double>());
  });
}

json to_json(const Vec& x) {
  json doc = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    doc.push_back({x(i).real(), x(i).imag()});
  }
  return doc;
}

Vec vec_from_json(const json& doc, const WeightedSpace& space) {
  return guarded("vector", [&] {
    if (!doc.is_array()) throw InvalidArgument("vector must be a list of [re, im]");
    if (static_cast<int>(doc.size()) != space.dimension()) {
      throw DimensionMismatch("vector of length " + std::to_string(doc.size()) +
                              " in space of dimension " +
                              std::to_string(space.dimension()));
    }
    Vec x(space.dimension());
    for (int i = 0; i < space.dimension(); ++i) {
      x(i) = complex_from_json(doc.at(static_cast<std::size_t>(i)));
    }
    return x;
  });
}

json to_json(const Op& op) {
  json matrix = json::array();
  const auto& m = op.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      matrix.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  json growth = op.degree_growth() ? json(*op.degree_growth()) : json("unbounded");
  return {{"space", to_json(op.space())}, {"matrix", matrix}, {"degree_growth", growth}};
}

Op op_from_json(const json& doc) {
  return guarded("operator", [&] {
    auto space = space_from_json(doc.at("space"));
    const auto& entries = doc.at("matrix");
    const int n = space.dimension();
    if (!entries.is_array() || static_cast<int>(entries.size()) != n * n) {
      throw DimensionMismatch("operator matrix needs " + std::to_string(n * n) +
                              " entries");
    }
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m(i, j) = complex_from_json(entries.at(static_cast<std::size_t>(i * n + j)));
      }
    }
    DegreeGrowth growth;
    if (doc.contains("degree_growth")) {
      const auto& g = doc.at("degree_growth");
      if (g.is_string()) {
        if (g.get<std::string>() != "unbounded") {
          throw InvalidArgument("degree_growth must be an integer or \"unbounded\"");
        }
      } else {
        growth = g.get<int>();
      }
    } else {
      growth = scan_degree_growth(m, space);
    }
    return Op(std::move(space), std::move(m), growth);
  });
}

json to_json(const PolyCoeffs& p) {
  json doc = json::array();
  for (const auto& c : p.a) doc.push_back({c.real(), c.imag()});
  return doc;
}

PolyCoeffs poly_from_json(const json& doc) {
  return guarded("polynomial", [&] {
    if (!doc.is_array()) throw InvalidArgument("polynomial must be a list of [re, im]");
    PolyCoeffs p;
    for (const auto& entry : doc) p.a.push_back(complex_from_json(entry));
    return p;
  });
}

json to_json(const TheoremReport& r, const WeightedSpace& space) {
  auto optional_number = [](const std::optional<double>& x) {
    return x ? json(*x) : json(nullptr);
  };
  json doc = {
      {"branch", to_string(r.branch)},
      {"paper_branch", branch_label(r.branch)},
      {"kernel_residual", r.kernel_residual},
      {"gamma", optional_number(r.gamma)},
      {"cond_iia_residual", optional_number(r.cond_iia_residual)},
      {"cond_iib_residual", optional_number(r.cond_iib_residual)},
      {"oracle_defect", r.oracle_defect},
      {"verdict_theorem", r.verdict_theorem},
      {"verdict_oracle", r.verdict_oracle},
      {"verdicts_agree", r.verdicts_agree()},
      {"tolerances", {{"rank", r.tolerances.rank}, {"defect", r.tolerances.defect}}},
      {"dim", r.dim},
      {"safe_dim", r.safe_dim},
      {"safe_degree", r.safe_degree ? json(*r.safe_degree) : json(nullptr)},
      {"S_dim", r.S_dim},
      {"S_evaluated_dim", r.S_evaluated_dim ? json(*r.S_evaluated_dim) : json(nullptr)},
      {"v_normalized", r.v_normalized},
      {"input_v_norm", r.input_v_norm},
      {"base_defect", r.base_defect},
      {"base_check_overridden", r.base_check_overridden},
      {"x", r.x ? to_json(*r.x) : json(nullptr)},
      {"space", to_json(space)},
  };
  return doc;
}

}  // namespace twoiso::json_io
