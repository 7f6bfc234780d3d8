#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "twoiso/errors.hpp"
#include "twoiso/function_spaces.hpp"
#include "twoiso/json_io.hpp"
#include "twoiso/random.hpp"

namespace twoiso::cli {

using nlohmann::json;

namespace {

constexpr int kDefaultDirichletN = 12;
constexpr int kDefaultBidiscN = 6;
constexpr int kMaxTruncation = 60;
constexpr int kMaxDimension = 64;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExampleResult {
  std::string name;
  std::vector<Check> checks;
  json data = json::object();
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << std::scientific << x;
  return out.str();
}

std::string fmt(Complex z) {
  std::ostringstream out;
  out << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ")
      << std::abs(z.imag()) << "i";
  return out.str();
}

Check at_most(std::string name, double value, double bound) {
  return {std::move(name), value <= bound, fmt(value) + " <= " + fmt(bound)};
}

Check near(std::string name, double value, double expected, double tol) {
  return {std::move(name), std::abs(value - expected) <= tol,
          fmt(value) + " vs " + fmt(expected) + " (tol " + fmt(tol) + ")"};
}

Check is_true(std::string name, bool value) {
  return {std::move(name), value, value ? "true" : "false"};
}

void print_report_text(const TheoremReport& r, std::ostream& out) {
  auto opt = [](const std::optional<double>& x) { return x ? fmt(*x) : std::string("absent"); };
  out << "  branch            " << to_string(r.branch) << "  " << branch_label(r.branch) << '\n'
      << "  kernel_residual   " << fmt(r.kernel_residual) << '\n'
      << "  gamma             " << opt(r.gamma) << '\n'
      << "  cond_iia_residual " << opt(r.cond_iia_residual) << '\n'
      << "  cond_iib_residual " << opt(r.cond_iib_residual) << '\n'
      << "  oracle_defect     " << fmt(r.oracle_defect) << '\n'
      << "  verdict_theorem   " << (r.verdict_theorem ? "true" : "false") << '\n'
      << "  verdict_oracle    " << (r.verdict_oracle ? "true" : "false") << '\n'
      << "  tolerances        rank " << fmt(r.tolerances.rank) << ", defect "
      << fmt(r.tolerances.defect) << '\n'
      << "  dims              space " << r.dim << ", safe " << r.safe_dim << ", S "
      << r.S_dim;
  if (r.S_evaluated_dim) out << ", S evaluated " << *r.S_evaluated_dim;
  out << '\n';
  if (r.v_normalized) {
    out << "  note              v rescaled from norm " << fmt(r.input_v_norm) << '\n';
  }
  if (r.base_check_overridden) {
    out << "  note              base defect " << fmt(r.base_defect)
        << " exceeds tolerance (override active)\n";
  }
}

void emit(const std::vector<ExampleResult>& results, const RunConfig& config,
          std::ostream& out) {
  bool all = true;
  for (const auto& r : results) all = all && r.passed();
  if (config.format == OutputFormat::Json) {
    json doc = json::array();
    for (const auto& r : results) {
      json checks = json::array();
      for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      }
      doc.push_back({{"example", r.name},
                     {"pass", r.passed()},
                     {"checks", checks},
                     {"notes", r.notes},
                     {"data", r.data}});
    }
    out << json{{"results", doc}, {"pass", all}}.dump(2) << '\n';
    return;
  }
  for (const auto& r : results) {
    out << "== " << r.name << '\n';
    if (r.data.contains("text")) out << r.data["text"].get<std::string>();
    for (const auto& c : r.checks) {
      out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
    }
    for (const auto& n : r.notes) out << "note: " << n << '\n';
  }
  out << (all ? "all checks passed" : "some checks FAILED") << '\n';
}

std::string report_text(const TheoremReport& r) {
  std::ostringstream text;
  print_report_text(r, text);
  return text.str();
}

ExampleResult reproduce_c2(const RunConfig& config) {
  const auto space = make_euclidean_space(2);
  Matrix v_mat(2, 2);
  v_mat << 0, 1, 1, 0;
  const Op V(space, v_mat, 0);
  const Vec u = -2.0 * space.monomial({0});
  const Vec v = space.monomial({1});
  const auto problem = PerturbationProblem::create(V, u, v, config.tol);
  const auto report = theorem_verdict(problem);

  const double tight = 1e-10;
  ExampleResult result{"c2-example", {}, {}, {}};
  result.checks.push_back(at_most("full delta2 matrix vanishes",
                                  delta2(problem.perturbed()).matrix().cwiseAbs().maxCoeff(),
                                  1e-12));
  result.checks.push_back(is_true("branch II", report.branch == Branch::II));
  result.checks.push_back(near("gamma = 0", report.gamma.value_or(NAN), 0.0, tight));
  result.checks.push_back(at_most("kernel residual", report.kernel_residual, tight));
  result.checks.push_back(
      at_most("cond (ii)(a) residual", report.cond_iia_residual.value_or(INFINITY), tight));
  result.checks.push_back(
      at_most("cond (ii)(b) residual", report.cond_iib_residual.value_or(INFINITY), tight));
  result.checks.push_back(at_most("oracle defect", report.oracle_defect, tight));
  result.checks.push_back(is_true("verdict_theorem", report.verdict_theorem));
  result.checks.push_back(is_true("verdict_oracle", report.verdict_oracle));
  result.data = {{"report", json_io::to_json(report, space)}, {"text", report_text(report)}};
  return result;
}

struct PperCase {
  std::string label;
  PolyCoeffs p;
};

std::vector<PperCase> pper_cases() {
  const Complex on_circle = Complex(-1.0, 0.0) + std::polar(1.0, std::numbers::pi / 3);
  return {
      {"p = -2z", {{-2.0}}},
      {"p = (-1 + e^{i pi/3}) z", {{on_circle}}},
      {"p = (-1 + sqrt(0.7)) z + 0.3 z^2 + 0.2i z^3 (residual 0, <D2 1, z> = -0.6)",
       {{-1.0 + std::sqrt(0.7), 0.3, Complex(0.0, 0.2)}}},
      {"p = iz", {{Complex(0.0, 1.0)}}},
      {"p = z^2", {{0.0, 1.0}}},
      {"p = -z + 0.5 z^2", {{-1.0, 0.5}}},
  };
}

ExampleResult reproduce_dirichlet_pper(const RunConfig& config) {
  const int N = config.dim.value_or(kDefaultDirichletN);
  ExampleResult result{"dirichlet-pper", {}, {}, {}};
  json cases = json::array();
  std::ostringstream text;
  for (const auto& c : pper_cases()) {
    const Op shift = dirichlet_shift(N);
    const auto& space = shift.space();
    Vec pv = space.zero();
    for (int i = 1; i <= c.p.degree(); ++i) pv(i) = c.p.coeff(i);
    const double residual = pper_condition_residual(c.p);
    const double kernel = pper_kernel_residual(c.p);
    const bool admissible = kernel <= config.tol.defect;
    const Vec one = space.monomial({0});

    const auto problem = PerturbationProblem::create(shift, pv, one, config.tol);
    const auto report = theorem_verdict(problem);
    const double defect_on_one = defect_quadratic(problem.perturbed(), one).value;

    result.checks.push_back(is_true(c.label + ": branch I", report.branch == Branch::I));
    result.checks.push_back(
        {c.label + ": verdicts match closed-form kernel condition",
         report.verdict_theorem == admissible && report.verdict_oracle == admissible,
         std::string("residual ") + fmt(residual) + ", kernel " + fmt(kernel) + ", theorem " +
             (report.verdict_theorem ? "true" : "false") + ", oracle " +
             (report.verdict_oracle ? "true" : "false")});
    result.checks.push_back(
        is_true(c.label + ": closed-form condition is necessary",
                !report.verdict_oracle || std::abs(residual) <= config.tol.defect));
    result.checks.push_back(
        near(c.label + ": defect on 1", defect_on_one, pper_defect_on_one(c.p), 1e-10));
    result.checks.push_back(
        near(c.label + ": kernel residual on safe subspace", report.kernel_residual,
             pper_kernel_residual(c.p, report.safe_degree), 1e-10));
    text << "  " << c.label << ": residual " << fmt(residual) << ", kernel " << fmt(kernel)
         << ", defect on 1 "
         << fmt(defect_on_one) << ", oracle " << fmt(report.oracle_defect) << '\n';
    cases.push_back({{"label", c.label},
                     {"p", json_io::to_json(c.p)},
                     {"pper_residual", residual},
                     {"kernel_residual_closed_form", kernel},
                     {"defect_on_one", defect_on_one},
                     {"report", json_io::to_json(report, space)}});
  }
  result.data = {{"N", N}, {"cases", cases}, {"text", text.str()}};
  return result;
}

ExampleResult reproduce_dirichlet_n0(const RunConfig& config) {
  const int N = config.dim.value_or(kDefaultDirichletN);
  const Complex alpha = config.alpha;
  if (alpha == Complex(0.0)) throw InvalidArgument("alpha must be nonzero");
  const Op shift = dirichlet_shift(N);
  const auto& space = shift.space();
  const Vec one = space.monomial({0});
  const auto problem = PerturbationProblem::create(shift, alpha * one, one, config.tol);
  const auto report = theorem_verdict(problem);
  const double defect_on_one = defect_quadratic(problem.perturbed(), one).value;
  const double expected = std::pow(std::abs(alpha), 4);

  ExampleResult result{"dirichlet-n0", {}, {}, {}};
  result.checks.push_back(is_true("branch I", report.branch == Branch::I));
  result.checks.push_back(is_true("verdict_theorem false", !report.verdict_theorem));
  result.checks.push_back(is_true("verdict_oracle false", !report.verdict_oracle));
  result.checks.push_back(near("defect on 1 = |alpha|^4", defect_on_one, expected, 1e-10));
  result.notes.push_back("defect on 1 is |alpha|^4 by direct expansion: 1 - 2(|alpha|^2 + 2) + "
                         "(|alpha|^4 + 2|alpha|^2 + 3); the value |alpha|^2 is an "
                         "arithmetic slip, the conclusion (never a 2-isometry) stands");
  std::ostringstream text;
  text << "  alpha " << fmt(alpha) << ", defect on 1 " << fmt(defect_on_one) << '\n';
  print_report_text(report, text);
  result.data = {{"N", N},
                 {"alpha", {alpha.real(), alpha.imag()}},
                 {"defect_on_one", defect_on_one},
                 {"report", json_io::to_json(report, space)},
                 {"text", text.str()}};
  return result;
}

ExampleResult reproduce_bidisc(const RunConfig& config) {
  const int N = config.dim.value_or(kDefaultBidiscN);
  const Op shift = bidisc_shift(N, 1);
  const auto& space = shift.space();
  const Vec u = bidisc_example_u(space);
  const Vec v = bidisc_example_v(space);
  const auto problem = PerturbationProblem::create(shift, u, v, config.tol);
  const auto report = theorem_verdict(problem);

  const Op example = bidisc_example_operator(N);
  std::vector<int> low;
  for (int i = 0; i < space.dimension(); ++i) {
    if (space.degree(i) <= 2) low.push_back(i);
  }
  const auto low_defect =
      defect_form_by_polarization(example, Subspace::coordinate(space, low));
  const double u2 = norm_squared(u, space);
  const double rhs = -2.0 * (report.gamma.value_or(NAN) +
                             inner(u, apply(shift, v), space).real());

  ExampleResult result{"bidisc", {}, {}, {}};
  result.checks.push_back(is_true("branch II", report.branch == Branch::II));
  result.checks.push_back(near("gamma = 0", report.gamma.value_or(NAN), 0.0, 1e-12));
  result.checks.push_back(at_most("kernel residual at z1", report.kernel_residual, 1e-12));
  result.checks.push_back(at_most("cond (ii)(a) residual",
                                  report.cond_iia_residual.value_or(INFINITY), 1e-12));
  result.checks.push_back(near("||u||^2 = 2", u2, 2.0, 1e-12));
  result.checks.push_back(near("||u||^2 = -2(gamma + Re<u, Tv>)", u2, rhs, 1e-12));
  result.checks.push_back(
      at_most("polarized defect on total degree <= 2", low_defect.max_residual, 1e-10));
  result.checks.push_back(is_true("verdict_theorem", report.verdict_theorem));
  result.checks.push_back(is_true("verdict_oracle", report.verdict_oracle));
  result.data = {{"N", N},
                 {"low_degree_defect", low_defect.max_residual},
                 {"report", json_io::to_json(report, space)},
                 {"text", report_text(report)}};
  return result;
}

const std::map<std::string, std::function<ExampleResult(const RunConfig&)>>& examples() {
  static const std::map<std::string, std::function<ExampleResult(const RunConfig&)>> table = {
      {"c2-example", reproduce_c2},
      {"dirichlet-pper", reproduce_dirichlet_pper},
      {"dirichlet-n0", reproduce_dirichlet_n0},
      {"bidisc", reproduce_bidisc},
  };
  return table;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.tol.defect > 0.0) || !(config.tol.rank > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (config.dim && (*config.dim < 1 || *config.dim > kMaxTruncation)) {
    throw InvalidArgument("--dim must lie in [1, " + std::to_string(kMaxTruncation) + "]");
  }
}

int cmd_reproduce(const RunConfig& config, std::ostream& out, std::ostream&) {
  std::vector<ExampleResult> results;
  if (config.target == "all") {
    for (const auto& [name, fn] : examples()) results.push_back(fn(config));
  } else {
    const auto it = examples().find(config.target);
    if (it == examples().end()) {
      throw InvalidArgument("unknown example '" + config.target +
                            "' (expected c2-example, dirichlet-pper, dirichlet-n0, bidisc, all)");
    }
    results.push_back(it->second(config));
  }
  emit(results, config, out);
  for (const auto& r : results) {
    if (!r.passed()) return kExitMismatch;
  }
  return kExitOk;
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const json doc = read_json_file(config.target);
  Op base = [&] {
    if (!doc.contains("operator")) throw InvalidArgument("input needs an \"operator\" field");
    return json_io::op_from_json(doc.at("operator"));
  }();
  if (!doc.contains("u") || !doc.contains("v")) {
    throw InvalidArgument("input needs \"u\" and \"v\" fields");
  }
  const Vec u = json_io::vec_from_json(doc.at("u"), base.space());
  const Vec v = json_io::vec_from_json(doc.at("v"), base.space());
  const auto problem =
      PerturbationProblem::create(base, u, v, config.tol, config.allow_non_2iso_base);
  const auto report = theorem_verdict(problem);

  std::optional<bool> expected;
  if (doc.contains("expected_verdict")) expected = doc.at("expected_verdict").get<bool>();

  if (config.format == OutputFormat::Json) {
    json result = json_io::to_json(report, problem.space());
    if (expected) result["expected_verdict"] = *expected;
    out << result.dump(2) << '\n';
  } else {
    print_report_text(report, out);
    if (expected) out << "  expected_verdict  " << (*expected ? "true" : "false") << '\n';
  }
  if (!report.verdicts_agree()) {
    err << "theorem and oracle verdicts disagree\n";
    return kExitMismatch;
  }
  if (expected && *expected != report.verdict_theorem) {
    err << "verdict differs from expected_verdict\n";
    return kExitMismatch;
  }
  return kExitOk;
}

namespace {

int search_dirichlet_alpha(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int N = config.dim.value_or(kDefaultDirichletN);
  if (!(config.step > 0.0)) throw InvalidArgument("--step must be positive");
  const auto count = [&](double lo, double hi) {
    return hi < lo ? 0 : static_cast<int>(std::floor((hi - lo) / config.step + 1e-9)) + 1;
  };
  const auto snap = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };
  const int n_re = count(config.re_min, config.re_max);
  const int n_im = count(config.im_min, config.im_max);

  json hits = json::array();
  bool off_locus = false;
  int scanned = 0;
  for (int a = 0; a < n_re; ++a) {
    for (int b = 0; b < n_im; ++b) {
      const Complex alpha(snap(config.re_min + a * config.step),
                          snap(config.im_min + b * config.step));
      if (alpha == Complex(0.0)) continue;
      ++scanned;
      const Op t = perturbed_dirichlet_monomial(N, alpha, config.power);
      const double defect = defect_form_by_polarization(t, safe_subspace(t)).max_residual;
      if (defect > config.tol.defect) continue;
      const double radius = std::abs(alpha + 1.0);
      const bool on_locus = config.power == 1 && std::abs(radius - 1.0) <= config.step;
      off_locus = off_locus || !on_locus;
      hits.push_back({{"alpha", {alpha.real(), alpha.imag()}},
                      {"oracle_defect", defect},
                      {"abs_alpha_plus_1", radius},
                      {"on_locus", on_locus}});
    }
  }

  if (config.format == OutputFormat::Json) {
    out << json{{"space", "dirichlet-alpha"},
                {"N", N},
                {"power", config.power},
                {"step", config.step},
                {"scanned", scanned},
                {"hits", hits},
                {"tol_defect", config.tol.defect}}
               .dump(2)
        << '\n';
  } else {
    out << "dirichlet-alpha: M_z + alpha z^" << config.power << " (x) 1, N = " << N
        << ", scanned " << scanned << " points, " << hits.size() << " hits\n";
    out << std::setw(14) << "re(alpha)" << std::setw(14) << "im(alpha)" << std::setw(16)
        << "oracle_defect" << std::setw(14) << "|alpha+1|" << '\n';
    for (const auto& h : hits) {
      out << std::setw(14) << h["alpha"][0].get<double>() << std::setw(14)
          << h["alpha"][1].get<double>() << std::setw(16)
          << fmt(h["oracle_defect"].get<double>()) << std::setw(14)
          << h["abs_alpha_plus_1"].get<double>() << '\n';
    }
  }
  if (off_locus) {
    err << "hits found off the locus |alpha + 1| = 1 (n = 1 only)\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int search_c2_rankone(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int dim = config.dim.value_or(2);
  if (dim > kMaxDimension) throw InvalidArgument("dimension too large");
  if (config.trials < 0) throw InvalidArgument("--trials must be non-negative");
  Rng rng(config.seed);
  const auto space = make_euclidean_space(dim);
  json hits = json::array();
  bool disagreement = false;
  int scanned = 0;
  for (int trial = 0; trial < config.trials; ++trial) {
    const Op t(space, random_unitary(dim, rng), 0);
    Vec v = random_vec(dim, rng);
    v /= norm(v, space);
    const Vec tv = apply(t, v);
    for (int ri = 1; ri <= 5; ++ri) {
      const double r = 0.5 * ri;
      for (int k = 0; k < 12; ++k) {
        const Complex c = r * std::polar(1.0, k * std::numbers::pi / 6.0);
        const auto problem = PerturbationProblem::create(t, c * tv, v, config.tol);
        const auto report = theorem_verdict(problem);
        ++scanned;
        disagreement = disagreement || !report.verdicts_agree();
        if (!report.verdict_oracle && !report.verdict_theorem) continue;
        hits.push_back({{"trial", trial},
                        {"r", r},
                        {"phase_over_pi", k / 6.0},
                        {"branch", to_string(report.branch)},
                        {"oracle_defect", report.oracle_defect},
                        {"verdict_theorem", report.verdict_theorem},
                        {"verdict_oracle", report.verdict_oracle}});
      }
    }
  }
  if (config.format == OutputFormat::Json) {
    out << json{{"space", "c2-rankone"},
                {"dim", dim},
                {"seed", config.seed},
                {"trials", config.trials},
                {"scanned", scanned},
                {"hits", hits}}
               .dump(2)
        << '\n';
  } else {
    out << "c2-rankone: T random unitary on C^" << dim << ", u = r e^{i phi} T v, seed "
        << config.seed << ", scanned " << scanned << ", " << hits.size() << " hits\n";
    out << std::setw(7) << "trial" << std::setw(8) << "r" << std::setw(12) << "phi/pi"
        << std::setw(8) << "branch" << std::setw(16) << "oracle_defect" << '\n';
    for (const auto& h : hits) {
      out << std::setw(7) << h["trial"].get<int>() << std::setw(8) << h["r"].get<double>()
          << std::setw(12) << std::setprecision(4) << h["phase_over_pi"].get<double>()
          << std::setw(8) << h["branch"].get<std::string>() << std::setw(16)
          << fmt(h["oracle_defect"].get<double>()) << '\n';
    }
  }
  if (disagreement) {
    err << "theorem and oracle verdicts disagree on at least one point\n";
    return kExitMismatch;
  }
  return kExitOk;
}

}  // namespace

int cmd_search(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.target == "dirichlet-alpha") return search_dirichlet_alpha(config, out, err);
  if (config.target == "c2-rankone") return search_c2_rankone(config, out, err);
  throw InvalidArgument("unknown search space '" + config.target +
                        "' (expected dirichlet-alpha or c2-rankone)");
}

int cmd_defect(const RunConfig& config, std::ostream& out, std::ostream&) {
  const json doc = read_json_file(config.target);
  if (!doc.contains("operator") || !doc.contains("x")) {
    throw InvalidArgument("input needs \"operator\" and \"x\" fields");
  }
  const Op t = json_io::op_from_json(doc.at("operator"));
  const Vec x = json_io::vec_from_json(doc.at("x"), t.space());
  const auto defect = defect_quadratic(t, x);
  if (config.format == OutputFormat::Json) {
    out << json{{"defect", defect.value}, {"safe", defect.safe}}.dump(2) << '\n';
  } else {
    out << "defect " << std::setprecision(17) << defect.value << ' '
        << (defect.safe ? "safe" : "unsafe") << '\n';
  }
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.command == "reproduce") return cmd_reproduce(config, out, err);
    if (config.command == "analyze") return cmd_analyze(config, out, err);
    if (config.command == "search") return cmd_search(config, out, err);
    if (config.command == "defect") return cmd_defect(config, out, err);
    throw InvalidArgument("unknown command '" + config.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace twoiso::cli
