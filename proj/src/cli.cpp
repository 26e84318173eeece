#include "sepcert/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sepcert/certificates.hpp"
#include "sepcert/io.hpp"
#include "sepcert/ups.hpp"

namespace sepcert {

namespace {

// A see-saw minimum below this is treated as a genuine refutation rather than
// round-off around zero.
constexpr double kRefuteTolerance = 1e-9;

struct CommonOptions {
  std::string out_path;
  std::string log_path;
  int restarts = kDefaultRestarts;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;

  SearchBudget budget() const {
    SearchBudget b;
    b.restarts = restarts;
    b.seed = seed;
    b.threads = threads;
    return b;
  }
};

struct Outcome {
  Json inputs = Json::object();
  Json outputs = Json::object();
  bool refuted = false;
};

Json searches_to_json(const std::vector<ConeSearchReport>& searches) {
  Json a = Json::array();
  for (const auto& s : searches) a.push_back(search_report_to_json(s));
  return a;
}

bool refutes(const ConeSearchReport& r) { return r.min_overlap < -kRefuteTolerance; }

class SolverLog {
 public:
  explicit SolverLog(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write iterate log '" + path + "'");
    }
  }
  SolverOptions options() {
    SolverOptions o;
    o.log = &buffer_;
    return o;
  }
  void flush() {
    if (file_.is_open()) file_ << buffer_.str();
  }
  std::string text() const { return buffer_.str(); }

 private:
  std::ostringstream buffer_;
  std::ofstream file_;
};

// --- discriminate --------------------------------------------------------------

struct DiscriminateArgs {
  std::string input;
  std::string cls = "global";
  std::optional<double> epsilon;
  std::vector<double> prior;
  std::string certificate_out;
  int max_iterations = SolverOptions{}.max_iterations;
};

Outcome discriminate(const DiscriminateArgs& a, SolverLog& log) {
  Outcome o;
  o.inputs = {{"input", a.input}, {"class", a.cls}};
  if (a.cls != "global" && a.cls != "ppt") throw InputError("--class must be 'global' or 'ppt'");

  std::optional<Ensemble> ensemble;
  if (a.epsilon) {
    if (a.input != "bell3" && a.input != "bell4")
      throw InputError("--epsilon applies only to the bell3 and bell4 families");
    const int n = a.input == "bell3" ? 3 : 4;
    std::vector<ComplexVector> kets;
    for (int k = 1; k <= n; ++k) kets.push_back(bell(k));
    ensemble.emplace(extend_with_resource(kets, *a.epsilon, a.prior));
    o.inputs["epsilon"] = *a.epsilon;
  } else {
    auto entry = load_input(a.input);
    if (!std::holds_alternative<Ensemble>(entry)) throw InputError("'" + a.input + "' is not an ensemble");
    ensemble.emplace(std::get<Ensemble>(entry));
    if (!a.prior.empty()) ensemble.emplace(ensemble->with_probs(a.prior));
  }
  o.inputs["probs"] = ensemble->probs();
  o.inputs["space"] = space_to_json(ensemble->space());

  SolverOptions opts = log.options();
  opts.max_iterations = a.max_iterations;
  DiscriminationResult r = a.cls == "global" ? optimal_global(*ensemble, opts) : optimal_ppt(*ensemble, opts);

  o.outputs = {{"value", r.value},
               {"dual_value", r.dual_value},
               {"gap", r.gap},
               {"status", to_string(r.solution.status)},
               {"iterations", r.solution.iterations},
               {"primal_residual", r.solution.primal_residual},
               {"dual_residual", r.solution.dual_residual},
               {"decomposition_residual", r.decomposition_residual},
               {"success_probability", success_probability(*ensemble, r.measurement)}};
  Json cert = {{"cone", to_string(r.certificate.cone)}, {"claimed_value", r.certificate.claimed_value}};
  if (!a.certificate_out.empty()) {
    write_json_file(a.certificate_out, certificate_to_json(r.certificate, ensemble->space()));
    cert["file"] = a.certificate_out;
  }
  o.outputs["certificate"] = cert;

  if (a.epsilon && a.prior.empty()) {
    const double eps = *a.epsilon;
    if (a.input == "bell4" && a.cls == "ppt")
      o.outputs["closed_form"] = four_bell_value(eps);
    else if (a.input == "bell3" && a.cls == "ppt" && eps <= 1.0 / 3.0)
      o.outputs["closed_form"] = three_bell_value(eps);
  }
  return o;
}

// --- certify -------------------------------------------------------------------

Outcome certify(const std::string& which, std::optional<double> epsilon, const CommonOptions& c) {
  Outcome o;
  o.inputs = {{"construction", which}, {"restarts", c.restarts}, {"seed", c.seed}};
  const SearchBudget budget = c.budget();

  if (which == "bell3-resource" || which == "thm1") {
    if (!epsilon) throw InputError("--epsilon is required for bell3-resource");
    o.inputs["epsilon"] = *epsilon;
    const ThreeBellCertificate tc = three_bell_resource_certificate(*epsilon);
    const auto conj = conjugation_residuals(tc);
    std::vector<ConeSearchReport> searches;
    for (const auto& q : tc.q) searches.push_back(block_positivity_search(q, BipartiteSpace({2, 2}, {2, 2}), budget));
    const double link = choi_link_residual(tc);
    const bool identities = link < 1e-9 && conj[0] < 1e-9 && conj[1] < 1e-9;
    o.refuted = !identities || std::any_of(searches.begin(), searches.end(), refutes);
    o.outputs = {{"trace", tc.certificate.claimed_value},
                 {"closed_form", three_bell_value(*epsilon)},
                 {"choi_link_residual", link},
                 {"conjugation_residuals", conj},
                 {"searches", searches_to_json(searches)},
                 {"cone", to_string(tc.certificate.cone)}};
  } else if (which == "bell4-resource" || which == "thm2") {
    if (!epsilon) throw InputError("--epsilon is required for bell4-resource");
    o.inputs["epsilon"] = *epsilon;
    const DualCertificate cert = four_bell_resource_certificate(*epsilon);
    const auto mins = four_bell_partial_transpose_min_eigenvalues(*epsilon);
    std::vector<ComplexVector> kets;
    for (int k = 1; k <= 4; ++k) kets.push_back(bell(k));
    const SepBoundReport sb = sep_bound_from_certificate(extend_with_resource(kets, *epsilon), cert, budget);
    o.refuted = !sb.unrefuted || *std::min_element(mins.begin(), mins.end()) < -kRefuteTolerance;
    o.outputs = {{"trace", cert.claimed_value},
                 {"closed_form", four_bell_value(*epsilon)},
                 {"partial_transpose_min_eigenvalues", mins},
                 {"searches", searches_to_json(sb.searches)},
                 {"cone", to_string(cert.cone)}};
  } else if (which == "ydy") {
    if (epsilon) throw InputError("--epsilon does not apply to ydy");
    const DualCertificate cert = ydy_certificate();
    const Ensemble e = std::get<Ensemble>(catalog("ydy"));
    const SepBoundReport sb = sep_bound_from_certificate(e, cert, budget);
    std::vector<double> skew;
    for (const auto& u : ydy_unitaries()) skew.push_back(skew_symmetry_residual(u, ydy_v()));
    o.refuted = !sb.unrefuted;
    o.outputs = {{"trace", cert.claimed_value},
                 {"skew_symmetry_residuals", skew},
                 {"searches", searches_to_json(sb.searches)},
                 {"cone", to_string(cert.cone)}};
  } else {
    throw InputError("unknown construction '" + which + "' (expected bell3-resource, bell4-resource or ydy)");
  }
  o.outputs["unrefuted"] = !o.refuted;
  return o;
}

// --- ups -----------------------------------------------------------------------

struct UpsArgs {
  std::string input;
  std::string action = "check";
  std::string lambda;
  std::string z;
};

ComplexVector load_z(const UpsArgs& a) {
  std::string source = a.z;
  if (source.empty()) {
    if (a.input != "tiles") throw InputError("--z is required for this set");
    source = "tiles_psi";
  }
  if (source == "tiles_psi") return tiles_psi();
  const Json j = read_json_file(source);
  return vector_from_json(j.is_object() ? j.value("z", Json()) : j);
}

double parse_lambda(const UpsArgs& a) {
  if (a.lambda.empty()) throw InputError("--lambda is required for the bound action");
  if (a.lambda == "analytic" || a.lambda == "paper") {
    if (a.input != "tiles") throw InputError("--lambda analytic is only defined for the tiles set");
    return tiles_lambda_lower_bound();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(a.lambda, &used);
    if (used != a.lambda.size()) throw std::invalid_argument(a.lambda);
    return v;
  } catch (const std::exception&) {
    throw InputError("--lambda must be a number or 'analytic'");
  }
}

Outcome ups(const UpsArgs& a, const CommonOptions& c) {
  Outcome o;
  o.inputs = {{"input", a.input}, {"action", a.action}};
  auto entry = load_input(a.input);
  if (!std::holds_alternative<UPSet>(entry)) throw InputError("'" + a.input + "' is not a product set");
  const UPSet s = std::get<UPSet>(entry);
  o.inputs["size"] = s.size();
  o.inputs["space"] = space_to_json(s.space());

  if (a.action == "check") {
    const ExtensionCheck ec = is_unextendable(s);
    o.outputs = {{"unextendable", ec.unextendable}};
    o.outputs["witness"] = ec.witness ? product_to_json(*ec.witness) : Json(nullptr);
  } else if (a.action == "enumerate") {
    const ReplacementSet r = replacement_projections(s, c.threads);
    o.outputs = {{"counts", r.counts()}, {"total", r.total()}, {"replacement_set", replacement_set_to_json(r, s.space())}};
  } else if (a.action == "separable") {
    const ReplacementSet r = replacement_projections(s, c.threads);
    const SeparableDiscrimination sd = separable_perfect_discrimination(s, r);
    o.outputs = {{"counts", r.counts()}, {"feasible", sd.lp.feasible()}, {"phase1_value", sd.lp.phase1_value}};
    if (sd.lp.feasible()) {
      o.outputs["residual"] = sd.lp.residual;
      o.outputs["max_cross_term"] = sd.max_cross_term;
      o.outputs["diagonal_sum"] = sd.diagonal_sum;
      o.outputs["measurement"] = measurement_to_json(*sd.measurement);
    } else {
      o.outputs["farkas_witness"] = matrix_to_json(*sd.lp.farkas);
      o.outputs["identity_span_residual"] = identity_span_residual(s, r);
    }
  } else if (a.action == "bound") {
    const double lambda = parse_lambda(a);
    const ComplexVector z = load_z(a);
    o.inputs["lambda"] = lambda;
    o.inputs["z"] = vector_to_json(z);
    const UpsBound b = ups_plus_state_bound(s, z, lambda);
    const ConeSearchReport extra = block_positivity_search(b.extra_part, s.space(), c.budget());
    const ConeSearchReport overlap = min_product_overlap(s, c.budget());
    o.refuted = refutes(extra) || b.member_min_eigenvalue < -kRefuteTolerance;
    o.outputs = {{"bound", b.bound},
                 {"delta", b.delta},
                 {"lambda", b.lambda},
                 {"member_min_eigenvalue", b.member_min_eigenvalue},
                 {"extra_part_search", search_report_to_json(extra)},
                 {"min_product_overlap_estimate", search_report_to_json(overlap)},
                 {"lambda_consistent_with_estimate", lambda <= overlap.min_overlap + kRefuteTolerance},
                 {"cone", to_string(b.certificate.cone)},
                 {"unrefuted", !o.refuted}};
  } else {
    throw InputError("--action must be check, enumerate, separable or bound");
  }
  return o;
}

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--out", c.out_path, "Also write the JSON report to this file");
  sub->add_option("--log-iterates", c.log_path, "Write solver iterates to this file");
  sub->add_option("--restarts", c.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "See-saw master seed");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds for bipartite state discrimination", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOptions common;
  DiscriminateArgs da;
  UpsArgs ua;
  std::string construction;
  std::optional<double> cert_eps;

  auto* disc = app.add_subcommand("discriminate", "Optimal success probability over global or PPT measurements");
  disc->add_option("input", da.input, "Family name or ensemble file")->required();
  disc->add_option("--class", da.cls, "global or ppt");
  disc->add_option("--epsilon", da.epsilon, "Resource parameter for bell3 / bell4");
  disc->add_option("--prior", da.prior, "Comma-separated prior")->delimiter(',');
  disc->add_option("--certificate-out", da.certificate_out, "Write the dual certificate to this file");
  disc->add_option("--max-iterations", da.max_iterations, "Interior-point iteration cap")->check(CLI::PositiveNumber);
  add_common(disc, common);

  auto* cert = app.add_subcommand("certify", "Check an explicit dual certificate");
  cert->add_option("construction", construction, "bell3-resource (thm1), bell4-resource (thm2) or ydy")->required();
  cert->add_option("--epsilon", cert_eps, "Resource parameter");
  add_common(cert, common);

  auto* upc = app.add_subcommand("ups", "Unextendable product set analysis");
  upc->add_option("input", ua.input, "Family name or UPS file")->required();
  upc->add_option("--action", ua.action, "check, enumerate, separable or bound");
  upc->add_option("--lambda", ua.lambda, "Product-overlap lower bound, or 'analytic' (alias 'paper') for the tiles value");
  upc->add_option("--z", ua.z, "Extra state: 'tiles_psi' or a JSON vector file");
  add_common(upc, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<SolverLog> log;
  try {
    log.emplace(common.log_path);
    Outcome o;
    std::string command;
    if (disc->parsed()) {
      command = "discriminate";
      o = discriminate(da, *log);
    } else if (cert->parsed()) {
      command = "certify";
      o = certify(construction, cert_eps, common);
    } else {
      command = "ups";
      o = ups(ua, common);
    }
    log->flush();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json report = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                   {"command", command},
                   {"argv", args},
                   {"inputs", o.inputs},
                   {"outputs", o.outputs},
                   {"result", o.refuted ? "refuted" : "ok"},
                   {"timing", {{"seconds", seconds}}}};
    out << report.dump(2) << '\n';
    if (!common.out_path.empty()) write_json_file(common.out_path, report);
    return o.refuted ? kExitRefuted : kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SolverError& e) {
    if (log) log->flush();
    err << "solver error: " << e.what() << '\n';
    if (log) err << "iterates (iteration, primal, dual, gap, primal residual, dual residual):\n" << log->text();
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}

}  // namespace sepcert
