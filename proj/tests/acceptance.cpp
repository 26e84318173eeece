// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "reference_data.hpp"
#include "sepcert/certificates.hpp"
#include "sepcert/ups.hpp"

using namespace sepcert;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Every interior-point log produced during the run, for the weak-duality sweep.
std::vector<std::string> g_logs;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Timed {
  DiscriminationResult result;
  double seconds = 0.0;
};

Timed solve(const Ensemble& e, bool ppt) {
  std::ostringstream log;
  SolverOptions o;
  o.log = &log;
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{ppt ? optimal_ppt(e, o) : optimal_global(e, o), 0.0};
  t.seconds = seconds_since(t0);
  g_logs.push_back(log.str());
  return t;
}

Ensemble family(const char* name) { return std::get<Ensemble>(catalog(name)); }

Ensemble bell_resource(int n, double eps) {
  std::vector<ComplexVector> kets;
  for (int k = 1; k <= n; ++k) kets.push_back(bell(k));
  return extend_with_resource(kets, eps);
}

ComplexMatrix complex_normal(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> n;
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

ComplexVector random_unit(std::mt19937_64& rng, int d) { return complex_normal(rng, d, 1).col(0).normalized(); }

ComplexMatrix proj(const ComplexVector& v) { return v * v.adjoint(); }

// --- criteria ----------------------------------------------------------------

void bell_ppt(Verdict& v) {
  const auto b4 = solve(family("bell4"), true);
  const auto b3 = solve(family("bell3"), true);
  v.detail << "bell4 " << b4.result.value << " (" << b4.seconds << " s), bell3 " << b3.result.value << " ("
           << b3.seconds << " s)";
  v.require(std::abs(b4.result.value - 0.5) <= 1e-6, "bell4 value");
  v.require(std::abs(b3.result.value - 2.0 / 3.0) <= 1e-6, "bell3 value");
  v.require(b4.seconds < 5 && b3.seconds < 5, "time");
}

void bell4_resource(Verdict& v) {
  double worst = 0.0, slowest = 0.0;
  for (double eps : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const auto r = solve(bell_resource(4, eps), true);
    worst = std::max(worst, std::abs(r.result.value - four_bell_value(eps)));
    slowest = std::max(slowest, r.seconds);
  }
  v.detail << "max |value - (1+sqrt(1-eps^2))/2| " << worst << ", slowest " << slowest << " s";
  v.require(worst <= 1e-5, "value");
  v.require(slowest < 30, "time");
}

void bell3_resource(Verdict& v) {
  for (double eps : {0.1, 0.2, 0.33}) {
    const double val = solve(bell_resource(3, eps), true).result.value;
    v.detail << "eps " << eps << ": " << val << "; ";
    v.require(std::abs(val - 1.0) <= 1e-6, "perfect below threshold");
  }
  for (double eps : {0.5, 0.8}) {
    const double val = solve(bell_resource(3, eps), true).result.value;
    v.detail << "eps " << eps << ": " << val << " >= " << three_bell_value(eps) << "; ";
    v.require(val >= three_bell_value(eps) - 1e-6, "above closed form");
  }
}

void three_bell_certificate(Verdict& v) {
  for (double eps : {0.2, 0.6, 0.9}) {
    const auto c = three_bell_resource_certificate(eps);
    const double trace_err = std::abs(c.certificate.claimed_value - three_bell_value(eps));
    const double link = choi_link_residual(c);
    const auto conj = conjugation_residuals(c);
    double min_overlap = 1e300;
    for (const auto& q : c.q)
      min_overlap = std::min(min_overlap, block_positivity_search(q, BipartiteSpace({2, 2}, {2, 2})).min_overlap);
    v.detail << "eps " << eps << ": trace err " << trace_err << ", link " << link << ", conj " << std::max(conj[0], conj[1])
             << ", min overlap " << min_overlap << "; ";
    v.require(trace_err <= 1e-12, "trace");
    v.require(link <= 1e-12, "choi link");
    v.require(conj[0] <= 1e-12 && conj[1] <= 1e-12, "conjugation");
    v.require(min_overlap >= -1e-9, "see-saw");
  }
}

void ydy_suite(Verdict& v) {
  const Ensemble e = family("ydy");
  const double ppt = solve(e, true).result.value;
  const DualCertificate cert = ydy_certificate();
  double skew = 0.0, proj_res = 0.0;
  std::mt19937_64 rng(20140829);
  for (const auto& u : ydy_unitaries()) {
    skew = std::max(skew, skew_symmetry_residual(u, ydy_v()));
    const ComplexMatrix w = breuer_hall_witness(u, ydy_v()).matrix();
    for (int i = 0; i < 100; ++i) {
      const ComplexMatrix m = compress_y(w, 4, 4, random_unit(rng, 4));
      proj_res = std::max(proj_res, (m * m - m).norm());
    }
  }
  const double local = success_probability(e, ydy_standard_basis_measurement());
  v.detail << "PPT " << ppt << ", Tr(H) " << cert.claimed_value << ", skew " << skew << ", projection " << proj_res
           << ", local " << local;
  v.require(std::abs(ppt - 0.875) <= 1e-6, "PPT value");
  v.require(cert.claimed_value == 0.75, "trace");
  v.require(skew <= 1e-12, "skew symmetry");
  v.require(proj_res <= 1e-10, "projection");
  v.require(std::abs(local - 0.75) <= 1e-12, "local measurement");
}

void ups_suite(Verdict& v) {
  const UPSet tiles = std::get<UPSet>(catalog("tiles"));
  const UPSet feng = std::get<UPSet>(catalog("feng"));
  v.require(is_unextendable(tiles).unextendable, "tiles unextendable");
  v.require(is_unextendable(feng).unextendable, "feng unextendable");

  const ReplacementSet fr = replacement_projections(feng);
  v.require(fr.counts() == std::vector<int>(8, 6), "six per index");
  double worst_match = 1.0;
  for (int k = 0; k < 8; ++k)
    for (const auto& p : reference::kFengReplacements[k]) {
      const ComplexVector ref = kron(reference::from(p.x), reference::from(p.y));
      double best = 0.0;
      for (const auto& e : fr.lists[k]) best = std::max(best, std::abs(ref.dot(e.ket())));
      worst_match = std::min(worst_match, best);
    }
  v.require(worst_match >= 1 - 1e-9, "reference match");

  const auto ts = separable_perfect_discrimination(tiles);
  v.require(ts.lp.feasible() && ts.max_cross_term <= 1e-9 && std::abs(ts.diagonal_sum - 5) <= 1e-8, "tiles LP");

  const auto fs = separable_perfect_discrimination(feng, fr);
  bool farkas = !fs.lp.feasible() && fs.lp.farkas.has_value() && fs.lp.farkas->trace().real() < 0;
  if (farkas)
    for (const auto& l : fr.lists)
      for (const auto& p : l) farkas = farkas && hs_inner(*fs.lp.farkas, proj(p.ket())) >= -1e-9;
  v.require(farkas, "feng Farkas witness");
  const double span = identity_span_residual(feng, fr);
  v.require(span > 1e-3, "feng span residual");
  v.detail << "feng counts 8x" << fr.counts()[0] << ", worst match " << worst_match << ", tiles cross "
           << ts.max_cross_term << ", feng phase-1 " << fs.lp.phase1_value << ", span residual " << span;
}

void tiles_bound(Verdict& v) {
  const UPSet tiles = std::get<UPSet>(catalog("tiles"));
  const double lambda = tiles_lambda_lower_bound();
  const auto b = ups_plus_state_bound(tiles, tiles_psi(), lambda);
  const double c = std::cos(std::numbers::pi / 8);
  const double estimate = min_product_overlap(tiles).min_overlap;
  v.detail << "delta " << b.delta << ", 1 - bound " << 1 - b.bound << ", PSD parts " << b.member_min_eigenvalue
           << ", overlap estimate " << estimate << " vs lambda " << lambda;
  v.require(std::abs(b.delta - c * c) <= 1e-12, "delta");
  v.require(std::abs(b.bound - (1 - lambda / (6 * b.delta))) <= 1e-15, "bound formula");
  v.require(b.bound < 1 - 1.647e-4, "bound value");
  v.require(b.member_min_eigenvalue >= -1e-10, "PSD parts");
  v.require(estimate >= lambda, "overlap estimate");
}

void properties(Verdict& v) {
  std::mt19937_64 rng(20140829);

  // Helstrom oracle: (1 + || p a a* - (1-p) b b* ||_1) / 2.
  double helstrom_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const ComplexVector a = random_unit(rng, d);
    const ComplexVector b = random_unit(rng, d);
    const ComplexVector kets[] = {a, b};
    const double value = solve(Ensemble::pure(BipartiteSpace(d, 1), kets, {p, 1 - p}), false).result.value;
    const ComplexMatrix diff = p * proj(a) - (1 - p) * proj(b);
    const double oracle = 0.5 * (1 + eig_hermitian(HermitianOperator(0.5 * (diff + diff.adjoint()))).values.cwiseAbs().sum());
    helstrom_err = std::max(helstrom_err, std::abs(value - oracle));
  }
  v.require(helstrom_err <= 1e-6, "Helstrom");

  // Positivity of Xi_t on random PSD inputs of every rank, normalized to unit trace.
  double xi_min = 1e300;
  for (int trial = 0; trial < 10000; ++trial) {
    const ComplexMatrix g = complex_normal(rng, 4, 1 + trial % 4);
    ComplexMatrix p = g * g.adjoint();
    p /= p.trace().real();
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) xi_min = std::min(xi_min, min_eigenvalue(xi_map(t, p)));
  }
  v.require(xi_min >= -1e-10, "Xi_t positivity");

  double mu = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexVector a = complex_normal(rng, 2, 1).col(0);
    const ComplexVector b = complex_normal(rng, 2, 1).col(0);
    mu = std::max(mu, (m_u(a).adjoint() * m_u(b) - (a * b.adjoint() + phi_map(b * a.adjoint()))).norm());
    mu = std::max(mu, (m_u(a).adjoint() * m_u(a) - a.squaredNorm() * ComplexMatrix::Identity(2, 2)).norm());
  }
  v.require(mu <= 1e-12, "M_u identities");

  const double domino = solve(family("domino"), true).result.value;
  v.require(std::abs(domino - 1) <= 1e-6, "domino");

  double monotone = -1e300;
  std::vector<ComplexVector> kets;
  for (int k = 0; k < 3; ++k) kets.push_back(random_unit(rng, 4));
  for (const Ensemble& e : {family("bell3"), family("bell4"), family("ydy"), bell_resource(3, 0.5),
                            Ensemble::pure(BipartiteSpace(2, 2), kets, {0.5, 0.3, 0.2})})
    monotone = std::max(monotone, solve(e, true).result.value - solve(e, false).result.value);
  v.require(monotone <= 1e-7, "global >= PPT");

  // Weak duality over every logged iterate of every solve in this run.
  std::size_t iterates = 0;
  double duality = -1e300;
  for (const auto& text : g_logs) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      std::istringstream fields(line);
      double it = 0, primal = 0, dual = 0;
      fields >> it >> primal >> dual;
      duality = std::max(duality, (primal - dual) / (1 + std::abs(dual)));
      ++iterates;
    }
  }
  v.require(iterates > 0 && duality <= 1e-12, "weak duality");

  v.detail << "Helstrom err " << helstrom_err << ", Xi_t min " << xi_min << ", M_u " << mu << ", domino " << domino
           << ", max(PPT - global) " << monotone << ", max relative (primal - dual) " << duality << " over " << iterates
           << " iterates";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"PPT value of three and four Bell states", bell_ppt},
      {"PPT value of four Bell states with a resource", bell4_resource},
      {"PPT value of three Bell states with a resource", bell3_resource},
      {"three-Bell resource certificate", three_bell_certificate},
      {"ydy bracket", ydy_suite},
      {"unextendable product sets", ups_suite},
      {"tiles plus one state", tiles_bound},
      {"property suites", properties},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    v.detail.precision(10);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    if (!v.pass) ++failures;
    std::printf("%s %zu %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(t0),
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              seconds_since(start));
  return failures == 0 ? 0 : 1;
}
