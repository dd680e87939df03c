#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "eprobe/closed_form.hpp"
#include "eprobe/mc_protocol.hpp"
#include "eprobe/statevec.hpp"

namespace eprobe {

/// One failed check: which quantity, at which error rate, what was expected
/// and what came out.
struct Violation {
  double e;
  std::string quantity;
  double expected;
  double actual;
};

struct VerifyOptions {
  double tolerance = 1e-12;  // algebraic identities
  int grid_points = 1000;    // uniform grid over [0, 1/3]
};

struct VerifyReport {
  std::size_t checks = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// `grid_points` uniformly spaced values over [0, 1/3], with the dangerous
/// inputs {0, 1/4, 1/3} always injected (sign-flip point and both
/// endpoints), sorted and deduplicated.
inline std::vector<double> verification_grid(int grid_points) {
  if (grid_points < 2) throw std::domain_error("grid needs at least 2 points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_points) + 3);
  for (int i = 0; i < grid_points; ++i) {
    grid.push_back(ErrorRate::kMax * (static_cast<double>(i) /
                                      static_cast<double>(grid_points - 1)));
  }
  grid.push_back(0.0);
  grid.push_back(0.25);
  grid.push_back(ErrorRate::kMax);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace detail {

class Checker {
 public:
  explicit Checker(VerifyReport& report) : report_(report) {}

  void near(double e, const std::string& quantity, double expected,
            double actual, double tol) {
    ++report_.checks;
    if (!(std::fabs(expected - actual) <= tol)) {
      report_.violations.push_back({e, quantity, expected, actual});
    }
  }

  void exact(double e, const std::string& quantity, double expected,
             double actual) {
    ++report_.checks;
    if (!(expected == actual)) {
      report_.violations.push_back({e, quantity, expected, actual});
    }
  }

  void is_true(double e, const std::string& quantity, bool condition,
               double expected, double actual) {
    ++report_.checks;
    if (!condition) report_.violations.push_back({e, quantity, expected, actual});
  }

 private:
  VerifyReport& report_;
};

inline void check_closed_form_at(Checker& c, double ev, double tol) {
  const ErrorRate e(ev);
  const ProbeStateSet st = correlated_states(e);

  c.near(ev, "|a1|", 1.0, st.a1.norm(), tol);
  c.near(ev, "|a2|", 1.0, st.a2.norm(), tol);
  c.near(ev, "|alpha_plus|^2 = 16(1-E)", 16.0 * (1.0 - ev),
         st.alpha_plus.norm_squared(), tol * 16.0);
  c.near(ev, "|alpha_minus|^2 = 16(1-E)", 16.0 * (1.0 - ev),
         st.alpha_minus.norm_squared(), tol * 16.0);
  c.near(ev, "|alpha|^2 = 16E", 16.0 * ev, st.alpha.norm_squared(), tol * 16.0);

  // alpha_minus is the component swap of alpha_plus, bitwise.
  c.exact(ev, "swap symmetry w0", st.alpha_plus.w0, st.alpha_minus.w3);
  c.exact(ev, "swap symmetry w3", st.alpha_plus.w3, st.alpha_minus.w0);

  const ProbeAngle mu = mu_components(e);
  c.near(ev, "cos^2 mu + sin^2 mu", 1.0,
         mu.cos_mu * mu.cos_mu + mu.sin_mu * mu.sin_mu, tol);
  c.is_true(ev, "cos mu >= 0", mu.cos_mu >= 0.0, 0.0, mu.cos_mu);

  // sgn(1-4E) * |1-4E| = 1-4E, including the 0 * 0 case at E = 1/4.
  const double lin = 1.0 - 4.0 * ev;
  c.exact(ev, "sgn(1-4E)*|1-4E| = 1-4E", lin, sgn(lin) * std::fabs(lin));

  const double qi = overlap_q_inner(e);
  const double qc = overlap_q_closed(e);
  c.near(ev, "overlap two routes", qc, qi, tol);
  c.is_true(ev, "Q in [0,1]", qc >= -tol && qc <= 1.0 + tol, 0.0, qc);

  const double info = renyi_info(e);
  const double ph = helstrom_correct_prob(e);
  c.near(ev, "renyi/helstrom consistency", info,
         std::log2(2.0 * (ph * ph + (1.0 - ph) * (1.0 - ph))), tol);
  c.is_true(ev, "renyi in [0,1]", info >= -tol && info <= 1.0 + tol, 0.0, info);
}

inline void check_statevec_at(Checker& c, double ev, double tol) {
  const ErrorRate e(ev);
  const ProbeStateSet st = correlated_states(e);

  for (Basis basis : {Basis::B0, Basis::B1}) {
    for (Bit bit : {Bit::Zero, Bit::One}) {
      const JointState joint = entangle(e, basis, bit);
      c.near(ev, "entangled norm", 1.0, joint.norm(), tol);

      const OutcomeDistribution d = joint_outcome_distribution(joint, basis);
      c.near(ev, "outcome total", 1.0, d.total(), tol);
      c.near(ev, "per-signal disturbance", ev, d.bob_marginal(other(bit)),
             tol);

      // Correct reception leaves the probe in alpha_minus/4 (bit 0) or
      // alpha_plus/4 (bit 1), in both bases.
      const ProbeVector correct = conditional_probe(joint, basis, bit);
      const ProbeVector target =
          bit == Bit::Zero ? st.alpha_minus : st.alpha_plus;
      c.near(ev, "correct-branch probe w0", target.w0 / 4.0, correct.w0, tol);
      c.near(ev, "correct-branch probe w3", target.w3 / 4.0, correct.w3, tol);

      // The error branch is collinear with alpha and carries probability E.
      const ProbeVector err = conditional_probe(joint, basis, other(bit));
      c.near(ev, "error-branch collinear with alpha", 0.0,
             err.w0 * st.alpha.w3 - err.w3 * st.alpha.w0, tol);
      c.near(ev, "error-branch probability", ev, err.norm_squared(), tol);

      c.near(ev, "bob marginal consistency", correct.norm_squared(),
             d.bob_marginal(bit), tol);
    }
  }
}

inline void check_continuity_at_quarter(Checker& c, double tol_limit) {
  const double h = 1e-10;
  const ProbeStateSet left = correlated_states(ErrorRate(0.25 - h));
  const ProbeStateSet right = correlated_states(ErrorRate(0.25 + h));
  const ProbeVector ProbeStateSet::* members[] = {
      &ProbeStateSet::a1, &ProbeStateSet::a2, &ProbeStateSet::alpha_plus,
      &ProbeStateSet::alpha_minus, &ProbeStateSet::alpha};
  const char* names[] = {"a1", "a2", "alpha_plus", "alpha_minus", "alpha"};
  for (int i = 0; i < 5; ++i) {
    const ProbeVector& l = left.*members[i];
    const ProbeVector& r = right.*members[i];
    c.near(0.25, std::string("limits at 1/4: ") + names[i] + ".w0", l.w0, r.w0,
           tol_limit);
    c.near(0.25, std::string("limits at 1/4: ") + names[i] + ".w3", l.w3, r.w3,
           tol_limit);
  }
}

inline void check_monotonicity(Checker& c, const std::vector<double>& grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double q0 = overlap_q_closed(ErrorRate(grid[i - 1]));
    const double q1 = overlap_q_closed(ErrorRate(grid[i]));
    c.is_true(grid[i], "Q strictly decreasing", q1 < q0, q0, q1);
    const double i0 = renyi_info(ErrorRate(grid[i - 1]));
    const double i1 = renyi_info(ErrorRate(grid[i]));
    c.is_true(grid[i], "renyi strictly increasing", i1 > i0, i0, i1);
  }
}

inline void check_cnot_unitarity(Checker& c, double tol) {
  TrialStream rng(0x636e6f74, 0);  // fixed stream; any seed works
  for (int i = 0; i < 100; ++i) {
    JointState s;
    double norm2 = 0.0;
    for (double& a : s.amp) {
      // Box-Muller gaussian, direction uniform on the 3-sphere.
      const double u1 = rng.next_unit_open();
      const double u2 = rng.next_unit_open();
      a = std::sqrt(-2.0 * std::log(u1)) *
          std::cos(2.0 * std::numbers::pi * u2);
      norm2 += a * a;
    }
    const double n = std::sqrt(norm2);
    for (double& a : s.amp) a /= n;

    const JointState t = cnot(s);
    c.near(0.0, "cnot preserves norm", 1.0, t.norm(), tol);
    const JointState u = cnot(t);
    for (int k = 0; k < 4; ++k) {
      c.exact(0.0, "cnot involution", s.amp[k], u.amp[k]);
    }
  }
}

inline void check_sessions(Checker& c) {
  // Bitwise determinism for a fixed config.
  const SessionConfig config{ErrorRate(0.25), 20000, 0x5eed2025};
  const SessionStats a = run_session(config);
  const SessionStats b = run_session(config);
  c.exact(0.25, "session determinism: sifted",
          static_cast<double>(a.sifted_count),
          static_cast<double>(b.sifted_count));
  c.exact(0.25, "session determinism: errors",
          static_cast<double>(a.bob_errors), static_cast<double>(b.bob_errors));
  c.exact(0.25, "session determinism: eve", static_cast<double>(a.eve_correct),
          static_cast<double>(b.eve_correct));

  // Aggregation order does not matter: trials are independent sub-streams.
  const SessionTables tables(config.error_rate);
  std::uint64_t sifted = 0, errors = 0, eve = 0;
  for (std::uint64_t i = config.trials; i-- > 0;) {
    const TrialOutcome t = simulate_trial(tables, config.seed, i);
    if (!t.sifted) continue;
    ++sifted;
    if (t.bob_error) ++errors;
    else if (t.eve_correct) ++eve;
  }
  c.exact(0.25, "order independence: sifted", static_cast<double>(a.sifted_count),
          static_cast<double>(sifted));
  c.exact(0.25, "order independence: errors", static_cast<double>(a.bob_errors),
          static_cast<double>(errors));
  c.exact(0.25, "order independence: eve", static_cast<double>(a.eve_correct),
          static_cast<double>(eve));

  // Statistical agreement with the closed forms, 3-sigma budget, fixed seeds.
  for (const double ev : {0.1, 0.25}) {
    const SessionConfig sc{ErrorRate(ev), 200000, 0x5eed2025};
    const SessionStats s = run_session(sc);
    const double n_sift = static_cast<double>(s.sifted_count);
    const double n_scored =
        static_cast<double>(s.sifted_count - s.bob_errors);

    const double sigma_sift =
        0.5 / std::sqrt(static_cast<double>(sc.trials));
    c.near(ev, "sifting rate ~ 1/2", 0.5,
           n_sift / static_cast<double>(sc.trials), 3.0 * sigma_sift);

    const double sigma_dist = std::sqrt(ev * (1.0 - ev) / n_sift);
    c.near(ev, "disturbance estimate", ev, *s.disturbance_estimate,
           3.0 * sigma_dist);

    const double ph = helstrom_correct_prob(sc.error_rate);
    const double sigma_acc = std::sqrt(ph * (1.0 - ph) / n_scored);
    c.near(ev, "eve accuracy attains the bound", ph, *s.eve_accuracy_estimate,
           3.0 * sigma_acc);
  }
}

}  // namespace detail

/// Run the full invariant suite of every module over the verification grid.
inline VerifyReport run_verification(const VerifyOptions& options) {
  if (!(options.tolerance > 0.0)) {
    throw std::domain_error("tolerance must be positive");
  }
  const std::vector<double> grid = verification_grid(options.grid_points);

  VerifyReport report;
  detail::Checker c(report);
  for (const double ev : grid) {
    detail::check_closed_form_at(c, ev, options.tolerance);
    detail::check_statevec_at(c, ev, options.tolerance);
  }
  detail::check_continuity_at_quarter(c, std::max(options.tolerance, 1e-9));
  detail::check_monotonicity(c, grid);
  detail::check_cnot_unitarity(c, options.tolerance);
  detail::check_sessions(c);
  return report;
}

}  // namespace eprobe
