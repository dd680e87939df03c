#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace eprobe {

/// Disturbance probability the probe induces in the sifted key.
///
/// The attack is defined on 0 <= E <= 1/3: at E = 0 the probe decouples and
/// learns nothing, at E = 1/3 the correlated probe states become orthogonal
/// and the key leaks completely. Construction rejects values outside that
/// interval (including NaN).
class ErrorRate {
 public:
  static constexpr double kMax = 1.0 / 3.0;

  explicit ErrorRate(double value) : value_(value) {
    if (!(value >= 0.0 && value <= kMax)) {
      throw std::domain_error("error rate must lie in [0, 1/3]");
    }
  }

  double value() const { return value_; }

 private:
  double value_;
};

/// Three-valued sign: 1 for x > 0, 0 for x = 0, -1 for x < 0.
/// The zero case matters: it selects the branch point of the probe angle at
/// E = 1/4, where the factor it multiplies vanishes as well.
inline int sgn(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

/// Auxiliary geometry parameter eta = sqrt(8 E (1 - 2E)), in [0, 1].
/// Peaks at exactly 1 for E = 1/4 and controls how far the probe basis
/// combinations lean toward |w0> / |w3>.
inline double eta(ErrorRate e) {
  const double v = e.value();
  return std::sqrt(8.0 * v * (1.0 - 2.0 * v));
}

/// Cosine/sine pair of the probe angle mu.
/// cos_mu >= 0 always; sin_mu carries the sign of (1 - 4E), so the pair is
/// continuous across E = 1/4 even though the sign factor flips there.
struct ProbeAngle {
  double cos_mu;
  double sin_mu;
};

namespace detail {
// eta <= 1 analytically; the max() guards against fp overshoot at the cusp.
inline double half_root_plus(double h) { return std::sqrt(0.5 * (1.0 + h)); }
inline double half_root_minus(double h) {
  return std::sqrt(0.5 * std::max(0.0, 1.0 - h));
}
}  // namespace detail

inline ProbeAngle mu_components(ErrorRate e) {
  const double h = eta(e);
  const int s = sgn(1.0 - 4.0 * e.value());
  return {detail::half_root_plus(h), s * detail::half_root_minus(h)};
}

/// Real two-component vector over the orthonormal probe basis {|w0>, |w3>}.
struct ProbeVector {
  double w0 = 0.0;
  double w3 = 0.0;

  double norm_squared() const { return w0 * w0 + w3 * w3; }
  double norm() const { return std::sqrt(norm_squared()); }

  /// Exchange the two components (the w0 <-> w3 mirror).
  ProbeVector swapped() const { return {w3, w0}; }

  /// Unit-norm copy. Normalizing the zero vector is a domain error, not a
  /// NaN vector; the error-correlated state hits this at E = 0.
  ProbeVector normalized() const {
    const double n = norm();
    if (n == 0.0) {
      throw std::domain_error("cannot normalize a zero probe vector");
    }
    return {w0 / n, w3 / n};
  }
};

inline double inner(const ProbeVector& a, const ProbeVector& b) {
  return a.w0 * b.w0 + a.w3 * b.w3;
}

/// The five probe states for a given error rate.
///
/// a1 and a2 are the unit-norm basis combinations (a2 is the probe's initial
/// state in the circuit picture). alpha_plus / alpha_minus are the probe
/// states correlated with sifted bits 1 / 0 after correct reception, and
/// alpha is the state correlated with reception errors. The alpha vectors
/// are stored with their exact unnormalized coefficients:
///   |alpha_plus|^2 = |alpha_minus|^2 = 16 (1 - E),   |alpha|^2 = 16 E,
/// so squared norms double as (scaled) event probabilities.
struct ProbeStateSet {
  ProbeVector a1;
  ProbeVector a2;
  ProbeVector alpha_plus;
  ProbeVector alpha_minus;
  ProbeVector alpha;
  double eta = 0.0;
};

/// (a1, a2): unit-norm probe basis combinations; a2 is the component swap
/// of a1.
inline std::pair<ProbeVector, ProbeVector> probe_basis_states(ErrorRate e) {
  const ProbeAngle mu = mu_components(e);
  const ProbeVector a1{mu.cos_mu, mu.sin_mu};
  return {a1, a1.swapped()};
}

inline ProbeStateSet correlated_states(ErrorRate e) {
  const double h = eta(e);
  const int s = sgn(1.0 - 4.0 * e.value());
  const double p = std::sqrt(1.0 + h);
  const double m = std::sqrt(std::max(0.0, 1.0 - h));
  const double rp = std::numbers::sqrt2 + 1.0;
  const double rm = std::numbers::sqrt2 - 1.0;

  ProbeStateSet st;
  const auto [a1, a2] = probe_basis_states(e);
  st.a1 = a1;
  st.a2 = a2;
  // Identical subexpressions below keep the w0<->w3 swap symmetry between
  // alpha_plus and alpha_minus bitwise exact.
  st.alpha_plus = {rp * p + s * rm * m, s * rp * m + rm * p};
  st.alpha_minus = {rm * p + s * rp * m, s * rm * m + rp * p};
  st.alpha = {s * m - p, p - s * m};
  st.eta = h;
  return st;
}

/// Overlap of the normalized correlated states, computed from the vectors:
/// <alpha_plus|alpha_minus> / (|alpha_plus| |alpha_minus|).
inline double overlap_q_inner(ErrorRate e) {
  const ProbeStateSet st = correlated_states(e);
  return inner(st.alpha_plus, st.alpha_minus) /
         (st.alpha_plus.norm() * st.alpha_minus.norm());
}

/// The same overlap in reduced closed form: Q = (1 - 3E) / (1 - E).
inline double overlap_q_closed(ErrorRate e) {
  const double v = e.value();
  return (1.0 - 3.0 * v) / (1.0 - v);
}

/// Maximum Renyi (order-2) information gain of the probe, in bits:
/// log2(2 - Q^2). Rises from 0 at E = 0 to a full bit at E = 1/3.
inline double renyi_info(ErrorRate e) {
  const double q = overlap_q_closed(e);
  return std::log2(2.0 - q * q);
}

/// Probability that the minimum-error projective measurement identifies the
/// sifted bit from the probe: (1 + sqrt(1 - Q^2)) / 2.
inline double helstrom_correct_prob(ErrorRate e) {
  const double q = overlap_q_closed(e);
  return 0.5 * (1.0 + std::sqrt(1.0 - q * q));
}

}  // namespace eprobe
