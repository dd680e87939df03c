#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "eprobe/closed_form.hpp"

namespace eprobe {

/// The two conjugate BB84 polarization bases.
enum class Basis : int { B0 = 0, B1 = 1 };

/// A key bit.
enum class Bit : int { Zero = 0, One = 1 };

/// Result of the probe measurement in the {|w0>, |w3>} basis.
enum class EveOutcome : int { W0 = 0, W3 = 1 };

inline Bit other(Bit b) { return b == Bit::Zero ? Bit::One : Bit::Zero; }

/// Real amplitudes of a signal qubit over the CNOT control basis {|e0>, |e1>}.
struct SignalVector {
  double e0 = 0.0;
  double e1 = 0.0;

  double norm_squared() const { return e0 * e0 + e1 * e1; }
};

inline double inner(const SignalVector& a, const SignalVector& b) {
  return a.e0 * b.e0 + a.e1 * b.e1;
}

/// Angle of each BB84 signal state from |e0>: the four states sit at
/// +-pi/8 and their orthogonal complements, symmetric about the CNOT
/// control axes. This geometry is what makes the induced disturbance equal
/// E for every signal state (error probability 2E sin^2 2theta = E at
/// theta = +-pi/8) and makes the conditional probe states come out as the
/// alpha vectors of the closed-form layer.
inline double signal_angle(Basis basis, Bit bit) {
  const double base = basis == Basis::B0 ? std::numbers::pi / 8.0
                                         : -std::numbers::pi / 8.0;
  return bit == Bit::Zero ? base : base + std::numbers::pi / 2.0;
}

inline SignalVector bb84_state(Basis basis, Bit bit) {
  const double t = signal_angle(basis, bit);
  return {std::cos(t), std::sin(t)};
}

/// Real four-component amplitude vector of signal (x) probe, over the frozen
/// ordered product basis (|e0 w0>, |e0 w3>, |e1 w0>, |e1 w3>).
struct JointState {
  std::array<double, 4> amp{};

  double norm_squared() const {
    double s = 0.0;
    for (double a : amp) s += a * a;
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }
};

inline JointState tensor(const SignalVector& signal, const ProbeVector& probe) {
  return {{signal.e0 * probe.w0, signal.e0 * probe.w3, signal.e1 * probe.w0,
           signal.e1 * probe.w3}};
}

/// CNOT with the signal as control and the probe as target: exchanges the
/// |e1 w0> and |e1 w3> amplitudes and leaves the |e0 .> pair untouched.
/// Involutory and norm-preserving.
inline JointState cnot(JointState state) {
  std::swap(state.amp[2], state.amp[3]);
  return state;
}

/// The attack circuit: prepare bb84_state(basis, bit) (x) a2(E), apply one
/// CNOT. The returned state is unit-norm.
inline JointState entangle(ErrorRate e, Basis basis, Bit bit) {
  const auto [a1, a2] = probe_basis_states(e);
  (void)a1;
  return cnot(tensor(bb84_state(basis, bit), a2));
}

/// Probe-space projection <bob_state| applied to the joint state,
/// deliberately unnormalized: its squared norm is the probability that Bob
/// observes bob_bit when measuring in bob_basis.
inline ProbeVector conditional_probe(const JointState& state, Basis bob_basis,
                                     Bit bob_bit) {
  const SignalVector b = bb84_state(bob_basis, bob_bit);
  return {b.e0 * state.amp[0] + b.e1 * state.amp[2],
          b.e0 * state.amp[1] + b.e1 * state.amp[3]};
}

/// Born-rule probabilities of the commuting Bob/Eve measurements:
/// entry (bob_bit, w) is the squared amplitude of the projection onto
/// bob_state (x) |w>. Entries sum to 1 for a unit-norm input.
struct OutcomeDistribution {
  // Indexed [bob_bit][eve outcome].
  std::array<std::array<double, 2>, 2> p{};

  double& operator()(Bit b, EveOutcome w) {
    return p[static_cast<int>(b)][static_cast<int>(w)];
  }
  double operator()(Bit b, EveOutcome w) const {
    return p[static_cast<int>(b)][static_cast<int>(w)];
  }

  double bob_marginal(Bit b) const {
    return (*this)(b, EveOutcome::W0) + (*this)(b, EveOutcome::W3);
  }
  double total() const { return bob_marginal(Bit::Zero) + bob_marginal(Bit::One); }
};

inline OutcomeDistribution joint_outcome_distribution(const JointState& state,
                                                      Basis bob_basis) {
  OutcomeDistribution d;
  for (Bit b : {Bit::Zero, Bit::One}) {
    const ProbeVector c = conditional_probe(state, bob_basis, b);
    d(b, EveOutcome::W0) = c.w0 * c.w0;
    d(b, EveOutcome::W3) = c.w3 * c.w3;
  }
  return d;
}

/// Disturbance the circuit induces, averaged over the four signal states
/// with Bob measuring in the matching basis. Equals E (each signal state
/// individually contributes exactly E; see the test suite).
inline double induced_error_rate(ErrorRate e) {
  double sum = 0.0;
  for (Basis basis : {Basis::B0, Basis::B1}) {
    for (Bit bit : {Bit::Zero, Bit::One}) {
      const OutcomeDistribution d =
          joint_outcome_distribution(entangle(e, basis, bit), basis);
      sum += d.bob_marginal(other(bit));
    }
  }
  return sum / 4.0;
}

}  // namespace eprobe
