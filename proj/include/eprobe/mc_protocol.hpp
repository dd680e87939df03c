#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "eprobe/statevec.hpp"

namespace eprobe {

// ---------------------------------------------------------------------------
// Deterministic random streams.
//
// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014): a 64-bit counter advanced by the golden-ratio
// increment, run through an avalanche mix. Trial i of a session with seed s
// draws from its own stream whose start state is splitmix64_mix(s + (i+1) *
// golden), so every trial's randomness is a pure function of (seed, trial
// index) and results do not depend on execution order or parallelism.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kSplitMix64Golden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial_index)
      : state_(splitmix64_mix(seed + (trial_index + 1) * kSplitMix64Golden)) {}

  std::uint64_t next_u64() {
    state_ += kSplitMix64Golden;
    return splitmix64_mix(state_);
  }

  /// Uniform draw on the open interval (0, 1), on the 53-bit grid. Zero is
  /// rejected so a zero-probability outcome can never be sampled.
  double next_unit_open() {
    for (;;) {
      const double u =
          static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Protocol sessions.
// ---------------------------------------------------------------------------

struct SessionConfig {
  ErrorRate error_rate;
  std::uint64_t trials = 1;  // number of transmitted signals, >= 1
  std::uint64_t seed = 0;
};

/// Aggregated counts and estimates of one session.
///
/// Counting conventions: sifted_count is the number of trials on which Bob's
/// basis matched Alice's; bob_errors counts sifted trials where Bob read the
/// wrong bit; eve_correct counts sifted, correctly received trials on which
/// Eve's decoded guess matched the key bit. Eve is scored on the error-free
/// sifted events only: those are the events whose probe states the optimal
/// measurement discriminates, and reception errors are disclosed during
/// reconciliation.
///
/// Estimates are absent (not NaN) whenever their denominator is zero:
///   disturbance_estimate    = bob_errors / sifted_count
///   eve_accuracy_estimate   = eve_correct / (sifted_count - bob_errors)
///   renyi_estimate_bits     = plug-in estimate from the same two counts
struct SessionStats {
  std::uint64_t sifted_count = 0;
  std::uint64_t bob_errors = 0;
  std::uint64_t eve_correct = 0;
  std::optional<double> disturbance_estimate;
  std::optional<double> eve_accuracy_estimate;
  std::optional<double> renyi_estimate_bits;
};

/// Eve's fixed decoding rule for the probe measurement: w3 -> bit 0,
/// w0 -> bit 1. The bit-0 correlated state has the larger w3 component for
/// every E > 0 (and the rule is arbitrary but fixed at E = 0).
inline Bit decode(EveOutcome w) {
  return w == EveOutcome::W3 ? Bit::Zero : Bit::One;
}

/// Plug-in Renyi (order-2) information estimate, in bits: with
/// P = correct / scored, returns log2(2 (P^2 + (1-P)^2)). `scored` is the
/// number of events Eve is scored on (sifted and correctly received);
/// scored = 0 yields an empty optional.
inline std::optional<double> renyi_estimate_from_counts(std::uint64_t correct,
                                                        std::uint64_t scored) {
  if (scored == 0) return std::nullopt;
  const double p = static_cast<double>(correct) / static_cast<double>(scored);
  return std::log2(2.0 * (p * p + (1.0 - p) * (1.0 - p)));
}

/// The eight Born-rule outcome tables of a session, indexed by
/// (alice basis, alice bit, bob basis). Built once per session.
struct SessionTables {
  explicit SessionTables(ErrorRate e) {
    for (Basis ab : {Basis::B0, Basis::B1}) {
      for (Bit bit : {Bit::Zero, Bit::One}) {
        const JointState joint = entangle(e, ab, bit);
        for (Basis bb : {Basis::B0, Basis::B1}) {
          dist[idx(ab)][idx(bit)][idx(bb)] =
              joint_outcome_distribution(joint, bb);
        }
      }
    }
  }

  const OutcomeDistribution& at(Basis ab, Bit bit, Basis bb) const {
    return dist[idx(ab)][idx(bit)][idx(bb)];
  }

 private:
  static int idx(Basis b) { return static_cast<int>(b); }
  static int idx(Bit b) { return static_cast<int>(b); }
  OutcomeDistribution dist[2][2][2];
};

struct TrialOutcome {
  bool sifted = false;
  bool bob_error = false;    // meaningful only when sifted
  bool eve_correct = false;  // meaningful only when sifted && !bob_error
};

namespace detail {

/// Sample one of the four (bob_bit, eve outcome) cells from u in (0, 1):
/// the first cell whose cumulative probability exceeds u, in the fixed order
/// (0,W0), (0,W3), (1,W0), (1,W3). Zero-probability cells are unreachable.
inline int sample_outcome(const OutcomeDistribution& d, double u) {
  double cum = 0.0;
  int last_positive = 0;
  for (int k = 0; k < 4; ++k) {
    const double pk = d.p[k >> 1][k & 1];
    if (pk > 0.0) last_positive = k;
    cum += pk;
    if (u < cum) return k;
  }
  return last_positive;  // u beyond the (rounded) total
}

}  // namespace detail

/// One protocol trial, fully determined by (seed, trial_index): Alice draws
/// a uniform basis and bit, Bob draws an independent uniform basis, the
/// joint (bob_bit, eve outcome) is sampled from the Born-rule table, and the
/// trial is kept only if the bases matched.
inline TrialOutcome simulate_trial(const SessionTables& tables,
                                   std::uint64_t seed,
                                   std::uint64_t trial_index) {
  TrialStream rng(seed, trial_index);
  const std::uint64_t bits = rng.next_u64();
  const auto alice_basis = static_cast<Basis>(bits & 1);
  const auto alice_bit = static_cast<Bit>((bits >> 1) & 1);
  const auto bob_basis = static_cast<Basis>((bits >> 2) & 1);

  TrialOutcome out;
  out.sifted = bob_basis == alice_basis;
  if (!out.sifted) return out;  // discarded in sifting; nothing is scored

  const int k = detail::sample_outcome(
      tables.at(alice_basis, alice_bit, bob_basis), rng.next_unit_open());
  const auto bob_bit = static_cast<Bit>(k >> 1);
  const auto eve_w = static_cast<EveOutcome>(k & 1);

  out.bob_error = bob_bit != alice_bit;
  out.eve_correct = !out.bob_error && decode(eve_w) == alice_bit;
  return out;
}

inline SessionStats run_session(const SessionConfig& config) {
  if (config.trials == 0) {
    throw std::invalid_argument("session needs at least one trial");
  }
  const SessionTables tables(config.error_rate);

  SessionStats stats;
  for (std::uint64_t i = 0; i < config.trials; ++i) {
    const TrialOutcome t = simulate_trial(tables, config.seed, i);
    if (!t.sifted) continue;
    ++stats.sifted_count;
    if (t.bob_error) {
      ++stats.bob_errors;
    } else if (t.eve_correct) {
      ++stats.eve_correct;
    }
  }

  if (stats.sifted_count > 0) {
    stats.disturbance_estimate = static_cast<double>(stats.bob_errors) /
                                 static_cast<double>(stats.sifted_count);
  }
  const std::uint64_t scored = stats.sifted_count - stats.bob_errors;
  if (scored > 0) {
    stats.eve_accuracy_estimate =
        static_cast<double>(stats.eve_correct) / static_cast<double>(scored);
  }
  stats.renyi_estimate_bits =
      renyi_estimate_from_counts(stats.eve_correct, scored);
  return stats;
}

}  // namespace eprobe
