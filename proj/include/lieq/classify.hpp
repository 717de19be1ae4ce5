#pragma once

#include "lieq/liealg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lieq {

/// Control-affine system dx/dt = f(x) + sum_j u_j g_j(x).
struct SystemSpec {
  std::vector<std::string> vars;
  VField drift;
  std::vector<VField> controls;
  std::optional<std::vector<Rational>> candidate_equilibrium;
  /// index 0 = drift, k = control k; true lifts an Unknown completeness
  /// verdict to asserted-complete.
  std::vector<bool> assert_complete;

  SystemSpec(std::vector<std::string> vars_, VField drift_, std::vector<VField> controls_);

  int dimension() const { return static_cast<int>(vars.size()); }
};

enum class CompletenessStatus { Complete, LikelyIncomplete, Unknown };

struct Completeness {
  CompletenessStatus status = CompletenessStatus::Unknown;
  std::string detail;
  /// initial point whose trajectory blows up before the horizon
  std::optional<std::vector<double>> witness;
};

/// Sound sufficient conditions (affine growth, strict triangular dependency
/// order) decide Complete; a seeded escape-time probe decides
/// LikelyIncomplete; anything else is Unknown.
Completeness completeness_check(const VField& x, double horizon = 10.0, int samples = 8,
                                std::uint64_t seed = 0);

/// Verifies `candidate` exactly when given; otherwise solves exactly when
/// every nonzero component is univariate of degree <= 2, else runs seeded
/// damped Newton and certifies a rational rounding.  nullopt is a
/// non-verdict: a zero may still exist.
std::optional<std::vector<Rational>> find_drift_zero(
    const VField& f, const std::optional<std::vector<Rational>>& candidate, int trials = 20,
    std::uint64_t seed = 0);

enum class Verdict {
  CaseI,
  CaseII,
  LinearOnGroupCandidate,
  Inconclusive,
};

/// "Case_i_LinearOnHomogeneousSpace" etc.; Inconclusive carries its reason
/// as "Inconclusive(reason)".
std::string verdict_string(Verdict v, const std::string& reason = "");

struct ClassifyOptions {
  int max_dim = 64;
  int max_depth = 10;
  int samples = 100;
  std::uint64_t seed = 0;
  double horizon = 10.0;
  int completeness_samples = 8;
  int newton_trials = 20;
};

struct ClassificationReport {
  std::optional<LieBasis> l;   // system algebra L(Gamma)
  std::optional<LieBasis> l0;  // ideal L0
  std::optional<GenericRank> rank_l;
  std::optional<GenericRank> rank_l0;
  std::optional<DerivationMatrix> derivation;  // -ad(f) on L0, when defined
  std::optional<AlgebraId> catalog;            // identify_algebra of L0
  std::vector<Completeness> completeness;      // drift first, then controls
  std::optional<std::vector<Rational>> drift_zero;
  bool drift_zero_verified = false;
  bool dimension_exceeded = false;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;  // set for Inconclusive
  std::vector<std::string> notes;
};

/// The full decision procedure: closure, ideal, ranks, completeness
/// screening, drift-zero search and the final verdict.
ClassificationReport classify_system(const SystemSpec& s, const ClassifyOptions& opts = {});

}  // namespace lieq
