#pragma once

#include "lieq/group.hpp"
#include "lieq/liealg.hpp"
#include "lieq/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lieq {

struct FlowLetter {
  int generator;  // index into the probe's system basis / group algebra
  double duration;
};
using FlowWord = std::vector<FlowLetter>;

/// Pairs a bracket-closed basis of polynomial vector fields with a catalog
/// group whose algebra has the same structure constants (matched within
/// 1e-10 at construction), plus a base point.  Word order convention:
/// the leftmost letter acts first on states, and the group product puts
/// later letters on the left: [(i,s),(j,t)] -> exp(t A_j) exp(s A_i).
class EquivalenceProbe {
 public:
  EquivalenceProbe(std::vector<double> base_point, std::vector<VField> system_basis,
                   GroupModel group);

  const std::vector<double>& base_point() const { return p0_; }
  const std::vector<VField>& system_basis() const { return basis_; }
  const GroupModel& group() const { return group_; }
  /// Largest structure-constant mismatch found at construction.
  double structure_mismatch() const { return mismatch_; }

 private:
  std::vector<double> p0_;
  std::vector<VField> basis_;
  GroupModel group_;
  double mismatch_ = 0;
};

/// Composes the numerically integrated flows of the basis fields from the
/// base point (RK4, step dt).  Negative durations flow backwards.
std::vector<double> flow_word_state(const EquivalenceProbe& p, const FlowWord& w,
                                    double dt = 1e-3);

/// Product of matrix exponentials in the matching order convention.
GroupElement flow_word_group(const EquivalenceProbe& p, const FlowWord& w);

/// When both words realize the same group element (Frobenius distance
/// <= 1e-8): distance between their endpoint states.  Otherwise nullopt
/// ("not comparable").
std::optional<double> well_definedness_residual(const EquivalenceProbe& p, const FlowWord& w1,
                                                const FlowWord& w2);

/// Central-difference directional derivative of the endpoint along generator
/// k, compared against the field g_k at the endpoint; returns the gap norm.
double pushforward_residual(const EquivalenceProbe& p, const FlowWord& w, int k,
                            double h = 1e-5);

struct EquivalenceDemoRow {
  double t;
  double sigma_x, sigma_y;    // state of the polynomial system
  double mapped_x, mapped_y;  // (2z, x) from the group-side trajectory
  double deviation;
};

struct EquivalenceDemoReport {
  double max_deviation = 0;
  double tol = 0;
  bool pass = false;
  std::vector<EquivalenceDemoRow> rows;  // coarse grid for display
  std::string table_text() const;
};

/// End-to-end demonstration: simulates dx = y^2 + 0*u, dy = u from (0, 0)
/// and the Heisenberg system dx' = u, dz = x'^2/2 (closed form) from the
/// identity, then compares through the map (x', z) -> (2z, x').
EquivalenceDemoReport heisenberg_equivalence_demo(const PiecewiseControl& u, double horizon,
                                                  double dt = 1e-3, double tol = 1e-6);

/// Same comparison with caller-supplied system fields (single control).
EquivalenceDemoReport heisenberg_equivalence_demo(const VField& drift,
                                                  const std::vector<VField>& controls,
                                                  const PiecewiseControl& u, double horizon,
                                                  double dt = 1e-3, double tol = 1e-6);

}  // namespace lieq
