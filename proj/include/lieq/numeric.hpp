#pragma once

#include "lieq/vfield.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string_view>
#include <vector>

namespace lieq {

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

Eigen::VectorXd rk4_step(const OdeRhs& f, double t, const Eigen::VectorXd& x, double h);

/// Fixed-step RK4 from t0 to t1; the last step is shortened to land on t1.
Eigen::VectorXd rk4_integrate(const OdeRhs& f, double t0, const Eigen::VectorXd& x0,
                              double t1, double dt);

/// Piecewise-constant control signal, m channels.  Text form:
/// semicolon-separated pieces "v1,v2,...@duration", or a bare value list for
/// a single piece covering the whole horizon.  Evaluation clamps to the last
/// piece beyond the covered span.
class PiecewiseControl {
 public:
  struct Piece {
    std::vector<double> values;
    double duration;
  };

  static PiecewiseControl constant(std::vector<double> values, double duration);
  /// Parses `spec` for `channels` channels over [0, horizon].
  static PiecewiseControl parse(std::string_view spec, int channels, double horizon);

  const std::vector<Piece>& pieces() const { return pieces_; }
  int channels() const;
  double duration() const;
  std::vector<double> value_at(double t) const;

 private:
  std::vector<Piece> pieces_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

/// Integrates dx/dt = f(x) + sum_j u_j(t) g_j(x) with RK4 of step dt,
/// aligned to the control's switching times.  Records every accepted step.
Trajectory simulate_polynomial_system(const VField& drift, const std::vector<VField>& controls,
                                      const PiecewiseControl& u, const Eigen::VectorXd& x0,
                                      double horizon, double dt);

}  // namespace lieq
