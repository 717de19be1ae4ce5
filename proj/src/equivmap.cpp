#include "lieq/equivmap.hpp"

#include "lieq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lieq {

EquivalenceProbe::EquivalenceProbe(std::vector<double> base_point,
                                   std::vector<VField> system_basis, GroupModel group)
    : p0_(std::move(base_point)), basis_(std::move(system_basis)), group_(std::move(group)) {
  if (basis_.empty()) throw DomainError("probe needs a nonempty system basis");
  if (static_cast<int>(basis_.size()) != group_.dim())
    throw DomainError("system basis size does not match the group algebra dimension");
  if (p0_.size() != basis_.front().dimension())
    throw DomainError("base point dimension mismatch");

  const StructureTensor sys = structure_constants(LieBasis(basis_));
  const std::vector<Eigen::MatrixXd> grp = group_.structure_constants();
  const int d = group_.dim();
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        mismatch_ = std::max(mismatch_,
                             std::abs(to_double(sys.at(k, i, j)) -
                                      grp[static_cast<std::size_t>(k)](i, j)));
  if (mismatch_ > 1e-10)
    throw DomainError("system and group structure constants disagree beyond 1e-10");
}

std::vector<double> flow_word_state(const EquivalenceProbe& p, const FlowWord& w, double dt) {
  const std::size_t n = p.base_point().size();
  Eigen::VectorXd x =
      Eigen::Map<const Eigen::VectorXd>(p.base_point().data(), static_cast<Eigen::Index>(n));
  for (const auto& letter : w) {
    if (letter.generator < 0 || letter.generator >= static_cast<int>(p.system_basis().size()))
      throw DomainError("flow word generator index out of range");
    const VField& g = p.system_basis()[static_cast<std::size_t>(letter.generator)];
    const double sgn = letter.duration < 0 ? -1.0 : 1.0;
    const OdeRhs rhs = [&](double, const Eigen::VectorXd& s) {
      std::vector<double> q(s.data(), s.data() + s.size());
      const std::vector<double> v = g.evaluate(q);
      return (sgn *
              Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n)))
          .eval();
    };
    x = rk4_integrate(rhs, 0.0, x, std::abs(letter.duration), dt);
    if (!x.allFinite()) throw DomainError("flow word integration blew up");
  }
  return std::vector<double>(x.data(), x.data() + x.size());
}

GroupElement flow_word_group(const EquivalenceProbe& p, const FlowWord& w) {
  Eigen::MatrixXd m = p.group().identity();
  for (const auto& letter : w) {
    if (letter.generator < 0 || letter.generator >= p.group().dim())
      throw DomainError("flow word generator index out of range");
    const Eigen::MatrixXd& a =
        p.group().algebra_basis()[static_cast<std::size_t>(letter.generator)];
    m = expm(letter.duration * a) * m;  // later letters act on the left
  }
  return GroupElement(m, p.group());
}

std::optional<double> well_definedness_residual(const EquivalenceProbe& p, const FlowWord& w1,
                                                const FlowWord& w2) {
  const GroupElement g1 = flow_word_group(p, w1);
  const GroupElement g2 = flow_word_group(p, w2);
  if ((g1.matrix() - g2.matrix()).norm() > 1e-8) return std::nullopt;
  const std::vector<double> s1 = flow_word_state(p, w1);
  const std::vector<double> s2 = flow_word_state(p, w2);
  double acc = 0;
  for (std::size_t i = 0; i < s1.size(); ++i) acc += (s1[i] - s2[i]) * (s1[i] - s2[i]);
  return std::sqrt(acc);
}

double pushforward_residual(const EquivalenceProbe& p, const FlowWord& w, int k, double h) {
  if (k < 0 || k >= static_cast<int>(p.system_basis().size()))
    throw DomainError("generator index out of range");
  FlowWord fwd = w, bwd = w;
  fwd.push_back({k, h});
  bwd.push_back({k, -h});
  const std::vector<double> plus = flow_word_state(p, fwd);
  const std::vector<double> minus = flow_word_state(p, bwd);
  const std::vector<double> at = flow_word_state(p, w);
  const std::vector<double> field = p.system_basis()[static_cast<std::size_t>(k)].evaluate(at);
  double acc = 0;
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double diff = (plus[i] - minus[i]) / (2 * h) - field[i];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

std::string EquivalenceDemoReport::table_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "t\tsigma_x\tsigma_y\tmapped_x\tmapped_y\tdeviation\n";
  for (const auto& r : rows)
    os << r.t << "\t" << r.sigma_x << "\t" << r.sigma_y << "\t" << r.mapped_x << "\t"
       << r.mapped_y << "\t" << r.deviation << "\n";
  os << "max_deviation = " << max_deviation << "\n";
  os << "tolerance = " << tol << "\n";
  os << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

EquivalenceDemoReport heisenberg_equivalence_demo(const VField& drift,
                                                  const std::vector<VField>& controls,
                                                  const PiecewiseControl& u, double horizon,
                                                  double dt, double tol) {
  if (horizon <= 0) throw DomainError("horizon must be positive");
  if (controls.size() != 1) throw DomainError("the demo takes a single-input system");
  const Eigen::Vector2d x0(0, 0);
  const Trajectory tr = simulate_polynomial_system(drift, controls, u, x0, horizon, dt);

  EquivalenceDemoReport rep;
  rep.tol = tol;
  const std::size_t stride = std::max<std::size_t>(1, tr.times.size() / 10);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    const Eigen::Vector3d c = heisenberg_closed_form(u, {0, 0, 0}, t);
    // group-side coordinates (x', y', z); the equivalence map is
    // (x', z) -> (2z, x')
    const double mx = 2 * c[2];
    const double my = c[0];
    const double dev = std::hypot(mx - tr.states[k][0], my - tr.states[k][1]);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (k % stride == 0 || k + 1 == tr.times.size())
      rep.rows.push_back({t, tr.states[k][0], tr.states[k][1], mx, my, dev});
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

EquivalenceDemoReport heisenberg_equivalence_demo(const PiecewiseControl& u, double horizon,
                                                  double dt, double tol) {
  const std::vector<std::string> vars{"x", "y"};
  const VField drift(vars, {parse_polynomial("y^2", vars), parse_polynomial("0", vars)});
  const VField g(vars, {parse_polynomial("0", vars), parse_polynomial("1", vars)});
  return heisenberg_equivalence_demo(drift, {g}, u, horizon, dt, tol);
}

}  // namespace lieq
