#include "lieq/numeric.hpp"

#include "lieq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

namespace lieq {

Eigen::VectorXd rk4_step(const OdeRhs& f, double t, const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd k1 = f(t, x);
  const Eigen::VectorXd k2 = f(t + h / 2, x + (h / 2) * k1);
  const Eigen::VectorXd k3 = f(t + h / 2, x + (h / 2) * k2);
  const Eigen::VectorXd k4 = f(t + h, x + h * k3);
  return x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

Eigen::VectorXd rk4_integrate(const OdeRhs& f, double t0, const Eigen::VectorXd& x0,
                              double t1, double dt) {
  if (dt <= 0) throw DomainError("step size must be positive");
  Eigen::VectorXd x = x0;
  double t = t0;
  while (t < t1 - 1e-15) {
    const double h = std::min(dt, t1 - t);
    x = rk4_step(f, t, x, h);
    t += h;
  }
  return x;
}

PiecewiseControl PiecewiseControl::constant(std::vector<double> values, double duration) {
  if (duration <= 0) throw DomainError("control duration must be positive");
  PiecewiseControl c;
  c.pieces_.push_back({std::move(values), duration});
  return c;
}

namespace {

double parse_number(std::string_view s, std::size_t base_pos) {
  // trim
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (b == e) throw ParseError("empty number in control spec", base_pos);
  double v = 0;
  const auto res = std::from_chars(s.data() + b, s.data() + e, v);
  if (res.ec != std::errc{} || res.ptr != s.data() + e)
    throw ParseError("bad number '" + std::string(s.substr(b, e - b)) + "' in control spec",
                     base_pos + b);
  return v;
}

std::vector<double> parse_values(std::string_view s, int channels, std::size_t base_pos) {
  std::vector<double> values;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    const std::string_view item = s.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start);
    values.push_back(parse_number(item, base_pos + start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(values.size()) != channels)
    throw ParseError("control spec has " + std::to_string(values.size()) + " channels, expected " +
                         std::to_string(channels),
                     base_pos);
  return values;
}

}  // namespace

PiecewiseControl PiecewiseControl::parse(std::string_view spec, int channels, double horizon) {
  if (horizon <= 0) throw DomainError("control horizon must be positive");
  PiecewiseControl c;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = spec.find(';', start);
    const std::string_view piece = spec.substr(
        start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    const std::size_t at = piece.find('@');
    if (at == std::string_view::npos) {
      if (semi != std::string_view::npos || start != 0)
        throw ParseError("piece without '@duration' is only allowed as a single constant", start);
      c.pieces_.push_back({parse_values(piece, channels, start), horizon});
      return c;
    }
    const double dur = parse_number(piece.substr(at + 1), start + at + 1);
    if (dur <= 0) throw ParseError("piece duration must be positive", start + at + 1);
    c.pieces_.push_back({parse_values(piece.substr(0, at), channels, start), dur});
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return c;
}

int PiecewiseControl::channels() const {
  return pieces_.empty() ? 0 : static_cast<int>(pieces_.front().values.size());
}

double PiecewiseControl::duration() const {
  double d = 0;
  for (const auto& p : pieces_) d += p.duration;
  return d;
}

std::vector<double> PiecewiseControl::value_at(double t) const {
  if (pieces_.empty()) throw DomainError("empty control");
  double acc = 0;
  for (const auto& p : pieces_) {
    acc += p.duration;
    if (t < acc) return p.values;
  }
  return pieces_.back().values;
}

Trajectory simulate_polynomial_system(const VField& drift, const std::vector<VField>& controls,
                                      const PiecewiseControl& u, const Eigen::VectorXd& x0,
                                      double horizon, double dt) {
  if (dt <= 0) throw DomainError("step size must be positive");
  if (u.channels() != static_cast<int>(controls.size()))
    throw DomainError("control channel count does not match the number of control fields");
  const std::size_t n = drift.dimension();
  if (static_cast<std::size_t>(x0.size()) != n)
    throw DomainError("initial state dimension mismatch");

  // switching times within [0, horizon]
  std::vector<double> breaks{0.0};
  double acc = 0;
  for (const auto& p : u.pieces()) {
    acc += p.duration;
    if (acc < horizon - 1e-15) breaks.push_back(acc);
  }
  breaks.push_back(horizon);

  Trajectory out;
  Eigen::VectorXd x = x0;
  double t = 0;
  out.times.push_back(t);
  out.states.push_back(x);
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double t_end = breaks[b + 1];
    const std::vector<double> uv = u.value_at((breaks[b] + t_end) / 2);
    const OdeRhs rhs = [&](double, const Eigen::VectorXd& s) {
      std::vector<double> p(s.data(), s.data() + s.size());
      std::vector<double> v = drift.evaluate(p);
      for (std::size_t j = 0; j < controls.size(); ++j) {
        const std::vector<double> g = controls[j].evaluate(p);
        for (std::size_t i = 0; i < n; ++i) v[i] += uv[j] * g[i];
      }
      return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n)).eval();
    };
    while (t < t_end - 1e-15) {
      const double h = std::min(dt, t_end - t);
      x = rk4_step(rhs, t, x, h);
      t += h;
      out.times.push_back(t);
      out.states.push_back(x);
    }
    t = t_end;
  }
  return out;
}

}  // namespace lieq
