#include "lieq/classify.hpp"

#include "lieq/errors.hpp"
#include "lieq/numeric.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace lieq {

SystemSpec::SystemSpec(std::vector<std::string> vars_, VField drift_,
                       std::vector<VField> controls_)
    : vars(std::move(vars_)), drift(std::move(drift_)), controls(std::move(controls_)) {
  if (controls.empty()) throw DomainError("a system needs at least one control field");
  if (drift.vars() != vars) throw DomainError("drift variable list mismatch");
  for (const auto& g : controls)
    if (g.vars() != vars) throw DomainError("control variable list mismatch");
  assert_complete.assign(controls.size() + 1, false);
}

namespace {

bool triangular_order_exists(const VField& x) {
  const std::size_t n = x.dimension();
  std::vector<bool> resolved(n, false);
  for (;;) {
    bool progress = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (resolved[v]) continue;
      const std::set<std::size_t> dep = x.component(v).support();
      const bool ok = std::all_of(dep.begin(), dep.end(),
                                  [&](std::size_t w) { return resolved[w]; });
      if (ok) {
        resolved[v] = true;
        progress = true;
      }
    }
    if (!progress) break;
  }
  return std::all_of(resolved.begin(), resolved.end(), [](bool b) { return b; });
}

// Escape-time probe from one initial point: steps are capped so the state
// grows at most ~50% per step; a trajectory that still reaches 1e12 (or
// leaves the reals) before the horizon is a blow-up.
bool blows_up(const VField& x, const std::vector<double>& p0, double horizon, double& t_escape) {
  const double kNormBound = 1e12;
  std::vector<double> p = p0;
  const std::size_t n = p.size();
  const OdeRhs rhs = [&](double, const Eigen::VectorXd& s) {
    std::vector<double> q(s.data(), s.data() + s.size());
    const std::vector<double> v = x.evaluate(q);
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n)).eval();
  };
  Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(n));
  const double h0 = horizon / 2000.0;
  double t = 0;
  for (long iter = 0; iter < 400000 && t < horizon; ++iter) {
    const double speed = rhs(t, s).norm();
    double h = h0;
    if (speed > 0) h = std::min(h, 0.5 * (s.norm() + 1.0) / speed);
    h = std::min(h, horizon - t);
    s = rk4_step(rhs, t, s, h);
    t += h;
    if (!s.allFinite() || s.norm() > kNormBound) {
      t_escape = t;
      return true;
    }
  }
  return false;
}

}  // namespace

Completeness completeness_check(const VField& x, double horizon, int samples,
                                std::uint64_t seed) {
  Completeness out;
  if (horizon <= 0) throw DomainError("completeness horizon must be positive");
  if (x.degree() <= 1) {
    out.status = CompletenessStatus::Complete;
    out.detail = "all components have degree <= 1";
    return out;
  }
  if (triangular_order_exists(x)) {
    out.status = CompletenessStatus::Complete;
    out.detail = "strict triangular dependency order; flow is polynomial in t";
    return out;
  }

  const std::size_t n = x.dimension();
  std::vector<std::vector<double>> points;
  points.emplace_back(n, 1.0);
  points.emplace_back(n, -1.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int k = 0; k < samples; ++k) {
    std::vector<double> p(n);
    for (auto& c : p) c = dist(rng);
    points.push_back(std::move(p));
  }
  for (const auto& p : points) {
    double t_escape = 0;
    if (blows_up(x, p, horizon, t_escape)) {
      out.status = CompletenessStatus::LikelyIncomplete;
      std::ostringstream os;
      os << "trajectory escapes before t = " << t_escape;
      out.detail = os.str();
      out.witness = p;
      return out;
    }
  }
  out.status = CompletenessStatus::Unknown;
  out.detail = "no sufficient condition applies and no blow-up was observed";
  return out;
}

namespace {

bool verifies_zero(const VField& f, const std::vector<Rational>& p) {
  const std::vector<Rational> v = f.evaluate(p);
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(num);
  const BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn) / Rational(sd);
}

// Rational roots of a nonzero univariate polynomial of degree <= 2 in
// variable `var`; nullopt when the component is not of that shape.
std::optional<std::vector<Rational>> univariate_roots(const Poly& p, std::size_t var) {
  Rational a(0), b(0), c(0);
  for (const auto& [m, coeff] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0 && i != var) return std::nullopt;
    if (m[var] == 0) c = coeff;
    else if (m[var] == 1) b = coeff;
    else if (m[var] == 2) a = coeff;
    else return std::nullopt;
  }
  std::vector<Rational> roots;
  if (a == 0) {
    if (b == 0) return roots;  // nonzero constant: no root
    roots.push_back(-c / b);
    return roots;
  }
  const auto s = rational_sqrt(b * b - a * c * 4);
  if (!s) return roots;
  roots.push_back((-b + *s) / (a * 2));
  if (*s != 0) roots.push_back((-b - *s) / (a * 2));
  return roots;
}

std::optional<std::vector<Rational>> exact_univariate_zero(const VField& f) {
  const std::size_t n = f.dimension();
  // per-variable admissible values; nullopt = unconstrained
  std::vector<std::optional<std::vector<Rational>>> allowed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly& p = f.component(i);
    if (p.is_zero()) continue;
    const std::set<std::size_t> sup = p.support();
    if (sup.size() > 1) return std::nullopt;  // not univariate: give up on this path
    const std::size_t var = sup.empty() ? 0 : *sup.begin();
    const auto roots = univariate_roots(p, var);
    if (!roots) return std::nullopt;
    if (roots->empty()) return std::nullopt;  // no rational root: unsolvable here
    if (!allowed[var]) {
      allowed[var] = roots;
    } else {
      std::vector<Rational> inter;
      for (const auto& r : *allowed[var])
        if (std::find(roots->begin(), roots->end(), r) != roots->end()) inter.push_back(r);
      if (inter.empty()) return std::nullopt;
      allowed[var] = inter;
    }
  }
  std::vector<Rational> point(n, Rational(0));
  for (std::size_t v = 0; v < n; ++v)
    if (allowed[v]) point[v] = allowed[v]->front();
  if (verifies_zero(f, point)) return point;
  return std::nullopt;
}

std::optional<std::vector<Rational>> newton_zero(const VField& f, int trials,
                                                 std::uint64_t seed) {
  const std::size_t n = f.dimension();
  std::vector<std::vector<Poly>> jac(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(f.component(i).derivative(j));

  auto residual = [&](const Eigen::VectorXd& x) {
    std::vector<double> p(x.data(), x.data() + x.size());
    const std::vector<double> v = f.evaluate(p);
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n)).eval();
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
    Eigen::VectorXd r = residual(x);
    for (int it = 0; it < 100 && r.norm() > 1e-13; ++it) {
      Eigen::MatrixXd j(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      std::vector<double> p(x.data(), x.data() + x.size());
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          j(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = jac[a][b].evaluate(p);
      const Eigen::VectorXd step = j.colPivHouseholderQr().solve(r);
      double lambda = 1.0;
      Eigen::VectorXd next = x - lambda * step;
      while (lambda > 1e-6 && residual(next).norm() >= r.norm()) {
        lambda /= 2;
        next = x - lambda * step;
      }
      x = next;
      r = residual(x);
    }
    if (r.norm() > 1e-10) continue;
    // lift to exact: try small denominators first, then the general bound
    for (long max_den : {100L, 1000000L}) {
      std::vector<Rational> p;
      p.reserve(n);
      for (Eigen::Index i = 0; i < x.size(); ++i)
        p.push_back(rational_from_double(x[i], max_den));
      if (verifies_zero(f, p)) return p;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Rational>> find_drift_zero(
    const VField& f, const std::optional<std::vector<Rational>>& candidate, int trials,
    std::uint64_t seed) {
  if (candidate) {
    if (candidate->size() != f.dimension())
      throw DomainError("candidate equilibrium dimension mismatch");
    if (verifies_zero(f, *candidate)) return candidate;
  }
  if (f.is_zero()) return std::vector<Rational>(f.dimension(), Rational(0));
  if (auto p = exact_univariate_zero(f)) return p;
  return newton_zero(f, trials, seed);
}

std::string verdict_string(Verdict v, const std::string& reason) {
  switch (v) {
    case Verdict::CaseI: return "Case_i_LinearOnHomogeneousSpace";
    case Verdict::CaseII: return "Case_ii_InvariantOnHomogeneousSpace";
    case Verdict::LinearOnGroupCandidate: return "LinearOnGroupCandidate";
    case Verdict::Inconclusive: return "Inconclusive(" + reason + ")";
  }
  return "Inconclusive(" + reason + ")";
}

ClassificationReport classify_system(const SystemSpec& s, const ClassifyOptions& opts) {
  ClassificationReport rep;
  const int n = s.dimension();

  rep.completeness.reserve(s.controls.size() + 1);
  for (std::size_t k = 0; k <= s.controls.size(); ++k) {
    const VField& x = (k == 0) ? s.drift : s.controls[k - 1];
    Completeness c = completeness_check(x, opts.horizon, opts.completeness_samples,
                                        opts.seed + 17 * k);
    if (s.assert_complete[k] && c.status == CompletenessStatus::Unknown) {
      c.status = CompletenessStatus::Complete;
      c.detail = "asserted complete by the caller";
    }
    rep.completeness.push_back(std::move(c));
  }

  try {
    std::vector<VField> gens;
    gens.push_back(s.drift);
    for (const auto& g : s.controls) gens.push_back(g);
    rep.l = lie_closure(gens, opts.max_dim, opts.max_depth);
    rep.l0 = ideal_closure(*rep.l, s.drift, std::span<const VField>(gens).subspan(1),
                           opts.max_dim);
  } catch (const DimensionExceededError& e) {
    rep.dimension_exceeded = true;
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "dimension-exceeded";
    rep.notes.emplace_back(e.what());
    return rep;
  }

  rep.rank_l = generic_rank(*rep.l, opts.samples, opts.seed);
  rep.rank_l0 = generic_rank(*rep.l0, opts.samples, opts.seed + 1);
  rep.derivation = drift_derivation(s.drift, *rep.l0);
  rep.catalog = identify_algebra(*rep.l0->structure());
  rep.drift_zero = find_drift_zero(s.drift, s.candidate_equilibrium, opts.newton_trials,
                                   opts.seed);
  rep.drift_zero_verified = rep.drift_zero.has_value();

  const bool any_incomplete = std::any_of(
      rep.completeness.begin(), rep.completeness.end(), [](const Completeness& c) {
        return c.status != CompletenessStatus::Complete;
      });
  if (any_incomplete) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "completeness";
    return rep;
  }
  if (rep.rank_l->rank < n || !rep.rank_l->constant) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "transitivity";
    rep.notes.emplace_back(
        "rank of L falls short of the state dimension at sampled points; "
        "consider restricting the system to an orbit");
    return rep;
  }
  if (!rep.rank_l0->constant) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "hypothesis-violation";
    rep.notes.emplace_back("sampled rank of L0 is not constant");
    return rep;
  }
  if (rep.rank_l0->rank == n) {
    rep.verdict = Verdict::CaseI;
    if (rep.l0->dim() == n && rep.drift_zero_verified) {
      rep.verdict = Verdict::LinearOnGroupCandidate;
      rep.notes.emplace_back(
          "simple connectedness of the state space is assumed, not checked");
    }
    return rep;
  }
  if (rep.rank_l0->rank == n - 1) {
    rep.verdict = Verdict::CaseII;
    return rep;
  }
  rep.verdict = Verdict::Inconclusive;
  rep.reason = "hypothesis-violation";
  rep.notes.emplace_back("sampled rank of L0 is neither n nor n-1");
  return rep;
}

}  // namespace lieq
