#include "lieq/group.hpp"

#include "lieq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lieq {

namespace {

bool is_exactly_zero(const Eigen::MatrixXd& a) { return (a.array() == 0.0).all(); }

Eigen::MatrixXd expm_nilpotent(const Eigen::MatrixXd& a, int index) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (int j = 1; j < index; ++j) {
    term = (term * a) / j;
    sum += term;
  }
  return sum;
}

// Higham's degree-13 Pade approximant with scaling and squaring.
Eigen::MatrixXd expm_pade13(const Eigen::MatrixXd& a_in) {
  static const double theta13 = 5.371920351148152;
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const double norm = a_in.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int s = 0;
  if (norm > theta13) s = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const Eigen::MatrixXd a = a_in / std::pow(2.0, s);
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
           b[1] * i);
  const Eigen::MatrixXd v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("expm needs a square matrix");
  if (!a.allFinite()) throw DomainError("expm needs finite entries");
  Eigen::MatrixXd power = a;
  for (int k = 1; k <= a.rows(); ++k) {
    if (is_exactly_zero(power)) return expm_nilpotent(a, k);
    power = power * a;
  }
  return expm_pade13(a);
}

GroupModel GroupModel::heisenberg3() {
  GroupModel g;
  g.name_ = "heisenberg3";
  g.kind_ = Kind::Unipotent;
  g.size_ = 3;
  auto e = [](int i, int j) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(i, j) = 1;
    return m;
  };
  g.basis_ = {e(1, 2), e(0, 1), e(0, 2)};  // X, Y, Z
  return g;
}

GroupModel GroupModel::special_orthogonal(int n) {
  if (n < 2 || n > 5) throw DomainError("so(n) catalog covers n = 2..5 only");
  GroupModel g;
  g.name_ = "so" + std::to_string(n);
  g.kind_ = Kind::Orthogonal;
  g.size_ = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(i, j) = 1;
      m(j, i) = -1;
      g.basis_.push_back(m);
    }
  return g;
}

GroupModel GroupModel::abelian(int n) {
  if (n < 1 || n > 6) throw DomainError("abelian catalog covers n = 1..6 only");
  GroupModel g;
  g.name_ = "abelian" + std::to_string(n);
  g.kind_ = Kind::Translation;
  g.size_ = n + 1;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    m(i, n) = 1;
    g.basis_.push_back(m);
  }
  return g;
}

GroupModel GroupModel::by_name(const std::string& name) {
  for (const auto& n : catalog_names())
    if (n == name) {
      if (name == "heisenberg3") return heisenberg3();
      if (name.rfind("so", 0) == 0) return special_orthogonal(std::stoi(name.substr(2)));
      return abelian(std::stoi(name.substr(7)));
    }
  throw DomainError("unknown group '" + name + "'; see the catalog command");
}

std::vector<std::string> GroupModel::catalog_names() {
  return {"heisenberg3", "so2", "so3", "so4", "so5", "abelian1", "abelian2", "abelian3"};
}

namespace {

Eigen::MatrixXd free_entry_mask(const GroupModel& g) {
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(g.matrix_size(), g.matrix_size());
  for (const auto& b : g.algebra_basis())
    mask = (mask.array() != 0.0 || b.array() != 0.0).cast<double>();
  return mask;
}

}  // namespace

Eigen::MatrixXd GroupModel::project(const Eigen::MatrixXd& m) const {
  if (m.rows() != size_ || m.cols() != size_) throw DomainError("matrix size mismatch");
  if (kind_ == Kind::Orthogonal) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd u = svd.matrixU();
    const Eigen::MatrixXd vt = svd.matrixV().transpose();
    if ((u * vt).determinant() < 0) u.col(size_ - 1) *= -1;
    return u * vt;
  }
  const Eigen::MatrixXd mask = free_entry_mask(*this);
  return identity() + mask.cwiseProduct(m);
}

double GroupModel::membership_residual(const Eigen::MatrixXd& m) const {
  if (m.rows() != size_ || m.cols() != size_) throw DomainError("matrix size mismatch");
  if (kind_ == Kind::Orthogonal)
    return (m.transpose() * m - identity()).cwiseAbs().maxCoeff();
  return (m - project(m)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd GroupModel::algebra_element(const Eigen::VectorXd& coords) const {
  if (coords.size() != dim()) throw DomainError("algebra coordinate dimension mismatch");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size_, size_);
  for (int k = 0; k < dim(); ++k) a += coords[k] * basis_[static_cast<std::size_t>(k)];
  return a;
}

namespace {

Eigen::MatrixXd flattened_basis(const GroupModel& g) {
  const int n2 = g.matrix_size() * g.matrix_size();
  Eigen::MatrixXd b(n2, g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    const Eigen::MatrixXd& m = g.algebra_basis()[static_cast<std::size_t>(k)];
    b.col(k) = Eigen::Map<const Eigen::VectorXd>(m.data(), n2);
  }
  return b;
}

}  // namespace

Eigen::VectorXd GroupModel::algebra_coordinates(const Eigen::MatrixXd& a) const {
  if (a.rows() != size_ || a.cols() != size_) throw DomainError("matrix size mismatch");
  const Eigen::MatrixXd b = flattened_basis(*this);
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(a.data(), size_ * size_);
  return b.colPivHouseholderQr().solve(v);
}

double GroupModel::algebra_fit_residual(const Eigen::MatrixXd& a) const {
  const Eigen::VectorXd c = algebra_coordinates(a);
  return (algebra_element(c) - a).cwiseAbs().maxCoeff();
}

std::vector<Eigen::MatrixXd> GroupModel::structure_constants() const {
  std::vector<Eigen::MatrixXd> c(static_cast<std::size_t>(dim()),
                                 Eigen::MatrixXd::Zero(dim(), dim()).eval());
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) {
      // bracket of the right-invariant fields M -> A M
      const Eigen::MatrixXd br = basis_[static_cast<std::size_t>(j)] * basis_[static_cast<std::size_t>(i)] -
                                 basis_[static_cast<std::size_t>(i)] * basis_[static_cast<std::size_t>(j)];
      const Eigen::VectorXd coords = algebra_coordinates(br);
      for (int k = 0; k < dim(); ++k) {
        c[static_cast<std::size_t>(k)](i, j) = coords[k];
        c[static_cast<std::size_t>(k)](j, i) = -coords[k];
      }
    }
  return c;
}

GroupElement::GroupElement(Eigen::MatrixXd m, const GroupModel& g)
    : m_(std::move(m)), g_(&g) {
  if (g.membership_residual(m_) > 1e-9)
    throw DomainError("matrix is not a member of " + g.name() +
                      " within the 1e-9 tolerance");
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (g_ != other.g_ && g_->name() != other.g_->name())
    throw DomainError("group mismatch in multiplication");
  return GroupElement(m_ * other.m_, *g_);
}

Eigen::Vector3d heisenberg_coords(const Eigen::MatrixXd& m) {
  if (m.rows() != 3 || m.cols() != 3) throw DomainError("heisenberg coordinates need 3x3");
  return {m(1, 2), m(0, 1), m(0, 2)};  // (x, y, z)
}

Eigen::MatrixXd heisenberg_matrix(const Eigen::Vector3d& c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(1, 2) = c[0];
  m(0, 1) = c[1];
  m(0, 2) = c[2];
  return m;
}

LinearField LinearField::inner(const GroupModel& g, const Eigen::MatrixXd& x) {
  if (g.algebra_fit_residual(x) > 1e-9)
    throw DomainError("inner generator is not in the group algebra");
  LinearField f;
  f.g_ = &g;
  f.inner_ = true;
  f.x_ = x;
  return f;
}

LinearField LinearField::heisenberg_coordinate(const GroupModel& g) {
  if (g.name() != "heisenberg3")
    throw DomainError("the coordinate field is specific to heisenberg3");
  LinearField f;
  f.g_ = &g;
  f.inner_ = false;
  return f;
}

LinearField LinearField::zero(const GroupModel& g) {
  LinearField f;
  f.g_ = &g;
  f.inner_ = true;
  f.x_ = Eigen::MatrixXd::Zero(g.matrix_size(), g.matrix_size());
  return f;
}

const Eigen::MatrixXd& LinearField::generator() const {
  if (!inner_) throw DomainError("the coordinate field has no inner generator");
  return x_;
}

Eigen::MatrixXd LinearField::value_at(const Eigen::MatrixXd& m) const {
  if (inner_) return x_ * m - m * x_;
  const Eigen::Vector3d c = heisenberg_coords(m);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 3);
  v(0, 1) = c[0];               // dy/dt = x
  v(0, 2) = c[0] * c[0] / 2.0;  // dz/dt = x^2 / 2
  return v;
}

Eigen::MatrixXd LinearField::derivation() const {
  const int d = g_->dim();
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(d, d);
  if (inner_) {
    for (int i = 0; i < d; ++i) {
      const Eigen::MatrixXd& y = g_->algebra_basis()[static_cast<std::size_t>(i)];
      dm.col(i) = g_->algebra_coordinates(x_ * y - y * x_);
    }
    return dm;
  }
  dm(1, 0) = 1;  // D X = Y, D Y = D Z = 0
  return dm;
}

GroupElement linear_flow(const LinearField& f, double t, const GroupElement& m) {
  if (&f.group() != &m.group() && f.group().name() != m.group().name())
    throw DomainError("group mismatch between field and element");
  if (!f.is_inner()) {
    Eigen::Vector3d c = heisenberg_coords(m.matrix());
    c = Eigen::Vector3d(c[0], c[1] + t * c[0], c[2] + t * c[0] * c[0] / 2.0);
    return GroupElement(heisenberg_matrix(c), m.group());
  }
  const Eigen::MatrixXd etx = expm(t * f.generator());
  const Eigen::MatrixXd etx_inv = expm(-t * f.generator());
  return GroupElement(etx * m.matrix() * etx_inv, m.group());
}

double automorphism_residual(const LinearField& f, const GroupElement& m,
                             const GroupElement& n, double t) {
  const GroupElement lhs = linear_flow(f, t, m * n);
  const GroupElement rhs = linear_flow(f, t, m) * linear_flow(f, t, n);
  return (lhs.matrix() - rhs.matrix()).cwiseAbs().maxCoeff();
}

double derivation_exp_residual(const LinearField& f, const Eigen::VectorXd& y, double t) {
  const GroupModel& g = f.group();
  const Eigen::MatrixXd ymat = g.algebra_element(y);
  const GroupElement lhs = linear_flow(f, t, GroupElement(expm(ymat), g));
  const Eigen::VectorXd moved = expm(t * f.derivation()) * y;
  const Eigen::MatrixXd rhs = expm(g.algebra_element(moved));
  return (lhs.matrix() - rhs).cwiseAbs().maxCoeff();
}

bool projection_check(const Eigen::MatrixXd& x, const std::vector<Eigen::MatrixXd>& h_basis,
                      double tol) {
  if (h_basis.empty()) return true;
  const int n2 = static_cast<int>(x.rows() * x.cols());
  Eigen::MatrixXd b(n2, static_cast<int>(h_basis.size()));
  for (std::size_t k = 0; k < h_basis.size(); ++k)
    b.col(static_cast<int>(k)) = Eigen::Map<const Eigen::VectorXd>(h_basis[k].data(), n2);
  for (const auto& h : h_basis) {
    const Eigen::MatrixXd br = x * h - h * x;
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(br.data(), n2);
    const Eigen::VectorXd c = b.colPivHouseholderQr().solve(v);
    if ((b * c - v).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

AffineDecomposition affine_decompose(
    const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& f_at, const GroupModel& g) {
  AffineDecomposition d;
  const Eigen::MatrixXd c = f_at(g.identity());
  d.invariant = c;
  d.linear_part = [f_at, c](const Eigen::MatrixXd& m) { return f_at(m) - m * c; };
  return d;
}

GroupTrajectory simulate_linear_system(const GroupModel& g, const LinearField& f,
                                       const std::vector<Eigen::MatrixXd>& y_controls,
                                       const PiecewiseControl& u, double horizon, double dt) {
  if (dt <= 0) throw DomainError("step size must be positive");
  if (u.channels() != static_cast<int>(y_controls.size()))
    throw DomainError("control channel count does not match the control directions");
  for (const auto& y : y_controls)
    if (g.algebra_fit_residual(y) > 1e-9)
      throw DomainError("control direction is not in the group algebra");

  GroupTrajectory out;
  Eigen::MatrixXd m = g.identity();
  double t = 0;
  out.times.push_back(t);
  out.matrices.push_back(m);
  auto rhs = [&](const Eigen::MatrixXd& s, const std::vector<double>& uv) {
    Eigen::MatrixXd v = f.value_at(s);
    for (std::size_t j = 0; j < y_controls.size(); ++j) v += uv[j] * (y_controls[j] * s);
    return v;
  };
  while (t < horizon - 1e-15) {
    const double h = std::min(dt, horizon - t);
    const std::vector<double> uv = u.value_at(t + h / 2);
    const Eigen::MatrixXd k1 = rhs(m, uv);
    const Eigen::MatrixXd k2 = rhs(m + (h / 2) * k1, uv);
    const Eigen::MatrixXd k3 = rhs(m + (h / 2) * k2, uv);
    const Eigen::MatrixXd k4 = rhs(m + h * k3, uv);
    m = g.project(m + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4));
    t += h;
    out.times.push_back(t);
    out.matrices.push_back(m);
  }
  return out;
}

Eigen::Vector3d heisenberg_closed_form(const PiecewiseControl& u, const Eigen::Vector3d& c0,
                                       double t) {
  double x = c0[0], y = c0[1], z = c0[2];
  double remaining = t;
  for (const auto& piece : u.pieces()) {
    if (remaining <= 0) break;
    const double tau = std::min(remaining, piece.duration);
    const double v = piece.values.at(0);
    z += 0.5 * (x * x * tau + x * v * tau * tau + v * v * tau * tau * tau / 3.0);
    y += x * tau + 0.5 * v * tau * tau;
    x += v * tau;
    remaining -= tau;
  }
  if (remaining > 1e-12) {
    // beyond the covered span the control clamps to its last piece
    const double tau = remaining;
    const double v = u.pieces().back().values.at(0);
    z += 0.5 * (x * x * tau + x * v * tau * tau + v * v * tau * tau * tau / 3.0);
    y += x * tau + 0.5 * v * tau * tau;
    x += v * tau;
  }
  return {x, y, z};
}

std::string trajectory_text(const GroupTrajectory& tr) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  if (!tr.matrices.empty()) {
    for (Eigen::Index r = 0; r < tr.matrices.front().rows(); ++r)
      for (Eigen::Index c = 0; c < tr.matrices.front().cols(); ++c)
        os << "\tm" << r << c;
  }
  os << "\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    os << tr.times[k];
    const Eigen::MatrixXd& m = tr.matrices[k];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) os << "\t" << m(r, c);
    os << "\n";
  }
  return os.str();
}

}  // namespace lieq
