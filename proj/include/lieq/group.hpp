#pragma once

#include "lieq/numeric.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lieq {

/// Matrix exponential.  Nilpotent inputs (A^k = 0 exactly for some k <= size)
/// take the exact truncated series; everything else goes through
/// scaling-and-squaring with a degree-13 Pade approximant.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// A catalog matrix Lie group: upper-unipotent Heisenberg, SO(n) for
/// n <= 5, or the abelian translation group R^n embedded as unipotent
/// matrices.  The algebra basis consists of right-invariant generators; the
/// bracket of the induced fields is (A, B) -> BA - AB.
class GroupModel {
 public:
  enum class Kind { Unipotent, Orthogonal, Translation };

  static GroupModel heisenberg3();
  static GroupModel special_orthogonal(int n);
  static GroupModel abelian(int n);
  static GroupModel by_name(const std::string& name);
  static std::vector<std::string> catalog_names();

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  int matrix_size() const { return size_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Eigen::MatrixXd>& algebra_basis() const { return basis_; }

  Eigen::MatrixXd identity() const { return Eigen::MatrixXd::Identity(size_, size_); }
  /// Deviation from the group's defining constraints, max-abs entry norm.
  double membership_residual(const Eigen::MatrixXd& m) const;
  /// Nearest group element: polar factor for SO(n), pattern enforcement for
  /// the unipotent models.
  Eigen::MatrixXd project(const Eigen::MatrixXd& m) const;

  Eigen::MatrixXd algebra_element(const Eigen::VectorXd& coords) const;
  /// Least-squares coordinates of a matrix over the algebra basis.
  Eigen::VectorXd algebra_coordinates(const Eigen::MatrixXd& a) const;
  /// Residual of that least-squares fit; ~0 iff a lies in the algebra.
  double algebra_fit_residual(const Eigen::MatrixXd& a) const;

  /// Numeric structure constants of the right-invariant fields,
  /// c[k][i][j] with [A_i, A_j] = sum_k c^k_ij A_k.
  std::vector<Eigen::MatrixXd> structure_constants() const;

 private:
  GroupModel() = default;
  std::string name_;
  Kind kind_ = Kind::Unipotent;
  int size_ = 0;
  std::vector<Eigen::MatrixXd> basis_;
};

/// Element of a catalog group; construction enforces the membership
/// tolerance 1e-9.
class GroupElement {
 public:
  GroupElement(Eigen::MatrixXd m, const GroupModel& g);

  const Eigen::MatrixXd& matrix() const { return m_; }
  const GroupModel& group() const { return *g_; }

  GroupElement operator*(const GroupElement& other) const;

 private:
  Eigen::MatrixXd m_;
  const GroupModel* g_;
};

/// Heisenberg unipotent coordinates (x, y, z) of [[1, y, z], [0, 1, x],
/// [0, 0, 1]].
Eigen::Vector3d heisenberg_coords(const Eigen::MatrixXd& m);
Eigen::MatrixXd heisenberg_matrix(const Eigen::Vector3d& c);

/// A linear vector field on a catalog group: either the inner field
/// M -> XM - MX, or the Heisenberg coordinate field
/// (x, y, z) -> (0, x, x^2/2).  Vanishes at the identity.
class LinearField {
 public:
  static LinearField inner(const GroupModel& g, const Eigen::MatrixXd& x);
  static LinearField heisenberg_coordinate(const GroupModel& g);
  static LinearField zero(const GroupModel& g);

  const GroupModel& group() const { return *g_; }
  bool is_inner() const { return inner_; }
  /// Generator matrix X of an inner field; throws for the coordinate kind.
  const Eigen::MatrixXd& generator() const;

  /// Tangent value at M (a matrix of the ambient size).
  Eigen::MatrixXd value_at(const Eigen::MatrixXd& m) const;
  /// Matrix of the derivation D on algebra coordinates; for inner fields
  /// D Y = XY - YX, for the coordinate field DX = Y, DY = DZ = 0.
  Eigen::MatrixXd derivation() const;

 private:
  LinearField() = default;
  const GroupModel* g_ = nullptr;
  bool inner_ = true;
  Eigen::MatrixXd x_;  // inner generator
};

/// Exact flow of the field: conjugation e^{tX} M e^{-tX} for inner fields,
/// the closed form (x, y + tx, z + t x^2 / 2) for the coordinate field.
GroupElement linear_flow(const LinearField& f, double t, const GroupElement& m);

/// || phi_t(MN) - phi_t(M) phi_t(N) ||_inf
double automorphism_residual(const LinearField& f, const GroupElement& m,
                             const GroupElement& n, double t);

/// || phi_t(exp Y) - exp(e^{tD} Y) ||_inf with Y given in algebra coordinates.
double derivation_exp_residual(const LinearField& f, const Eigen::VectorXd& y, double t);

/// True iff [X, h_i] stays in span(h_basis) for every i (least-squares
/// residual <= tol).
bool projection_check(const Eigen::MatrixXd& x, const std::vector<Eigen::MatrixXd>& h_basis,
                      double tol = 1e-10);

struct AffineDecomposition {
  Eigen::MatrixXd invariant;  // C = F(I)
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> linear_part;  // M -> F(M) - M C
};

AffineDecomposition affine_decompose(
    const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& f_at, const GroupModel& g);

struct GroupTrajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> matrices;
};

/// RK4 on matrix coordinates for dM/dt = F(M) + sum_j u_j Y_j M, with
/// per-step projection back onto the group.
GroupTrajectory simulate_linear_system(const GroupModel& g, const LinearField& f,
                                       const std::vector<Eigen::MatrixXd>& y_controls,
                                       const PiecewiseControl& u, double horizon, double dt);

/// Exact per-piece trajectory of the Heisenberg system
/// dx = u, dy = x, dz = x^2/2 in unipotent coordinates.
Eigen::Vector3d heisenberg_closed_form(const PiecewiseControl& u, const Eigen::Vector3d& c0,
                                       double t);

/// Delimited text: header row naming entries m_rc, one row per grid time.
std::string trajectory_text(const GroupTrajectory& tr);

}  // namespace lieq
