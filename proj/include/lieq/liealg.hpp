#pragma once

#include "lieq/ratmat.hpp"
#include "lieq/vfield.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lieq {

/// Bracket table of a closed basis: [X_i, X_j] = sum_k c^k_ij X_k.
/// Antisymmetric in (i, j) by construction.
struct StructureTensor {
  int dim = 0;
  std::vector<Rational> c;  // c[(k*dim + i)*dim + j]

  explicit StructureTensor(int d) : dim(d), c(static_cast<std::size_t>(d) * d * d) {}

  Rational& at(int k, int i, int j) {
    return c[(static_cast<std::size_t>(k) * dim + i) * dim + j];
  }
  const Rational& at(int k, int i, int j) const {
    return c[(static_cast<std::size_t>(k) * dim + i) * dim + j];
  }

  bool is_antisymmetric() const;
  /// Exact Jacobi residual check.
  bool satisfies_jacobi() const;
  bool is_zero() const;
};

/// Matrix of a derivation on a closed basis; column j holds the coordinates
/// of D(X_j).
struct DerivationMatrix {
  int dim = 0;
  RatMat entries;

  /// Exact Leibniz check against the companion bracket table.
  bool satisfies_leibniz(const StructureTensor& s) const;
};

/// Ordered list of exactly independent vector fields.  Independence is
/// certified over the global (component, monomial) rational coordinate
/// space at construction.  `structure()` is set by the closure operations
/// once the span is known to be bracket-closed.
class LieBasis {
 public:
  explicit LieBasis(std::vector<VField> elements);

  int dim() const { return static_cast<int>(elems_.size()); }
  const std::vector<VField>& elements() const { return elems_; }
  const std::vector<std::string>& vars() const { return elems_.front().vars(); }
  const std::optional<StructureTensor>& structure() const { return structure_; }

  /// Exact coordinates of v over this basis, or nullopt when v is outside
  /// the span.
  std::optional<std::vector<Rational>> coordinates(const VField& v) const;

  /// Each element expressed over the union of its (component, monomial)
  /// keys; columns indexed by basis element.
  RatMat coordinate_matrix() const;

 private:
  LieBasis() = default;
  std::vector<VField> elems_;
  std::optional<StructureTensor> structure_;

  friend LieBasis lie_closure(std::span<const VField>, int, int);
  friend LieBasis ideal_closure(const LieBasis&, const VField&, std::span<const VField>, int);
};

/// Exact coordinates of v in the span of `fields`; nullopt when outside.
std::optional<std::vector<Rational>> coordinates_in_span(std::span<const VField> fields,
                                                         const VField& v);

/// Breadth-first Lie closure of the generators: bracket the current basis
/// against the generators each round, reduce exactly, append what is new
/// (generators first, discoveries in order).  Throws DimensionExceededError
/// when a bound is hit before stabilization.
LieBasis lie_closure(std::span<const VField> generators, int max_dim = 64, int max_depth = 10);

/// Smallest subalgebra of span(L) containing the controlled fields and
/// closed under bracket with the drift.  Preconditions: drift and controls
/// lie in span(L).
LieBasis ideal_closure(const LieBasis& l, const VField& drift,
                       std::span<const VField> controlled, int max_dim = 64);

/// Exact bracket table; throws NotClosedError when some pair leaves the span.
StructureTensor structure_constants(const LieBasis& basis);

/// Exact rank of the n x d matrix of field evaluations at a rational point.
int rank_at(const LieBasis& basis, const std::vector<Rational>& point);

struct GenericRank {
  int rank = 0;        // max sampled rank
  bool constant = true;  // all sampled ranks equal
  int samples = 0;
};

/// Seeded sampling at the origin plus `trials` random rational points with
/// numerators and denominators uniform in [-100, 100] \ {0}.
GenericRank generic_rank(const LieBasis& basis, int trials, std::uint64_t seed);

/// Matrix of D = -ad(f) restricted to span(basis), i.e. column i holds the
/// coordinates of [X_i, f].  Throws NotNormalizingError when some [f, X_i]
/// leaves the span; Leibniz is verified exactly before returning.
DerivationMatrix drift_derivation(const VField& f, const LieBasis& basis);

enum class CatalogTag {
  Abelian,
  Heisenberg,
  So3,
  Sl2,
  SolvableNonNilpotent,
  Unknown,
};

std::string to_string(CatalogTag tag);

/// Exact invariants used by the dim <= 3 catalog decision.
struct AlgebraId {
  CatalogTag tag = CatalogTag::Unknown;
  int dim = 0;
  int derived_dim = 0;
  int center_dim = 0;
  int killing_positive = 0;
  int killing_negative = 0;
  int killing_zero = 0;
};

/// Decides {abelian, heisenberg, so3, sl2, solvable-nonnilpotent} for
/// dim <= 3 via derived series, center and Killing signature, all exact.
/// dim > 3 returns Unknown with the invariants filled in.
AlgebraId identify_algebra(const StructureTensor& s);

}  // namespace lieq
