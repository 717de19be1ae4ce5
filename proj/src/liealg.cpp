#include "lieq/liealg.hpp"

#include "lieq/errors.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <utility>

namespace lieq {

namespace {

using Key = std::pair<int, Monomial>;

struct KeyLess {
  GradedLexLess ml;
  bool operator()(const Key& a, const Key& b) const {
    if (a.first != b.first) return a.first < b.first;
    return ml(a.second, b.second);
  }
};

void insert_keys(std::set<Key, KeyLess>& keys, const VField& f) {
  for (std::size_t i = 0; i < f.dimension(); ++i)
    for (const auto& [m, c] : f.component(i).terms())
      keys.insert({static_cast<int>(i), m});
}

std::vector<Rational> to_vec(const VField& f, const std::vector<Key>& keys) {
  std::vector<Rational> v(keys.size(), Rational(0));
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto& [comp, mono] = keys[k];
    const auto& terms = f.component(static_cast<std::size_t>(comp)).terms();
    auto it = terms.find(mono);
    if (it != terms.end()) v[k] = it->second;
  }
  return v;
}

void check_common_vars(std::span<const VField> fields) {
  for (std::size_t i = 1; i < fields.size(); ++i)
    if (fields[i].vars() != fields[0].vars())
      throw DomainError("fields live over different variable lists");
}

}  // namespace

std::optional<std::vector<Rational>> coordinates_in_span(std::span<const VField> fields,
                                                         const VField& v) {
  if (fields.empty()) {
    if (v.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  check_common_vars(fields);
  if (v.vars() != fields[0].vars())
    throw DomainError("field lives over a different variable list than the span");

  std::set<Key, KeyLess> key_set;
  for (const auto& f : fields) insert_keys(key_set, f);
  insert_keys(key_set, v);
  const std::vector<Key> keys(key_set.begin(), key_set.end());

  RatMat a(static_cast<int>(keys.size()), static_cast<int>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    const auto col = to_vec(fields[j], keys);
    for (std::size_t i = 0; i < keys.size(); ++i) a(static_cast<int>(i), static_cast<int>(j)) = col[i];
  }
  return solve(std::move(a), to_vec(v, keys));
}

bool StructureTensor::is_antisymmetric() const {
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (at(k, i, j) != -at(k, j, i)) return false;
  return true;
}

bool StructureTensor::satisfies_jacobi() const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          Rational s(0);
          for (int m = 0; m < dim; ++m) {
            s += at(m, i, j) * at(l, m, k);
            s += at(m, j, k) * at(l, m, i);
            s += at(m, k, i) * at(l, m, j);
          }
          if (s != 0) return false;
        }
  return true;
}

bool StructureTensor::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

bool DerivationMatrix::satisfies_leibniz(const StructureTensor& s) const {
  if (s.dim != dim) return false;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l) {
        Rational lhs(0), rhs(0);
        for (int k = 0; k < dim; ++k) {
          lhs += s.at(k, i, j) * entries(l, k);
          rhs += entries(k, i) * s.at(l, k, j);
          rhs += entries(k, j) * s.at(l, i, k);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

LieBasis::LieBasis(std::vector<VField> elements) : elems_(std::move(elements)) {
  if (elems_.empty()) throw DomainError("LieBasis requires at least one element");
  check_common_vars(elems_);
  const RatMat m = coordinate_matrix();
  if (rank(m) != dim()) throw DomainError("LieBasis elements are not linearly independent");
}

std::optional<std::vector<Rational>> LieBasis::coordinates(const VField& v) const {
  return coordinates_in_span(elems_, v);
}

RatMat LieBasis::coordinate_matrix() const {
  std::set<Key, KeyLess> key_set;
  for (const auto& f : elems_) insert_keys(key_set, f);
  const std::vector<Key> keys(key_set.begin(), key_set.end());
  RatMat a(static_cast<int>(keys.size()), dim());
  for (int j = 0; j < dim(); ++j) {
    const auto col = to_vec(elems_[static_cast<std::size_t>(j)], keys);
    for (std::size_t i = 0; i < keys.size(); ++i) a(static_cast<int>(i), j) = col[i];
  }
  return a;
}

LieBasis lie_closure(std::span<const VField> generators, int max_dim, int max_depth) {
  if (generators.empty()) throw DomainError("lie_closure needs at least one generator");
  if (max_dim < 1 || max_depth < 1) throw DomainError("closure bounds must be >= 1");
  check_common_vars(generators);

  std::vector<VField> basis;
  std::vector<int> depth;
  auto try_append = [&](const VField& cand, int d) -> bool {
    if (cand.is_zero()) return false;
    if (coordinates_in_span(basis, cand)) return false;
    if (d > max_depth) throw DimensionExceededError(max_depth, static_cast<int>(basis.size()));
    if (static_cast<int>(basis.size()) + 1 > max_dim)
      throw DimensionExceededError(d, static_cast<int>(basis.size()));
    basis.push_back(cand);
    depth.push_back(d);
    return true;
  };

  for (const auto& g : generators) try_append(g, 0);
  if (basis.empty()) throw DomainError("all generators are zero");

  // Expand breadth-first: every new element is bracketed against the
  // generators; the span stabilizes exactly when no candidate is new.
  for (std::size_t next = 0; next < basis.size(); ++next) {
    const VField b = basis[next];
    const int d = depth[next];
    for (const auto& g : generators) try_append(lie_bracket(g, b), d + 1);
  }

  LieBasis result;
  result.elems_ = std::move(basis);
  result.structure_ = structure_constants(LieBasis(result.elems_));
  return result;
}

LieBasis ideal_closure(const LieBasis& l, const VField& drift,
                       std::span<const VField> controlled, int max_dim) {
  if (controlled.empty()) throw DomainError("ideal_closure needs at least one controlled field");
  if (!l.coordinates(drift)) throw DomainError("drift is not in the span of L");
  for (const auto& g : controlled)
    if (!l.coordinates(g)) throw DomainError("a controlled field is not in the span of L");

  std::vector<VField> basis;
  auto try_append = [&](const VField& cand) -> bool {
    if (cand.is_zero()) return false;
    if (coordinates_in_span(basis, cand)) return false;
    if (static_cast<int>(basis.size()) + 1 > max_dim)
      throw DimensionExceededError(0, static_cast<int>(basis.size()));
    basis.push_back(cand);
    return true;
  };

  for (const auto& g : controlled) try_append(g);
  if (basis.empty()) throw DomainError("all controlled fields are zero");

  for (std::size_t next = 0; next < basis.size(); ++next) {
    const VField b = basis[next];
    for (const auto& g : controlled) try_append(lie_bracket(g, b));
    try_append(lie_bracket(b, drift));
  }

  LieBasis result;
  result.elems_ = std::move(basis);
  result.structure_ = structure_constants(LieBasis(result.elems_));
  return result;
}

StructureTensor structure_constants(const LieBasis& basis) {
  const int d = basis.dim();
  StructureTensor s(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const VField br = lie_bracket(basis.elements()[static_cast<std::size_t>(i)],
                                    basis.elements()[static_cast<std::size_t>(j)]);
      const auto coords = basis.coordinates(br);
      if (!coords) throw NotClosedError(i, j);
      for (int k = 0; k < d; ++k) {
        s.at(k, i, j) = (*coords)[static_cast<std::size_t>(k)];
        s.at(k, j, i) = -(*coords)[static_cast<std::size_t>(k)];
      }
    }
  }
  return s;
}

int rank_at(const LieBasis& basis, const std::vector<Rational>& point) {
  const int n = static_cast<int>(basis.vars().size());
  if (static_cast<int>(point.size()) != n)
    throw DomainError("point dimension does not match variable count");
  RatMat m(n, basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const auto v = basis.elements()[static_cast<std::size_t>(j)].evaluate(point);
    for (int i = 0; i < n; ++i) m(i, j) = v[static_cast<std::size_t>(i)];
  }
  return rank(std::move(m));
}

GenericRank generic_rank(const LieBasis& basis, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("generic_rank needs trials >= 1");
  const int n = static_cast<int>(basis.vars().size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-100, 100);
  auto draw = [&]() {
    int v = 0;
    while (v == 0) v = dist(rng);
    return v;
  };

  GenericRank out;
  // The origin is always probed: degenerate loci tend to pass through it,
  // and random denominators never land there.
  std::vector<std::vector<Rational>> points;
  points.emplace_back(static_cast<std::size_t>(n), Rational(0));
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> p;
    p.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.push_back(Rational(draw()) / draw());
    points.push_back(std::move(p));
  }

  int first = -1;
  for (const auto& p : points) {
    const int r = rank_at(basis, p);
    if (first < 0) first = r;
    if (r != first) out.constant = false;
    out.rank = std::max(out.rank, r);
  }
  out.samples = static_cast<int>(points.size());
  return out;
}

DerivationMatrix drift_derivation(const VField& f, const LieBasis& basis) {
  const StructureTensor s =
      basis.structure() ? *basis.structure() : structure_constants(basis);
  const int d = basis.dim();
  DerivationMatrix dm{d, RatMat(d, d)};
  for (int i = 0; i < d; ++i) {
    // D X_i = -[f, X_i] = [X_i, f]
    const auto coords =
        basis.coordinates(lie_bracket(basis.elements()[static_cast<std::size_t>(i)], f));
    if (!coords) throw NotNormalizingError(i);
    for (int k = 0; k < d; ++k) dm.entries(k, i) = (*coords)[static_cast<std::size_t>(k)];
  }
  if (!dm.satisfies_leibniz(s))
    throw std::logic_error("drift derivation violates Leibniz against the structure constants");
  return dm;
}

std::string to_string(CatalogTag tag) {
  switch (tag) {
    case CatalogTag::Abelian: return "abelian";
    case CatalogTag::Heisenberg: return "heisenberg";
    case CatalogTag::So3: return "so3";
    case CatalogTag::Sl2: return "sl2";
    case CatalogTag::SolvableNonNilpotent: return "solvable-nonnilpotent";
    case CatalogTag::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Sylvester signature of an exact symmetric matrix by Lagrange congruence
// reduction.
void symmetric_signature(RatMat k, int& pos, int& neg, int& zero) {
  const int n = k.rows();
  pos = neg = zero = 0;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (;;) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[static_cast<std::size_t>(i)] && k(i, i) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      int a = -1, b = -1;
      for (int i = 0; i < n && a < 0; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        for (int j = i + 1; j < n; ++j)
          if (!done[static_cast<std::size_t>(j)] && k(i, j) != 0) {
            a = i;
            b = j;
            break;
          }
      }
      if (a < 0) {
        for (int i = 0; i < n; ++i)
          if (!done[static_cast<std::size_t>(i)]) ++zero;
        return;
      }
      for (int c = 0; c < n; ++c) k(a, c) += k(b, c);
      for (int r = 0; r < n; ++r) k(r, a) += k(r, b);
      p = a;
    }
    if (k(p, p) > 0) ++pos;
    else ++neg;
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<std::size_t>(i)] || i == p || k(i, p) == 0) continue;
      const Rational f = k(i, p) / k(p, p);
      for (int c = 0; c < n; ++c) k(i, c) -= f * k(p, c);
      for (int r = 0; r < n; ++r) k(r, i) -= f * k(r, p);
    }
    done[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

AlgebraId identify_algebra(const StructureTensor& s) {
  const int d = s.dim;
  AlgebraId id;
  id.dim = d;

  // derived subalgebra: span of all brackets [X_i, X_j]
  RatMat derived(d, d * (d - 1) / 2 > 0 ? d * (d - 1) / 2 : 1);
  int col = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j, ++col)
      for (int k = 0; k < d; ++k) derived(k, col) = s.at(k, i, j);
  id.derived_dim = rank(derived);

  // center: x with sum_i x_i c^k_{i,j} = 0 for all j, k
  RatMat cmat(d * d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) cmat(j * d + k, i) = s.at(k, i, j);
  id.center_dim = d - rank(cmat);

  // derived subalgebra inside the center?
  bool derived_central = true;
  for (int i = 0; i < d && derived_central; ++i)
    for (int j = i + 1; j < d && derived_central; ++j)
      for (int jj = 0; jj < d && derived_central; ++jj)
        for (int kk = 0; kk < d; ++kk) {
          Rational acc(0);
          for (int ii = 0; ii < d; ++ii) acc += s.at(kk, ii, jj) * s.at(ii, i, j);
          if (acc != 0) {
            derived_central = false;
            break;
          }
        }

  // Killing form K(i,j) = tr(ad_i ad_j)
  RatMat killing(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational acc(0);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) acc += s.at(a, i, b) * s.at(b, j, a);
      killing(i, j) = acc;
    }
  symmetric_signature(killing, id.killing_positive, id.killing_negative, id.killing_zero);

  if (d > 3) {
    id.tag = CatalogTag::Unknown;
    return id;
  }
  if (id.derived_dim == 0) {
    id.tag = CatalogTag::Abelian;
  } else if (d == 3 && id.derived_dim == 3) {
    id.tag = (id.killing_negative == 3) ? CatalogTag::So3 : CatalogTag::Sl2;
  } else if (d == 3 && id.derived_dim == 1 && derived_central) {
    id.tag = CatalogTag::Heisenberg;
  } else {
    id.tag = CatalogTag::SolvableNonNilpotent;
  }
  return id;
}

}  // namespace lieq
