#pragma once

// Finite-window chain complexes of finite-dimensional Q-vector spaces.
//
// Homological indexing throughout: d_n : C_n -> C_{n-1}. Cohomological
// objects (de Rham forms of Hodge degree p) sit in homological degree -p.
//
// Basis vectors carry integer-sequence keys so that maps between related
// complexes (inclusions of truncations, projections of Hodge levels,
// restriction maps) can be described by key lookup. A complex may be
// presented as a quotient X / Y of an ambient complex X by a subcomplex Y
// given through spanning vectors; every homological computation below
// works on X / Y.

#include "cyclo/qlinalg.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cyclo {

using Key = std::vector<int>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept;
};

class Basis {
public:
  Index add(const Key& k);
  std::optional<Index> find(const Key& k) const;
  const Key& key(Index i) const { return keys_[static_cast<std::size_t>(i)]; }
  Index size() const { return static_cast<Index>(keys_.size()); }
  const std::vector<Key>& keys() const { return keys_; }

private:
  std::vector<Key> keys_;
  std::unordered_map<Key, Index, KeyHash> index_;
};

class ChainComplex {
public:
  ChainComplex() = default;
  ChainComplex(int lo, int hi);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool in_window(int n) const { return n >= lo_ && n <= hi_; }

  Basis& basis(int n);
  const Basis& basis(int n) const;
  Index dim(int n) const { return in_window(n) ? basis(n).size() : 0; }

  /// Images of the basis of C_n, expressed in the basis of C_{n-1}.
  void set_boundary(int n, std::vector<SparseVec> images);
  const std::vector<SparseVec>& boundary(int n) const;
  SparseMatrix differential(int n) const;

  /// Spanning vectors of the subcomplex Y_n divided out.
  void set_relations(int n, std::vector<SparseVec> rel);
  const std::vector<SparseVec>& relations(int n) const;
  bool is_quotient() const;

  /// Degrees whose homology is trusted; defaults to the whole window.
  void set_certified(int lo, int hi) {
    cert_lo_ = lo;
    cert_hi_ = hi;
  }
  bool certified(int n) const { return n >= cert_lo_ && n <= cert_hi_; }

  int total_dim() const;

private:
  int lo_ = 0, hi_ = -1;
  int cert_lo_ = 0, cert_hi_ = -1;
  std::vector<Basis> bases_;
  std::vector<std::vector<SparseVec>> boundaries_;
  std::vector<std::vector<SparseVec>> relations_;
};

/// Components indexed by source degree: images of source basis vectors.
struct ChainMap {
  std::map<int, std::vector<SparseVec>> components;
  const std::vector<SparseVec>& at(int n) const;
};

struct ValidationReport {
  bool ok = true;
  std::optional<int> failing_degree;
  std::string message;
};

ValidationReport validate(const ChainComplex& c);
ValidationReport validate_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt);

struct HomologyResult {
  int degree = 0;
  Index dim = 0;
  bool certified = true;
  std::vector<SparseVec> representatives;  // cycles in the ambient basis
};

HomologyResult homology(const ChainComplex& c, int n, bool with_representatives = false);
std::map<int, Index> homology_dims(const ChainComplex& c);

/// Basis of {x in X_n : d x in Y_{n-1}} (cycles of the quotient, lifted).
std::vector<SparseVec> relative_cycles(const ChainComplex& c, int n);
/// Spanning set of d X_{n+1} + Y_n.
std::vector<SparseVec> relative_boundaries(const ChainComplex& c, int n);

/// Rank of H_n(f) : H_n(src) -> H_n(tgt).
Index induced_rank(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, int n);

/// Matrix of H_n(f) in the representative bases chosen by homology().
SparseMatrix induced_matrix(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, int n);

/// Chain map defined by key lookup: keys present in the target map to
/// themselves, other keys map to zero.
ChainMap key_map(const ChainComplex& src, const ChainComplex& tgt);
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// Chain map from an arbitrary key-level rule.
ChainMap key_map(const ChainComplex& src, const ChainComplex& tgt,
                 const std::function<std::vector<std::pair<Key, Rational>>(int, const Key&)>& rule);

/// Rank of H_n(F_T) -> H_n(F_T') for a truncation included by keys.
Index persistent_rank(const ChainComplex& small, const ChainComplex& large, int n);

/// Cone(f)_n = src_{n-1} (+) tgt_n, d(a, b) = (-d a, f a + d b).
ChainComplex cone(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt);
/// C[k]_n = C_{n-k}, differential multiplied by (-1)^k.
ChainComplex shift(const ChainComplex& c, int k);
/// Subcomplex/quotient-compatible restriction of the basis to keys
/// satisfying pred; the caller guarantees closure under d.
ChainComplex restrict_keys(const ChainComplex& c, const std::function<bool(int, const Key&)>& pred);

// --- Bicomplexes -------------------------------------------------------------

enum class TotalMode { DirectSum, Product };

/// Positions (p, q) with vertical d : (p, q) -> (p-1, q) and horizontal
/// d : (p, q) -> (p, q-1), commuting. Unbounded directions are
/// represented by nullopt bounds; dims must vanish outside the support.
struct Bicomplex {
  std::optional<int> p_lo, p_hi, q_lo, q_hi;
  std::function<Index(int, int)> dim;
  std::function<std::vector<SparseVec>(int, int)> vertical;    // images in (p-1, q)
  std::function<std::vector<SparseVec>(int, int)> horizontal;  // images in (p, q-1)
};

/// d_total = d_vertical + (-1)^p d_horizontal. Throws std::domain_error if
/// some window degree would receive infinitely many positions.
ChainComplex total_complex(const Bicomplex& b, int lo, int hi, TotalMode mode);

// --- Towers ------------------------------------------------------------------

/// Levels T_0, ..., T_M with maps T_{m+1} -> T_m (maps[m] : levels[m+1] -> levels[m]).
struct Tower {
  std::vector<ChainComplex> levels;
  std::vector<ChainMap> maps;
};

struct TowerLimit {
  std::map<int, Index> lim;
  std::map<int, Index> lim1;
  std::map<int, Index> level_dims;  // homology dims at the top level
  bool stabilized = true;
};

/// Stabilized images decide lim; lim^1 vanishes (finite-dimensional levels)
/// once images are certified stable over `persistence` consecutive levels.
TowerLimit tower_limit(const Tower& t, int lo, int hi, int persistence = 2);

// --- Filtered colimits -------------------------------------------------------

/// Homology of a colimit over an exhausting filtration F_T, estimated by
/// persistent ranks H(F_T) -> H(F_{T+step}). Declared stable in a degree
/// when `persistence` consecutive ranks agree.
struct StableDims {
  std::map<int, Index> dims;
  std::map<int, bool> stable;
  int last_trunc = 0;
  bool all_stable() const;
};

StableDims stable_homology(const std::function<ChainComplex(int)>& build, int t0, int step, int lo, int hi,
                           int persistence = 2);

// --- Homology coordinates --------------------------------------------------

/// Expresses cycles in a fixed basis of H_n, modulo boundaries.
class HomologyCoordinates {
public:
  HomologyCoordinates(const ChainComplex& c, int n);
  Index dim() const { return static_cast<Index>(reps_.size()); }
  const std::vector<SparseVec>& representatives() const { return reps_; }
  /// Coordinates of the class of z; nullopt if z is not a cycle mod Y.
  std::optional<std::vector<Rational>> coordinates(const SparseVec& z) const;
  bool is_boundary(const SparseVec& z) const;

private:
  std::vector<SparseVec> reps_;
  const ChainComplex* complex_;
  int degree_;
  // rows: (vector, coordinate combination over reps)
  std::map<Index, std::pair<SparseVec, SparseVec>> pivots_;
};

}  // namespace cyclo
