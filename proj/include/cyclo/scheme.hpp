#pragma once

// Finite affine covers and global sections of local invariants as finite
// Čech limits. Every nonempty intersection of patches is presented as its
// own algebra, with algebra maps O(U_S) -> O(U_{S ∪ {i}}).

#include "cyclo/chain.hpp"
#include "cyclo/cyclic.hpp"
#include "cyclo/fpalgebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

/// Algebra map given by the images of the source variables (polynomials in
/// the target's variables).
struct AlgebraMap {
  std::vector<Polynomial> images;
  Polynomial apply(const Polynomial& p, std::size_t target_nvars) const;
  /// Largest total degree among the images (at least 1).
  int degree_bound() const;
};

using Subset = std::vector<int>;  // sorted patch indices

struct AffineCover {
  std::vector<std::string> names;
  std::map<Subset, FpAlgebra> sections;                    // all nonempty subsets
  std::map<std::pair<Subset, Subset>, AlgebraMap> maps;    // S -> S ∪ {i}
  /// Optional ambient affine X with maps O(X) -> O(U_i), for the augmented complex.
  std::optional<FpAlgebra> ambient;
  std::map<int, AlgebraMap> ambient_maps;

  std::size_t size() const { return names.size(); }
  const FpAlgebra& section(const Subset& s) const;
  const AlgebraMap& map(const Subset& from, const Subset& to) const;
};

struct CoverCheck {
  bool ok = true;
  std::string message;
};

/// Maps send relations to zero; both paths S -> S∪{i} -> S∪{i,j} agree on
/// every generator; weights (if all sections carry them) are preserved.
CoverCheck check_cover(const AffineCover& c);

/// Validates and returns the cover; throws std::invalid_argument on
/// incoherent data.
AffineCover build_cover(AffineCover c);

/// D(f_1), ..., D(f_r) on Spec R. Intersections are iterated Rabinowitsch
/// localizations in index order; the f_i must generate the unit ideal.
AffineCover principal_cover(const FpAlgebra& r, const std::vector<Polynomial>& fs,
                            const std::vector<std::string>& names = {});

/// Two patches A, B glued along C with the given maps A -> C, B -> C.
AffineCover two_patch_cover(const std::string& name_a, const FpAlgebra& a, const std::string& name_b,
                            const FpAlgebra& b, const FpAlgebra& overlap, const AlgebraMap& a_to_c,
                            const AlgebraMap& b_to_c);

/// The same cover with patches renumbered: new index k is old index perm[k].
AffineCover permute_patches(const AffineCover& c, const std::vector<int>& perm);

enum class Invariant { HH, HP, DeRham };

struct CechOptions {
  std::optional<int> weight;
  int trunc = 4;
  int bar_cap = 4;
  int persistence = 2;
  bool augmented = false;  // include O(X) in Čech degree +1
};

struct CechResult {
  std::map<int, Index> dims;
  bool certified = true;
  std::string diagnostic;
};

/// Total complex of the Čech diagram of one invariant at truncation T.
/// Čech degree p = -(|S| - 1) (and +1 for the ambient), total degree p + q.
ChainComplex cech_complex(const AffineCover& c, Invariant inv, int lo, int hi, int trunc, const CechOptions& opt);

/// Homology of the Čech total complex, persistent over truncations.
CechResult cech_sections(const AffineCover& c, Invariant inv, int lo, int hi, const CechOptions& opt = {});

/// HP of the glued object summed over weights, by the bar/Tate route and
/// by the de Rham route (Σ_n H_{d+2n} of the Čech de Rham complex).
struct GluedHP {
  std::map<int, Index> bar;
  std::map<int, Index> derham;
  std::map<int, Index> derham_cohomology;  // Čech de Rham H_e summed over weights
  bool certified = true;
  std::string diagnostic;
  bool agree() const { return bar == derham; }
};

GluedHP glued_hp(const AffineCover& c, const std::vector<std::optional<int>>& weights, int lo, int hi,
                 const CechOptions& opt = {});

}  // namespace cyclo
