#pragma once

// Normalized Hochschild complex, Connes' operator B and the HKR map.
//
// Chains are a_0 ⊗ ā_1 ⊗ ... ⊗ ā_n with every a_i a standard monomial and
// ā_i nonconstant. Keys list monomial ids; ids index the standard monomials
// of degree <= trunc in (degree, degrevlex) order, so a smaller truncation
// uses a prefix of the same ids and inclusions are key lookups.
//
// Truncation: S = sum of the total degrees of the a_i stays <= trunc.
// Normal forms never raise degree under degrevlex, so b and B preserve
// every S-truncation and no product escapes. Bar degree is capped at
// max_degree; homology below the cap is exact for the truncation.

#include "cyclo/chain.hpp"
#include "cyclo/derham.hpp"
#include "cyclo/fpalgebra.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

struct MixedComplex {
  ChainComplex chains;                          // with b
  std::map<int, std::vector<SparseVec>> connes;  // B : C_n -> C_{n+1}
  const std::vector<SparseVec>& B(int n) const;
};

struct MixedIdentityReport {
  bool b_squared = true;
  bool B_squared = true;
  bool anticommute = true;
  std::string message;
  bool ok() const { return b_squared && B_squared && anticommute; }
};

/// b² = 0, B² = 0 and bB + Bb = 0 as exact matrices, wherever both sides
/// stay inside the stored degrees.
MixedIdentityReport check_mixed_identities(const MixedComplex& m);

struct BarOptions {
  int max_degree = 3;
  int trunc = 4;
  std::optional<int> weight;
};

class BarComplex {
public:
  BarComplex(const FpAlgebra& a, const BarOptions& opt);

  const FpAlgebra& algebra() const { return *alg_; }
  const BarOptions& options() const { return opt_; }
  /// Every chain of the weight piece is present (positive weights).
  bool complete() const { return complete_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::optional<int> monomial_id(const Monomial& m) const;

  const MixedComplex& mixed() const { return mixed_; }
  const ChainComplex& chains() const { return mixed_.chains; }

  /// Degrees whose Hochschild homology is exact for this truncation.
  int certified_top() const;

  /// b and B applied to a single tensor of monomial ids, as id-tensors.
  std::map<Key, Rational> b_of(const Key& k) const;
  std::map<Key, Rational> B_of(const Key& k) const;
  /// Encodes a combination of id-tensors; throws if a tensor is missing.
  SparseVec encode(const std::map<Key, Rational>& chain) const;
  /// Tensor of polynomials a_0 ⊗ a_1 ⊗ ... expanded multilinearly, with
  /// constant parts of a_1.. dropped.
  std::map<Key, Rational> tensor(const std::vector<Polynomial>& factors) const;

  std::string format(const Key& k) const;

private:
  std::shared_ptr<const FpAlgebra> alg_;
  BarOptions opt_;
  bool complete_ = false;
  std::vector<Monomial> monomials_;
  std::map<Monomial, int> ids_;
  MixedComplex mixed_;
};

/// Builds the bar complex and verifies the mixed-complex identities;
/// throws std::logic_error on a violation.
BarComplex bar_complex(const FpAlgebra& a, const BarOptions& opt);

/// HH_n of one weight piece. Exact for positively graded algebras;
/// persistent over truncations otherwise.
StableDims hochschild_homology(const FpAlgebra& a, std::optional<int> weight, int lo, int hi, int trunc = 4,
                               int persistence = 2);

/// Polynomial rings and Rabinowitsch localizations of them: every relation
/// is v·f - 1 for a variable v occurring nowhere else.
bool smooth_by_presentation(const FpAlgebra& a);

/// Forms f dx_I mapped to Σ_σ sgn(σ) f ⊗ x_{σ(1)} ⊗ ... ⊗ x_{σ(n)}. Without
/// the 1/n! the map satisfies B∘ε = ε∘d on homology (not on chains).
struct HkrMap {
  ChainComplex source;  // Ω^n in degree n, zero differential
  ChainMap map;         // into the bar complex chains
};

/// Throws std::invalid_argument when the algebra is not smooth by presentation.
HkrMap hkr_map(const BarComplex& bar);
/// ε on a single form (coefficients normal-formed first).
std::map<Key, Rational> hkr_chain(const BarComplex& bar, const Form& w);

}  // namespace cyclo
