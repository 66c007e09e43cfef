#pragma once

// Kähler forms, de Rham complexes and the infinitesimal (formal
// completion) model, all as quotients X / Y of the ambient polynomial
// forms Ω_P by explicitly spanned subcomplexes.
//
// Ω^p sits in homological degree -p. Forms are truncated by nominal degree
// (coefficient degree + p) and optionally restricted to one weight; both
// are preserved by d, so every truncation is a genuine complex.

#include "cyclo/chain.hpp"
#include "cyclo/fpalgebra.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cyclo {

/// Form over the ambient polynomial ring: (coefficient monomial, dx mask).
using FormIndex = std::pair<Monomial, unsigned>;
using Form = std::map<FormIndex, Rational>;

Form poly_form(const Polynomial& f, unsigned mask = 0);
/// df = sum_i (d f / d x_i) dx_i.
Form differential(const Polynomial& f);
Form form_d(const Form& w);
Form wedge(const Form& a, const Form& b);
Form operator+(const Form& a, const Form& b);
int hodge_degree(unsigned mask);

/// Key encoding of a basis form: exponents followed by the mask.
Key form_key(const Monomial& m, unsigned mask);
FormIndex form_index(const Key& k);

struct FormFilter {
  int trunc = 0;               // coefficient degree + Hodge degree <= trunc
  std::optional<int> weight;   // exact weight, requires weights
};

struct KaehlerModel {
  int p = 0;
  int trunc = 0;
  Basis basis;
  std::vector<SparseVec> relations;
  Index dim = 0;  // dim basis - rank relations
};

/// Ω^p_R truncated to coefficient degree <= trunc, presented as
/// P-forms modulo g·Ω^p_P and dg ∧ Ω^{p-1}_P for g in the Gröbner basis.
KaehlerModel kaehler(const FpAlgebra& r, int p, int trunc);

class DeRhamComplex {
public:
  DeRhamComplex(const FpAlgebra& r, const FormFilter& filter, ChainComplex c)
      : algebra_(r), filter_(filter), complex_(std::move(c)) {}

  const FpAlgebra& algebra() const { return algebra_; }
  const FormFilter& filter() const { return filter_; }
  const ChainComplex& complex() const { return complex_; }

  /// Fil^m_H = forms of Hodge degree >= m (homological degrees <= -m).
  ChainComplex hodge_sub(int m) const;
  /// Ω / Fil^{m+1}: Hodge degrees <= m.
  ChainComplex hodge_quotient(int m) const;
  /// gr^m = Ω^m placed in degree -m.
  ChainComplex graded(int m) const;

  /// Coordinates of a form with all terms of Hodge degree p, in degree -p.
  SparseVec encode(const Form& w) const;

private:
  FpAlgebra algebra_;
  FormFilter filter_;
  ChainComplex complex_;
};

/// Truncated de Rham complex of R (smooth or not: the classical, underived one).
DeRhamComplex de_rham_complex(const FpAlgebra& r, const FormFilter& filter);

/// Stable de Rham homology of one weight piece (or everything when the
/// algebra carries no weights): exact when all weights are positive,
/// persistent over truncations otherwise.
StableDims de_rham_homology(const FpAlgebra& r, std::optional<int> weight, int trunc, int lo, int hi,
                            int persistence = 2);

/// Level N of the formal completion: Ω_P / ⊕_p I^{N-p} Ω^p_P. The literal
/// Ω_P ⊗ P/I^N is not closed under d; the shifted powers are.
ChainComplex infinitesimal_level(const FpAlgebra& ambient, const std::vector<Polynomial>& ideal, int level,
                                 const FormFilter& filter);

struct InfinitesimalResult {
  std::map<int, Index> dims;   // homological degrees
  bool adic_stable = false;    // over the level N
  bool trunc_stable = false;   // over the polynomial truncation
  int top_level = 0;
};

/// π_* of the completed de Rham complex of P/I, via the tower over N.
/// `ambient` is a polynomial ring (no relations), possibly with weights.
InfinitesimalResult infinitesimal_cohomology(const FpAlgebra& ambient, const std::vector<Polynomial>& ideal,
                                             int lo, int hi, int first_level, int levels,
                                             const FormFilter& filter, int persistence = 2);

/// Convenience: P = free algebra on R's variables (R's weights), I = R's relations.
InfinitesimalResult infinitesimal_cohomology(const FpAlgebra& r, std::optional<int> weight, int lo, int hi,
                                             int levels = 4, int trunc = 0);

/// True when every weight is positive, so weight pieces are finite.
bool positively_graded(const FpAlgebra& r);

}  // namespace cyclo
