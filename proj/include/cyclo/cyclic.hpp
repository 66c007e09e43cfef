#pragma once

// Tate construction on mixed complexes, the u-adic filtration, the two
// routes to periodic cyclic homology and the HKR filtration.
//
// Chains of the Tate complex in degree d are c·u^j with c in C_n and
// n - 2j = d; the differential is b + uB. A mixed complex capped at bar
// degree k (top degree not certified) is replaced by its good truncation
// C_{<k} / b(C_k): the Tate complex is presented as a quotient by the span
// of C_k·u^j and b(C_k)·u^j, and B out of C_k is dropped. That quotient is
// a mixed complex with the same HH below k and zero HH from k on.

#include "cyclo/chain.hpp"
#include "cyclo/fpalgebra.hpp"
#include "cyclo/hochschild.hpp"
#include "cyclo/resolve.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cyclo {

/// Exponents j of u whose chains reach a given total degree.
struct URange {
  int lo = 0;
  int hi = -1;
};

struct TateComplex {
  ChainComplex complex;
  std::map<int, URange> u_range;
};

/// (C((u)), b + uB) with u-exponents restricted to [j_min, j_max] (either
/// side may be open). Restricting from below gives a subcomplex, from above
/// a quotient. The window is [lo, hi]; homology there is certified when
/// the mixed complex is.
TateComplex tate_complex(const MixedComplex& m, int lo, int hi, std::optional<int> j_min = std::nullopt,
                         std::optional<int> j_max = std::nullopt);

struct CyclicDims {
  std::map<int, Index> dims;
  std::map<int, URange> u_range;
  bool certified = true;
  std::string diagnostic;
};

CyclicDims periodic(const MixedComplex& m, int lo, int hi);
CyclicDims negative_cyclic(const MixedComplex& m, int lo, int hi);
/// Rank of HC⁻_d -> HP_d induced by the inclusion u^{>=0} ⊂ u^{Z}.
std::map<int, Index> negative_to_periodic_rank(const MixedComplex& m, int lo, int hi);

struct TateFiltrationReport {
  std::map<int, std::map<int, Index>> fil;     // m -> d -> dim H_d(Fil^m)
  std::map<int, std::map<int, Index>> graded;  // m -> d -> dim H_d(gr^m)
  std::map<int, Index> hh;
  bool graded_matches = true;                  // gr^m = HH shifted by 2m
  std::optional<int> vanishing_from;           // smallest m with Fil^m zero in the window
};

TateFiltrationReport tate_filtration(const MixedComplex& m, int lo, int hi, int m_lo, int m_hi);

// --- Algebra level -----------------------------------------------------------

struct CyclicOptions {
  int bar_cap = 4;      // bar degree cap for weight pieces that are not finite
  int trunc = 4;        // first S-truncation for such pieces
  int persistence = 2;
  int hodge_max = 3;    // completed de Rham level for such pieces
};

enum class TatePiece { Periodic, Negative, Filtration, Graded };

/// One weight piece (nullopt: the unweighted algebra). Exact when the
/// algebra is positively graded; otherwise persistent over S-truncations
/// with the bar cap fixed, and cross-checked against cap + 1.
CyclicDims cyclic_dims(const FpAlgebra& a, std::optional<int> weight, TatePiece piece, int m, int lo, int hi,
                       const CyclicOptions& opt = {});

using WeightList = std::vector<std::optional<int>>;

/// 0..W for positive weights, -W..W for other weights, {nullopt} without weights.
WeightList default_weights(const FpAlgebra& a, int W);

struct HPRoute {
  std::map<int, Index> dims;
  std::map<std::optional<int>, std::map<int, Index>> by_weight;
  bool certified = true;
  std::string diagnostic;
};

HPRoute hp_via_bar(const FpAlgebra& a, const WeightList& weights, int lo, int hi, const CyclicOptions& opt = {});

struct HPDeRhamRoute : HPRoute {
  /// weight -> degree -> dim π_e of the Hodge-completed derived de Rham complex
  std::map<std::optional<int>, std::map<int, Index>> factors;
  /// weight -> searched degree band; π vanishes at both edges of it
  std::map<std::optional<int>, URange> band;
};

/// HP_d = Σ_n dim π_{d+2n}(Ω̂), weight by weight. Refuses (certified =
/// false, diagnostic set) when the support is not bounded inside the band.
HPDeRhamRoute hp_via_derham(const FpAlgebra& a, const WeightList& weights, int lo, int hi,
                            const CyclicOptions& opt = {});

struct RouteComparison {
  HPRoute bar;
  HPDeRhamRoute derham;
  std::vector<int> mismatched;
  std::string verdict;  // AGREE, DISAGREE or UNCERTIFIED
  bool agree() const { return verdict == "AGREE"; }
};

RouteComparison compare_routes(const FpAlgebra& a, const WeightList& weights, int lo, int hi,
                               const CyclicOptions& opt = {});

struct HkrFiltrationReport {
  std::map<int, std::map<int, Index>> fil;     // i -> d -> Σ_{n <= -i} π_{d+2n}
  std::map<int, std::map<int, Index>> graded;  // i -> d -> dim of Fil^i / Fil^{i+1}
  std::map<int, Index> total;                  // HP_d from the de Rham route
  std::optional<int> support_top;              // largest degree with π != 0
  bool graded_matches = true;                  // gr^i = π_{d-2i}
  std::string verdict;                         // EXHAUSTIVE-IN-WINDOW or NOT-EXHAUSTIVE-IN-WINDOW
};

HkrFiltrationReport hkr_filtration(const FpAlgebra& a, const WeightList& weights, int lo, int hi, int i_lo,
                                   int i_hi, const CyclicOptions& opt = {});

struct SplittingReport {
  std::map<int, std::map<int, Index>> tate;   // m -> d -> dim H_d(Fil^m HP)
  std::map<int, std::map<int, Index>> hodge;  // m -> d -> Σ_n dim H_{d+2n}(Fil_H^{m-n} Ω)
  bool ok = true;
};

/// Compares the u-adic filtration with the Hodge filtration of the
/// de Rham complex (smooth algebras).
SplittingReport tate_splitting(const FpAlgebra& a, const WeightList& weights, int lo, int hi, int m_lo, int m_hi,
                               const CyclicOptions& opt = {});

/// dim H_e(Fil_H^q Ω) of one weight piece of the classical de Rham complex.
std::map<int, Index> hodge_filtered_derham(const FpAlgebra& a, std::optional<int> weight, int q, int lo, int hi,
                                           const CyclicOptions& opt = {});

// --- Ring structure ----------------------------------------------------------

/// Σ_n a_n t^n at a finite level m of the Hodge tower; a_n is a cycle of
/// LΩ^{<= m} in degree degree + 2n. Only finite levels exist: the limit
/// element is never formed.
struct HPElement {
  int level = 0;
  int degree = 0;
  std::map<int, GcPoly> coeffs;
};

class HPRing {
public:
  /// Resolution certified through `max_degree`, weights 0..weight_bound.
  HPRing(const FpAlgebra& a, int level, int max_degree = 3, int weight_bound = 4, int trunc = 4);

  int level() const { return level_; }
  const DerivedDeRham& derived() const { return dr_; }

  HPElement one() const;
  /// a·t^n for a polynomial a of the algebra (not reduced to a class).
  HPElement from_polynomial(const Polynomial& p, int n = 0) const;
  HPElement from_coeffs(int degree, std::map<int, GcPoly> c) const;

  /// Cycle condition for every coefficient at this level.
  bool is_cycle(const HPElement& a) const;
  /// Equality of classes, coefficient by coefficient and weight by weight.
  bool equal(const HPElement& a, const HPElement& b) const;
  /// Representatives of a basis of π_e(LΩ^{<= level}) in one weight.
  std::vector<GcPoly> class_basis(int e, std::optional<int> weight) const;

  /// Random element of the given degree: for every t-power whose
  /// coefficient degree lies in [-level - 1, 1], a random combination of
  /// class representatives over the listed weights.
  HPElement sample(int degree, const std::vector<std::optional<int>>& weights, std::uint32_t seed) const;

  HPElement add(const HPElement& a, const HPElement& b) const;
  /// Terms of Hodge degree above the given level dropped.
  HPElement reduce(const HPElement& a, int level) const;

private:
  const ChainComplex& complex_for(std::optional<int> weight, int e, int trunc) const;
  std::map<std::optional<int>, GcPoly> split_by_weight(const GcPoly& p) const;

  FpAlgebra alg_;
  int level_;
  int trunc_;
  DerivedDeRham dr_;
  mutable std::map<std::tuple<std::optional<int>, int, int>, ChainComplex> cache_;
};

/// c_n = Σ_{i+j=n} a_i b_j, computed on chain representatives.
/// Throws std::logic_error on mismatched levels.
HPElement hp_ring_mul(const HPRing& ring, const HPElement& a, const HPElement& b);

}  // namespace cyclo
