#pragma once

// Semifree commutative dg resolutions over Q and the derived de Rham
// complex computed from them.
//
// Degrees are homological. A generator's parity is its degree mod 2; odd
// generators square to zero and anticommute. The de Rham differential d
// lowers degree by one, so dg has degree |g| - 1 and opposite parity.

#include "cyclo/chain.hpp"
#include "cyclo/fpalgebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

struct Generator {
  std::string name;
  int degree = 0;   // homological
  int weight = 0;
  int sdeg = 1;     // nominal polynomial degree, >= 1; no differential raises it
  int hodge = 0;    // 1 for de Rham copies dg
  bool odd() const { return (degree % 2 + 2) % 2 == 1; }
};

/// Exponent vector over a generator list.
using GcMonomial = std::vector<int>;
using GcPoly = std::map<GcMonomial, Rational>;

/// Free graded-commutative algebra on a list of generators.
class GcAlgebra {
public:
  GcAlgebra() = default;
  explicit GcAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {}

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  int degree(const GcMonomial& m) const;
  int weight(const GcMonomial& m) const;
  int sdeg(const GcMonomial& m) const;
  int hodge(const GcMonomial& m) const;

  GcPoly one() const;
  GcPoly gen(std::size_t i) const;
  /// Product of monomials with the Koszul sign; nullopt when an odd
  /// generator would repeat.
  std::optional<std::pair<GcMonomial, int>> mul_monomials(const GcMonomial& a, const GcMonomial& b) const;
  GcPoly mul(const GcPoly& a, const GcPoly& b) const;
  /// Derivation of degree -1 determined by its values on generators.
  GcPoly derive(const std::vector<GcPoly>& on_generators, const GcPoly& p) const;

  std::string format(const GcPoly& p) const;

private:
  std::vector<Generator> gens_;
};

GcPoly gc_add(const GcPoly& a, const GcPoly& b);
GcPoly gc_scale(const GcPoly& a, const Rational& c);

/// Degree-0 generators are the variables of `target`; higher generators
/// carry a differential into lower-degree polynomials.
class SemifreeCDGA {
public:
  SemifreeCDGA() = default;
  explicit SemifreeCDGA(const FpAlgebra& target);

  const FpAlgebra& target() const { return target_; }
  const GcAlgebra& algebra() const { return alg_; }
  const std::vector<GcPoly>& differential() const { return delta_; }

  /// Appends a generator with the given differential (must be a cycle).
  void add_generator(const std::string& name, int degree, const GcPoly& d);
  GcPoly apply(const GcPoly& p) const { return alg_.derive(delta_, p); }

  /// δ² = 0 on every generator.
  bool differential_squares_to_zero() const;
  int max_generator_degree() const;
  Index generators_in_degree(int d) const;

  /// Image of a degree-0 polynomial in the target's variables.
  GcPoly from_polynomial(const Polynomial& p) const;

private:
  FpAlgebra target_;
  GcAlgebra alg_;
  std::vector<GcPoly> delta_;
};

/// Bounds for enumerating monomials of a free graded-commutative algebra.
struct GcTruncation {
  std::optional<int> weight;  // exact weight
  int trunc = 0;              // sdeg bound; ignored when positive weights bound everything
  int hodge_max = -1;         // -1: unbounded
  int deg_lo = -1000, deg_hi = 1000;
};

/// Chain complex of a truncation of (A, D) where D is a derivation given on
/// generators. Terms leaving the truncation through Hodge degree are
/// dropped (quotient by Fil^{m+1}); sdeg and weight are preserved by D.
ChainComplex gc_complex(const GcAlgebra& a, const std::vector<GcPoly>& d, const GcTruncation& t);
Key gc_key(const GcMonomial& m);
SparseVec gc_encode(const ChainComplex& c, const GcAlgebra& a, const GcPoly& p);
GcPoly gc_decode(const ChainComplex& c, int degree, const SparseVec& v);

SemifreeCDGA koszul_cdga(const FpAlgebra& p, const std::vector<Polynomial>& fs);

struct ResolutionCertificate {
  bool h0_matches = false;          // H_0 weight pieces equal the target's
  bool acyclic = false;             // H_1..H_max vanish
  std::optional<int> failing_degree;
  int max_degree = 0;
  int weight_bound = 0;
};

/// Checks H_0 = R and H_i = 0 (1 <= i <= max_degree) for weights 0..weight_bound.
/// Requires positive weights on the target.
ResolutionCertificate certify_resolution(const SemifreeCDGA& a, int max_degree, int weight_bound);

/// Kills surviving cycles degree by degree, weight by weight. Requires
/// positive weights. Throws std::runtime_error if certification fails.
SemifreeCDGA tate_resolution(const FpAlgebra& r, int max_degree, int weight_bound);

/// Koszul on the relations when certified acyclic, otherwise Tate.
SemifreeCDGA default_resolution(const FpAlgebra& r, int max_degree, int weight_bound);

/// Derived de Rham algebra of a resolution: generators g and dg, with
/// D = δ + d, δ(dg) = -d(δg).
class DerivedDeRham {
public:
  explicit DerivedDeRham(const SemifreeCDGA& res);

  const SemifreeCDGA& resolution() const { return res_; }
  const GcAlgebra& algebra() const { return alg_; }
  const std::vector<GcPoly>& total_differential() const { return total_; }
  GcPoly apply(const GcPoly& p) const { return alg_.derive(total_, p); }
  /// Lifts a polynomial in the target's variables.
  GcPoly from_polynomial(const Polynomial& p) const;

  /// LΩ^{<= m} restricted to one weight / sdeg truncation.
  ChainComplex level(int m, const GcTruncation& t) const;
  bool positively_graded() const;

private:
  SemifreeCDGA res_;
  GcAlgebra alg_;
  std::vector<GcPoly> total_;
};

struct CompletedDeRham {
  std::map<int, Index> dims;   // π_d of the Hodge-completed derived de Rham complex
  std::map<int, Index> lim1;
  bool hodge_stable = false;
  bool trunc_stable = false;
  /// Largest degree with nonzero π in the window (nullopt: all zero).
  std::optional<int> top_degree;
  int resolution_generators = 0;
};

/// One weight piece (or the unweighted algebra when weight is nullopt).
CompletedDeRham completed_derham_homotopy(const FpAlgebra& r, std::optional<int> weight, int lo, int hi,
                                          int hodge_max, int trunc, int persistence = 2);

}  // namespace cyclo
