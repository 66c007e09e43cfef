#pragma once

// Finitely presented commutative Q-algebras Q[x_1..x_n]/I with Gröbner
// normal forms under degree-reverse-lexicographic order.

#include "cyclo/qlinalg.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cyclo {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b);  // requires divides(b, a)
Monomial mono_lcm(const Monomial& a, const Monomial& b);

/// Strict "a comes before b" in descending degrevlex order, i.e. a > b.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

enum class MonomialOrder { DegRevLex };

class Polynomial {
public:
  using Terms = std::map<Monomial, Rational, DegRevLexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }
  int degree() const;  // -1 for zero
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  /// Same polynomial in a ring with more variables (new ones appended).
  Polynomial extended(std::size_t nvars) const;
  Polynomial pow(int e) const;

  /// Homogeneous for the given integer weights.
  bool is_homogeneous(const std::vector<int>& weights) const;

private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Literal syntax: identifiers, `^` with nonnegative integer exponents,
/// explicit `*`, `+`, `-`, parentheses, rational coefficients `a/b`.
/// Throws std::invalid_argument with a position on malformed input.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars);
std::string to_string(const Polynomial& p, const std::vector<std::string>& vars);

/// Reduced Gröbner basis (monic, interreduced, sorted by leading monomial).
std::vector<Polynomial> groebner(const std::vector<Polynomial>& relations,
                                 MonomialOrder order = MonomialOrder::DegRevLex);
/// Remainder of p on division by the basis; canonical when g is Gröbner.
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& g);
/// All S-polynomials reduce to zero.
bool buchberger_criterion(const std::vector<Polynomial>& g);

struct TruncatedBasis;

class FpAlgebra {
public:
  FpAlgebra() = default;
  FpAlgebra(std::vector<std::string> variables, std::vector<Polynomial> relations,
            MonomialOrder order = MonomialOrder::DegRevLex);
  FpAlgebra(const FpAlgebra& o);
  FpAlgebra& operator=(const FpAlgebra& o);

  /// Convenience: relations given in literal syntax.
  static FpAlgebra parse(std::vector<std::string> variables, const std::vector<std::string>& relations);

  std::size_t nvars() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<Polynomial>& groebner_basis() const { return groebner_; }
  MonomialOrder order() const { return order_; }

  Polynomial normal_form(const Polynomial& p) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  bool is_standard(const Monomial& m) const;
  /// Normal form of the product of two standard monomials (cached).
  const Polynomial& mul_standard(const Monomial& a, const Monomial& b) const;

  Polynomial zero() const { return Polynomial(nvars()); }
  Polynomial one() const { return Polynomial::constant(nvars(), 1); }
  Polynomial var(std::size_t i) const { return Polynomial::variable(nvars(), i); }
  Polynomial parse_element(const std::string& text) const;
  std::string format(const Polynomial& p) const { return to_string(p, variables_); }

  /// The unit ideal: 1 reduces to 0.
  bool is_zero_ring() const;
  /// Finite-dimensional over Q iff every variable has a pure power among
  /// the leading monomials.
  bool is_finite_dimensional() const;

  /// Integer weights making every relation homogeneous, if set.
  void set_weights(std::vector<int> w);
  const std::optional<std::vector<int>>& weights() const { return weights_; }
  bool relations_homogeneous(const std::vector<int>& w) const;
  int weight(const Monomial& m) const;  // requires weights

  /// Standard monomials of total degree <= maxdeg, ascending degrevlex.
  TruncatedBasis monomial_basis(int maxdeg) const;

private:
  std::vector<std::string> variables_;
  std::vector<Polynomial> relations_;
  std::vector<Polynomial> groebner_;
  MonomialOrder order_ = MonomialOrder::DegRevLex;
  std::optional<std::vector<int>> weights_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<Monomial, Monomial>, Polynomial> mul_cache_;
};

struct TruncatedBasis {
  int max_degree = 0;
  std::vector<Monomial> monomials;
};

/// All monomials in n variables of total degree exactly d.
std::vector<Monomial> monomials_of_degree(std::size_t n, int d);

/// R[f^{-1}] presented as R[t]/(t f - 1); the new variable is appended.
/// Weights, if set on R and f is weight-homogeneous, extend with
/// weight(t) = -weight(f).
FpAlgebra localization(const FpAlgebra& r, const Polynomial& f, const std::string& tname = "");

}  // namespace cyclo
