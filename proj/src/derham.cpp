#include "cyclo/derham.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace cyclo {

int hodge_degree(unsigned mask) { return std::popcount(mask); }

Form poly_form(const Polynomial& f, unsigned mask) {
  Form w;
  for (const auto& [m, c] : f.terms()) w[{m, mask}] += c;
  return w;
}

namespace {

void add_to(Form& w, const FormIndex& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = w.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) w.erase(it);
  }
}

// dx_i ∧ dx_mask: sign from moving dx_i past the lower-index factors.
std::optional<std::pair<unsigned, int>> wedge_var(std::size_t i, unsigned mask) {
  unsigned bit = 1u << i;
  if (mask & bit) return std::nullopt;
  int sign = (std::popcount(mask & (bit - 1)) % 2 == 0) ? 1 : -1;
  return std::make_pair(mask | bit, sign);
}

// dx_a ∧ dx_b for disjoint masks.
std::optional<std::pair<unsigned, int>> wedge_masks(unsigned a, unsigned b) {
  if (a & b) return std::nullopt;
  // Count pairs (i in a, j in b) with i > j: each is one transposition.
  int inv = 0;
  for (unsigned x = a; x; x &= x - 1) {
    unsigned i = static_cast<unsigned>(std::countr_zero(x));
    inv += std::popcount(b & ((1u << i) - 1));
  }
  return std::make_pair(a | b, inv % 2 == 0 ? 1 : -1);
}

}  // namespace

Form differential(const Polynomial& f) {
  Form w;
  for (const auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Monomial q = m;
      --q[i];
      add_to(w, {q, 1u << i}, c * m[i]);
    }
  return w;
}

Form form_d(const Form& w) {
  Form out;
  for (const auto& [k, c] : w) {
    const auto& [m, mask] = k;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto wv = wedge_var(i, mask);
      if (!wv) continue;
      Monomial q = m;
      --q[i];
      add_to(out, {q, wv->first}, c * m[i] * wv->second);
    }
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  Form out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      auto wm = wedge_masks(ka.second, kb.second);
      if (!wm) continue;
      add_to(out, {mono_mul(ka.first, kb.first), wm->first}, ca * cb * wm->second);
    }
  return out;
}

Form operator+(const Form& a, const Form& b) {
  Form out = a;
  for (const auto& [k, c] : b) add_to(out, k, c);
  return out;
}

Key form_key(const Monomial& m, unsigned mask) {
  Key k(m.begin(), m.end());
  k.push_back(static_cast<int>(mask));
  return k;
}

FormIndex form_index(const Key& k) {
  return {Monomial(k.begin(), k.end() - 1), static_cast<unsigned>(k.back())};
}

bool positively_graded(const FpAlgebra& r) {
  if (!r.weights()) return false;
  return std::all_of(r.weights()->begin(), r.weights()->end(), [](int w) { return w > 0; });
}

namespace {

std::vector<unsigned> masks_of_size(std::size_t n, int p) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == p) out.push_back(m);
  return out;
}

int mask_weight(const std::vector<int>& w, unsigned mask) {
  int s = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (mask & (1u << i)) s += w[i];
  return s;
}

int mono_weight(const std::vector<int>& w, const Monomial& m) {
  int s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += w[i] * m[i];
  return s;
}

// Monomials of degree <= maxdeg (ascending degree), optionally of one weight.
std::vector<Monomial> monomials_upto(std::size_t n, int maxdeg, const std::vector<int>* weights,
                                     std::optional<int> weight) {
  std::vector<Monomial> out;
  for (int d = 0; d <= maxdeg; ++d)
    for (auto& m : monomials_of_degree(n, d))
      if (!weight || mono_weight(*weights, m) == *weight) out.push_back(std::move(m));
  return out;
}

// Ambient forms Ω_P truncated by a filter; shared by the de Rham and
// infinitesimal models.
class AmbientForms {
public:
  AmbientForms(const FpAlgebra& r, const FormFilter& filter, int max_hodge)
      : n_(r.nvars()), filter_(filter), max_hodge_(std::min<int>(max_hodge, static_cast<int>(r.nvars()))) {
    if (filter.weight) {
      if (!r.weights()) throw std::invalid_argument("weight filter requires algebra weights");
      weights_ = *r.weights();
    }
    if (n_ > 16) throw std::invalid_argument("too many variables for form masks");
    exact_weight_ = filter.weight && positively_graded(r);
    // Positive weights bound the degree by the weight itself.
    trunc_ = exact_weight_ ? std::max(0, *filter.weight) : filter.trunc;
  }

  int trunc() const { return trunc_; }
  int max_hodge() const { return max_hodge_; }

  ChainComplex build_basis() const {
    ChainComplex c(-static_cast<int>(n_), 0);
    for (int p = 0; p <= max_hodge_; ++p)
      for (unsigned mask : masks_of_size(n_, p)) {
        std::optional<int> w;
        if (filter_.weight) w = *filter_.weight - mask_weight(weights_, mask);
        for (const auto& m : monomials_upto(n_, trunc_ - p, weights_.empty() ? nullptr : &weights_, w))
          c.basis(-p).add(form_key(m, mask));
      }
    for (int p = 0; p <= static_cast<int>(n_); ++p) {
      std::vector<SparseVec> imgs;
      // Above max_hodge the target is divided out, so images vanish there.
      for (const auto& k : c.basis(-p).keys())
        imgs.push_back(p + 1 > max_hodge_ ? SparseVec{} : encode(c, form_d({{form_index(k), Rational(1)}}), -p - 1));
      c.set_boundary(-p, std::move(imgs));
    }
    return c;
  }

  SparseVec encode(const ChainComplex& c, const Form& w, int degree) const {
    std::vector<std::pair<Index, Rational>> e;
    for (const auto& [k, x] : w) {
      auto j = c.basis(degree).find(form_key(k.first, k.second));
      if (!j) throw std::logic_error("form outside the truncated basis");
      e.emplace_back(*j, x);
    }
    return make_sparse(std::move(e));
  }

  // Nominal degree / weight admissibility of m * G * dx_mask where G has the given
  // nominal degree and weight.
  std::vector<Monomial> multipliers(int nominal_deg, int g_weight, unsigned mask, int extra_deg) const {
    int budget = trunc_ - nominal_deg - hodge_degree(mask) - extra_deg;
    if (budget < 0) return {};
    std::optional<int> w;
    if (filter_.weight) w = *filter_.weight - g_weight - mask_weight(weights_, mask);
    return monomials_upto(n_, budget, weights_.empty() ? nullptr : &weights_, w);
  }

  int weight_of(const Polynomial& g) const {
    if (weights_.empty() || g.is_zero()) return 0;
    if (!g.is_homogeneous(weights_)) throw std::invalid_argument("generator is not weight-homogeneous");
    return mono_weight(weights_, g.terms().begin()->first);
  }

  std::size_t nvars() const { return n_; }

private:
  std::size_t n_;
  FormFilter filter_;
  int max_hodge_;
  std::vector<int> weights_;
  bool exact_weight_ = false;
  int trunc_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

KaehlerModel kaehler(const FpAlgebra& r, int p, int trunc) {
  KaehlerModel km;
  km.p = p;
  km.trunc = trunc;
  std::size_t n = r.nvars();
  if (p < 0 || p > static_cast<int>(n)) return km;
  auto masks = masks_of_size(n, p);
  for (unsigned mask : masks)
    for (const auto& m : monomials_upto(n, trunc, nullptr, std::nullopt)) km.basis.add(form_key(m, mask));
  auto encode = [&](const Form& w) {
    std::vector<std::pair<Index, Rational>> e;
    for (const auto& [k, x] : w) {
      auto j = km.basis.find(form_key(k.first, k.second));
      if (j) e.emplace_back(*j, x);
    }
    return make_sparse(std::move(e));
  };
  for (const auto& g : r.groebner_basis()) {
    int dg = g.degree();
    for (unsigned mask : masks)
      for (const auto& m : monomials_upto(n, trunc - dg, nullptr, std::nullopt))
        km.relations.push_back(encode(poly_form(g.times_monomial(m, 1), mask)));
    if (p == 0) continue;
    Form dgf = differential(g);
    for (unsigned mask : masks_of_size(n, p - 1))
      for (const auto& m : monomials_upto(n, trunc - (dg - 1), nullptr, std::nullopt))
        km.relations.push_back(encode(wedge(wedge(poly_form(Polynomial::monomial(m)), dgf), poly_form(Polynomial::constant(n, 1), mask))));
  }
  km.dim = km.basis.size() - span_rank(km.relations);
  return km;
}

// ---------------------------------------------------------------------------

ChainComplex DeRhamComplex::hodge_sub(int m) const {
  return restrict_keys(complex_, [m](int n, const Key&) { return n <= -m; });
}

ChainComplex DeRhamComplex::hodge_quotient(int m) const {
  return restrict_keys(complex_, [m](int n, const Key&) { return n >= -m; });
}

ChainComplex DeRhamComplex::graded(int m) const {
  return restrict_keys(complex_, [m](int n, const Key&) { return n == -m; });
}

SparseVec DeRhamComplex::encode(const Form& w) const {
  std::vector<std::pair<Index, Rational>> e;
  for (const auto& [k, x] : w) {
    int deg = -hodge_degree(k.second);
    auto j = complex_.basis(deg).find(form_key(k.first, k.second));
    if (!j) throw std::out_of_range("DeRhamComplex::encode: form outside truncation");
    e.emplace_back(*j, x);
  }
  return make_sparse(std::move(e));
}

DeRhamComplex de_rham_complex(const FpAlgebra& r, const FormFilter& filter) {
  AmbientForms amb(r, filter, static_cast<int>(r.nvars()));
  ChainComplex c = amb.build_basis();
  std::size_t n = r.nvars();
  for (int p = 0; p <= static_cast<int>(n); ++p) {
    std::vector<SparseVec> rel;
    for (const auto& g : r.groebner_basis()) {
      int gw = amb.weight_of(g);
      int gd = g.degree();
      for (unsigned mask : masks_of_size(n, p))
        for (const auto& m : amb.multipliers(gd, gw, mask, 0))
          rel.push_back(amb.encode(c, poly_form(g.times_monomial(m, 1), mask), -p));
      if (p == 0) continue;
      Form dgf = differential(g);
      for (unsigned mask : masks_of_size(n, p - 1))
        for (const auto& m : amb.multipliers(gd, gw, mask, 0))
          rel.push_back(amb.encode(c, wedge(wedge(poly_form(Polynomial::monomial(m)), dgf), poly_form(Polynomial::constant(n, 1), mask)), -p));
    }
    c.set_relations(-p, std::move(rel));
  }
  return DeRhamComplex(r, filter, std::move(c));
}

StableDims de_rham_homology(const FpAlgebra& r, std::optional<int> weight, int trunc, int lo, int hi,
                            int persistence) {
  if (weight && positively_graded(r)) {
    auto c = de_rham_complex(r, {0, weight}).complex();
    StableDims s;
    for (int n = lo; n <= hi; ++n) {
      s.dims[n] = homology(c, n).dim;
      s.stable[n] = true;
    }
    return s;
  }
  return stable_homology([&](int t) { return de_rham_complex(r, {t, weight}).complex(); }, trunc, 2, lo, hi,
                         persistence);
}

// ---------------------------------------------------------------------------

namespace {

// Products of exactly k generators (multisets), with nominal degree and weight.
struct IdealPower {
  Polynomial product;
  int nominal_degree;
};

std::vector<IdealPower> ideal_power(const std::vector<Polynomial>& gens, int k, std::size_t nvars) {
  std::vector<IdealPower> out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, int, Polynomial, int)> rec = [&](std::size_t start, int left, Polynomial acc,
                                                                   int deg) {
    if (left == 0) {
      out.push_back({std::move(acc), deg});
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) rec(i, left - 1, acc * gens[i], deg + gens[i].degree());
  };
  rec(0, k, Polynomial::constant(nvars, 1), 0);
  return out;
}

}  // namespace

ChainComplex infinitesimal_level(const FpAlgebra& ambient, const std::vector<Polynomial>& ideal, int level,
                                 const FormFilter& filter) {
  if (!ambient.groebner_basis().empty()) throw std::invalid_argument("infinitesimal_level: ambient must be a polynomial ring");
  std::size_t n = ambient.nvars();
  // Hodge degrees p >= level are divided out entirely.
  AmbientForms amb(ambient, filter, level - 1);
  ChainComplex c = amb.build_basis();
  for (int p = 0; p < level && p <= static_cast<int>(n); ++p) {
    std::vector<SparseVec> rel;
    for (const auto& g : ideal_power(ideal, level - p, n)) {
      int gw = amb.weight_of(g.product);
      for (unsigned mask : masks_of_size(n, p))
        for (const auto& m : amb.multipliers(g.nominal_degree, gw, mask, 0))
          rel.push_back(amb.encode(c, poly_form(g.product.times_monomial(m, 1), mask), -p));
    }
    c.set_relations(-p, std::move(rel));
  }
  return c;
}

InfinitesimalResult infinitesimal_cohomology(const FpAlgebra& ambient, const std::vector<Polynomial>& ideal,
                                             int lo, int hi, int first_level, int levels,
                                             const FormFilter& filter, int persistence) {
  auto run = [&](const FormFilter& f) {
    Tower t;
    for (int i = 0; i < levels; ++i) t.levels.push_back(infinitesimal_level(ambient, ideal, first_level + i, f));
    for (int i = 0; i + 1 < levels; ++i)
      t.maps.push_back(key_map(t.levels[static_cast<std::size_t>(i) + 1], t.levels[static_cast<std::size_t>(i)]));
    return tower_limit(t, lo, hi, persistence);
  };
  InfinitesimalResult res;
  res.top_level = first_level + levels - 1;
  auto lim = run(filter);
  res.dims = lim.lim;
  res.adic_stable = lim.stabilized;
  if (filter.weight && positively_graded(ambient)) {
    res.trunc_stable = true;
  } else {
    FormFilter bigger = filter;
    bigger.trunc += 2;
    res.trunc_stable = run(bigger).lim == lim.lim;
  }
  return res;
}

InfinitesimalResult infinitesimal_cohomology(const FpAlgebra& r, std::optional<int> weight, int lo, int hi,
                                             int levels, int trunc) {
  FpAlgebra ambient(r.variables(), {});
  if (r.weights()) ambient.set_weights(*r.weights());
  FormFilter f{trunc > 0 ? trunc : 6, weight};
  // A weight piece of P/I^N only settles once N exceeds the weight.
  if (weight) levels = std::max(levels, std::abs(*weight) + 3);
  return infinitesimal_cohomology(ambient, r.groebner_basis(), lo, hi, 1, levels, f);
}

}  // namespace cyclo
