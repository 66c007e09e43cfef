#include "cyclo/resolve.hpp"

#include "cyclo/derham.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyclo {

namespace {

void gc_add_term(GcPoly& p, const GcMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

}  // namespace

GcPoly gc_add(const GcPoly& a, const GcPoly& b) {
  GcPoly out = a;
  for (const auto& [m, c] : b) gc_add_term(out, m, c);
  return out;
}

GcPoly gc_scale(const GcPoly& a, const Rational& c) {
  GcPoly out;
  if (c == 0) return out;
  for (const auto& [m, x] : a) out.emplace(m, x * c);
  return out;
}

int GcAlgebra::degree(const GcMonomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
  return d;
}

int GcAlgebra::weight(const GcMonomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].weight;
  return d;
}

int GcAlgebra::sdeg(const GcMonomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].sdeg;
  return d;
}

int GcAlgebra::hodge(const GcMonomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].hodge;
  return d;
}

GcPoly GcAlgebra::one() const { return {{GcMonomial(gens_.size(), 0), Rational(1)}}; }

GcPoly GcAlgebra::gen(std::size_t i) const {
  GcMonomial m(gens_.size(), 0);
  m.at(i) = 1;
  return {{m, Rational(1)}};
}

std::optional<std::pair<GcMonomial, int>> GcAlgebra::mul_monomials(const GcMonomial& a, const GcMonomial& b) const {
  GcMonomial r(gens_.size());
  int swaps = 0;
  int odd_in_a_after = 0;  // odd factors of a with index > j, scanning j downwards
  for (std::size_t j = gens_.size(); j-- > 0;) {
    if (gens_[j].odd()) {
      if (a[j] > 0 && b[j] > 0) return std::nullopt;
      if (b[j] > 0) swaps += odd_in_a_after;
      if (a[j] > 0) ++odd_in_a_after;
    }
    r[j] = a[j] + b[j];
  }
  return std::make_pair(std::move(r), swaps % 2 == 0 ? 1 : -1);
}

GcPoly GcAlgebra::mul(const GcPoly& a, const GcPoly& b) const {
  GcPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto r = mul_monomials(ma, mb);
      if (r) gc_add_term(out, r->first, ca * cb * r->second);
    }
  return out;
}

GcPoly GcAlgebra::derive(const std::vector<GcPoly>& on_generators, const GcPoly& p) const {
  GcPoly out;
  for (const auto& [m, c] : p) {
    int prefix_degree = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!on_generators[i].empty()) {
        GcMonomial left(m.size(), 0), right(m.size(), 0);
        for (std::size_t k = 0; k < i; ++k) left[k] = m[k];
        left[i] = m[i] - 1;
        for (std::size_t k = i + 1; k < m.size(); ++k) right[k] = m[k];
        Rational coef = c * m[i] * (prefix_degree % 2 == 0 ? 1 : -1);
        GcPoly term = mul(mul({{left, coef}}, on_generators[i]), {{right, Rational(1)}});
        for (const auto& [t, x] : term) gc_add_term(out, t, x);
      }
      prefix_degree += m[i] * gens_[i].degree;
    }
  }
  return out;
}

std::string GcAlgebra::format(const GcPoly& p) const {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) {
        os << "*" << gens_[i].name;
        if (m[i] > 1) os << "^" << m[i];
      }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

SemifreeCDGA::SemifreeCDGA(const FpAlgebra& target) : target_(target) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < target.nvars(); ++i) {
    Generator g;
    g.name = target.variables()[i];
    g.degree = 0;
    g.weight = target.weights() ? (*target.weights())[i] : 0;
    g.sdeg = 1;
    gens.push_back(g);
  }
  alg_ = GcAlgebra(gens);
  delta_.assign(gens.size(), GcPoly{});
}

void SemifreeCDGA::add_generator(const std::string& name, int degree, const GcPoly& d) {
  Generator g;
  g.name = name;
  g.degree = degree;
  g.sdeg = 1;
  bool first = true;
  for (const auto& [m, c] : d) {
    if (alg_.degree(m) != degree - 1) throw std::invalid_argument("add_generator: differential has wrong degree");
    int w = alg_.weight(m);
    if (first) g.weight = w;
    else if (w != g.weight && target_.weights())
      throw std::invalid_argument("add_generator: differential is not weight-homogeneous");
    first = false;
    g.sdeg = std::max(g.sdeg, alg_.sdeg(m));
  }
  if (!alg_.derive(delta_, d).empty()) throw std::invalid_argument("add_generator: differential is not a cycle");
  auto gens = alg_.generators();
  gens.push_back(g);
  // Re-embed existing data with one more slot.
  auto widen = [](const GcPoly& p) {
    GcPoly out;
    for (const auto& [m, c] : p) {
      GcMonomial w = m;
      w.push_back(0);
      out.emplace(std::move(w), c);
    }
    return out;
  };
  for (auto& p : delta_) p = widen(p);
  delta_.push_back(widen(d));
  alg_ = GcAlgebra(std::move(gens));
}

bool SemifreeCDGA::differential_squares_to_zero() const {
  for (const auto& d : delta_)
    if (!alg_.derive(delta_, d).empty()) return false;
  return true;
}

int SemifreeCDGA::max_generator_degree() const {
  int d = 0;
  for (const auto& g : alg_.generators()) d = std::max(d, g.degree);
  return d;
}

Index SemifreeCDGA::generators_in_degree(int d) const {
  return std::count_if(alg_.generators().begin(), alg_.generators().end(),
                       [d](const Generator& g) { return g.degree == d; });
}

GcPoly SemifreeCDGA::from_polynomial(const Polynomial& p) const {
  GcPoly out;
  for (const auto& [m, c] : p.terms()) {
    GcMonomial g(alg_.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) g[i] = m[i];
    gc_add_term(out, g, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

Key gc_key(const GcMonomial& m) { return Key(m.begin(), m.end()); }

namespace {

std::vector<GcMonomial> enumerate_monomials(const GcAlgebra& a, const GcTruncation& t, bool by_weight) {
  const auto& gens = a.generators();
  std::vector<GcMonomial> out;
  GcMonomial cur(gens.size(), 0);
  int target_weight = t.weight.value_or(0);
  std::function<void(std::size_t, int, int, int, int)> rec = [&](std::size_t i, int budget, int weight, int hodge,
                                                                int degree) {
    if (i == gens.size()) {
      if (t.weight && weight != target_weight) return;
      if (degree < t.deg_lo || degree > t.deg_hi) return;
      out.push_back(cur);
      return;
    }
    const auto& g = gens[i];
    int cost = by_weight ? g.weight : g.sdeg;
    int max_e = g.odd() ? (budget >= cost ? 1 : 0) : budget / std::max(1, cost);
    if (g.hodge > 0 && t.hodge_max >= 0) max_e = std::min(max_e, (t.hodge_max - hodge) / g.hodge);
    for (int e = 0; e <= max_e; ++e) {
      cur[i] = e;
      rec(i + 1, budget - e * cost, weight + e * g.weight, hodge + e * g.hodge, degree + e * g.degree);
    }
    cur[i] = 0;
  };
  int budget = by_weight ? target_weight : t.trunc;
  rec(0, budget, 0, 0, 0);
  return out;
}

}  // namespace

ChainComplex gc_complex(const GcAlgebra& a, const std::vector<GcPoly>& d, const GcTruncation& t) {
  bool by_weight = t.weight.has_value() && !a.generators().empty() &&
                   std::all_of(a.generators().begin(), a.generators().end(),
                               [](const Generator& g) { return g.weight > 0; });
  if (!by_weight)
    for (const auto& g : a.generators())
      if (g.sdeg < 1) throw std::invalid_argument("gc_complex: generator with sdeg < 1 needs positive weights");
  auto monos = enumerate_monomials(a, t, by_weight);
  int lo = t.deg_hi, hi = t.deg_lo;
  for (const auto& m : monos) {
    int dg = a.degree(m);
    lo = std::min(lo, dg);
    hi = std::max(hi, dg);
  }
  if (monos.empty()) return ChainComplex(0, -1);
  ChainComplex c(lo, hi);
  std::sort(monos.begin(), monos.end());
  for (const auto& m : monos) c.basis(a.degree(m)).add(gc_key(m));
  for (int n = lo; n <= hi; ++n) {
    std::vector<SparseVec> imgs;
    for (const auto& k : c.basis(n).keys()) {
      GcPoly img = a.derive(d, {{GcMonomial(k.begin(), k.end()), Rational(1)}});
      std::vector<std::pair<Index, Rational>> e;
      for (const auto& [m, x] : img) {
        if (t.hodge_max >= 0 && a.hodge(m) > t.hodge_max) continue;
        auto j = std::as_const(c).basis(n - 1).find(gc_key(m));
        if (!j) {
          if (n - 1 < lo) continue;
          throw std::logic_error("gc_complex: differential leaves the truncation");
        }
        e.emplace_back(*j, x);
      }
      imgs.push_back(make_sparse(std::move(e)));
    }
    c.set_boundary(n, std::move(imgs));
  }
  // Degrees cut by the requested window lose cycles or boundaries.
  c.set_certified(lo == t.deg_lo ? lo + 1 : lo, hi == t.deg_hi ? hi - 1 : hi);
  return c;
}

SparseVec gc_encode(const ChainComplex& c, const GcAlgebra& a, const GcPoly& p) {
  std::vector<std::pair<Index, Rational>> e;
  std::optional<int> deg;
  for (const auto& [m, x] : p) {
    int d = a.degree(m);
    if (deg && *deg != d) throw std::invalid_argument("gc_encode: inhomogeneous element");
    deg = d;
    auto j = c.basis(d).find(gc_key(m));
    if (!j) throw std::out_of_range("gc_encode: monomial outside the truncation");
    e.emplace_back(*j, x);
  }
  return make_sparse(std::move(e));
}

GcPoly gc_decode(const ChainComplex& c, int degree, const SparseVec& v) {
  GcPoly out;
  for (const auto& [i, x] : v) {
    const auto& k = c.basis(degree).key(i);
    gc_add_term(out, GcMonomial(k.begin(), k.end()), x);
  }
  return out;
}

// ---------------------------------------------------------------------------

SemifreeCDGA koszul_cdga(const FpAlgebra& p, const std::vector<Polynomial>& fs) {
  SemifreeCDGA a(p);
  for (std::size_t j = 0; j < fs.size(); ++j) a.add_generator("e" + std::to_string(j + 1), 1, a.from_polynomial(fs[j]));
  return a;
}

namespace {

Index target_weight_dim(const FpAlgebra& r, int w) {
  Index n = 0;
  for (const auto& m : r.monomial_basis(std::max(0, w)).monomials)
    if (r.weight(m) == w) ++n;
  return n;
}

}  // namespace

ResolutionCertificate certify_resolution(const SemifreeCDGA& a, int max_degree, int weight_bound) {
  if (!positively_graded(a.target())) throw std::invalid_argument("certify_resolution: requires positive weights");
  ResolutionCertificate cert;
  cert.max_degree = max_degree;
  cert.weight_bound = weight_bound;
  cert.h0_matches = true;
  cert.acyclic = true;
  for (int w = 0; w <= weight_bound; ++w) {
    GcTruncation t;
    t.weight = w;
    t.deg_lo = 0;
    t.deg_hi = max_degree + 1;
    auto c = gc_complex(a.algebra(), a.differential(), t);
    if (homology(c, 0).dim != target_weight_dim(a.target(), w)) cert.h0_matches = false;
    for (int i = 1; i <= max_degree; ++i)
      if (homology(c, i).dim != 0) {
        cert.acyclic = false;
        if (!cert.failing_degree || *cert.failing_degree > i) cert.failing_degree = i;
      }
  }
  return cert;
}

SemifreeCDGA tate_resolution(const FpAlgebra& r, int max_degree, int weight_bound) {
  if (max_degree < 1) throw std::invalid_argument("tate_resolution: max_degree >= 1 required");
  if (!positively_graded(r)) throw std::invalid_argument("tate_resolution: requires positive weights");
  SemifreeCDGA a = koszul_cdga(FpAlgebra(r), r.groebner_basis());
  for (int i = 1; i <= max_degree; ++i) {
    int added = 0;
    for (int w = 0; w <= weight_bound; ++w) {
      GcTruncation t;
      t.weight = w;
      t.deg_lo = i - 1;
      t.deg_hi = i + 1;
      auto c = gc_complex(a.algebra(), a.differential(), t);
      auto h = homology(c, i, true);
      for (const auto& z : h.representatives) {
        ++added;
        a.add_generator("g" + std::to_string(i + 1) + "_" + std::to_string(added), i + 1, gc_decode(c, i, z));
      }
    }
  }
  auto cert = certify_resolution(a, max_degree, weight_bound);
  if (!cert.h0_matches || !cert.acyclic) {
    std::ostringstream os;
    os << "tate_resolution: certification failed";
    if (cert.failing_degree) os << " in degree " << *cert.failing_degree;
    throw std::runtime_error(os.str());
  }
  return a;
}

SemifreeCDGA default_resolution(const FpAlgebra& r, int max_degree, int weight_bound) {
  if (r.groebner_basis().empty()) return SemifreeCDGA(r);
  // A single nonzero relation in a polynomial ring is a regular sequence.
  if (r.relations().size() == 1 || !positively_graded(r)) return koszul_cdga(r, r.relations());
  auto k = koszul_cdga(r, r.relations());
  auto cert = certify_resolution(k, max_degree, weight_bound);
  if (cert.h0_matches && cert.acyclic) return k;
  return tate_resolution(r, max_degree, weight_bound);
}

// ---------------------------------------------------------------------------

DerivedDeRham::DerivedDeRham(const SemifreeCDGA& res) : res_(res) {
  const auto& base = res.algebra().generators();
  std::size_t n = base.size();
  std::vector<Generator> gens = base;
  for (const auto& g : base) {
    Generator dg = g;
    dg.name = "d" + g.name;
    dg.degree = g.degree - 1;
    dg.hodge = 1;
    gens.push_back(dg);
  }
  alg_ = GcAlgebra(gens);
  auto widen = [&](const GcPoly& p) {
    GcPoly out;
    for (const auto& [m, c] : p) {
      GcMonomial w = m;
      w.resize(2 * n, 0);
      out.emplace(std::move(w), c);
    }
    return out;
  };
  std::vector<GcPoly> delta(2 * n), d(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = widen(res.differential()[i]);
    d[i] = alg_.gen(n + i);
  }
  for (std::size_t i = 0; i < n; ++i) delta[n + i] = gc_scale(alg_.derive(d, delta[i]), -1);
  total_.resize(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) total_[i] = gc_add(delta[i], d[i]);
}

GcPoly DerivedDeRham::from_polynomial(const Polynomial& p) const {
  GcPoly out;
  for (const auto& [m, c] : p.terms()) {
    GcMonomial g(alg_.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) g[i] = m[i];
    gc_add_term(out, g, c);
  }
  return out;
}

ChainComplex DerivedDeRham::level(int m, const GcTruncation& t) const {
  GcTruncation tt = t;
  tt.hodge_max = m;
  return gc_complex(alg_, total_, tt);
}

bool DerivedDeRham::positively_graded() const {
  return std::all_of(alg_.generators().begin(), alg_.generators().end(),
                     [](const Generator& g) { return g.weight > 0; });
}

// ---------------------------------------------------------------------------

CompletedDeRham completed_derham_homotopy(const FpAlgebra& r, std::optional<int> weight, int lo, int hi,
                                          int hodge_max, int trunc, int persistence) {
  CompletedDeRham out;
  bool graded = weight && positively_graded(r);
  int w = weight.value_or(0);
  int max_degree = std::max(2, hi + 2);
  SemifreeCDGA res = default_resolution(r, max_degree, graded ? std::max(w, 0) : 0);
  out.resolution_generators = static_cast<int>(res.algebra().size() - r.nvars());
  DerivedDeRham dr(res);
  GcTruncation t;
  t.weight = weight;
  t.trunc = trunc;
  t.deg_lo = lo - 1;
  t.deg_hi = hi + 1;
  if (graded) {
    // Every dg has weight >= 1, so levels m >= w coincide.
    int top = std::max(hodge_max, std::max(w, 0) + persistence);
    Tower tower;
    for (int m = 0; m <= top; ++m) tower.levels.push_back(dr.level(m, t));
    for (int m = 0; m < top; ++m)
      tower.maps.push_back(key_map(tower.levels[static_cast<std::size_t>(m) + 1], tower.levels[static_cast<std::size_t>(m)]));
    auto lim = tower_limit(tower, lo, hi, persistence);
    out.dims = lim.lim;
    out.lim1 = lim.lim1;
    out.hodge_stable = lim.stabilized;
    out.trunc_stable = true;
  } else {
    auto at_level = [&](int m) {
      return stable_homology([&](int tr) {
        GcTruncation u = t;
        u.trunc = tr;
        return dr.level(m, u);
      }, trunc, 2, lo, hi, persistence);
    };
    auto top = at_level(hodge_max);
    auto below = at_level(std::max(0, hodge_max - 1));
    out.dims = top.dims;
    for (int n = lo; n <= hi; ++n) out.lim1[n] = 0;
    out.trunc_stable = top.all_stable();
    out.hodge_stable = hodge_max >= 1 && top.dims == below.dims;
  }
  for (int n = lo; n <= hi; ++n)
    if (out.dims[n] > 0) out.top_degree = n;
  return out;
}

}  // namespace cyclo
