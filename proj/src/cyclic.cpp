#include "cyclo/cyclic.hpp"

#include "cyclo/derham.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyclo {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

Key tate_key(int j, const Key& k) {
  Key out{j};
  out.insert(out.end(), k.begin(), k.end());
  return out;
}

}  // namespace

TateComplex tate_complex(const MixedComplex& mc, int lo, int hi, std::optional<int> j_min, std::optional<int> j_max) {
  const ChainComplex& c = mc.chains;
  int clo = c.lo(), k = c.hi();
  bool capped = !c.certified(k);
  TateComplex t;
  t.complex = ChainComplex(lo - 1, hi + 1);
  ChainComplex& x = t.complex;

  auto range = [&](int d) {
    URange r{ceil_div(clo - d, 2), floor_div(k - d, 2)};
    if (j_min) r.lo = std::max(r.lo, *j_min);
    if (j_max) r.hi = std::min(r.hi, *j_max);
    return r;
  };
  // offset[d][j] = index of the first chain of C_{d+2j} u^j
  std::map<int, std::map<int, Index>> offset;
  for (int d = lo - 1; d <= hi + 1; ++d) {
    URange r = range(d);
    if (d >= lo && d <= hi) t.u_range[d] = r;
    for (int j = r.lo; j <= r.hi; ++j) {
      int n = d + 2 * j;
      offset[d][j] = x.dim(d);
      for (const auto& key : c.basis(n).keys()) x.basis(d).add(tate_key(j, key));
    }
  }
  auto shifted = [&](int d, int j, const SparseVec& v) {
    SparseVec out;
    auto od = offset.find(d);
    if (od == offset.end()) return out;
    auto oj = od->second.find(j);
    if (oj == od->second.end()) return out;
    out.reserve(v.size());
    for (const auto& [i, a] : v) out.emplace_back(i + oj->second, a);
    return out;
  };

  for (int d = lo; d <= hi + 1; ++d) {
    URange r = range(d);
    std::vector<SparseVec> imgs;
    for (int j = r.lo; j <= r.hi; ++j) {
      int n = d + 2 * j;
      const auto& bn = c.boundary(n);
      const auto& Bn = mc.B(n);
      bool with_B = !(capped && n == k);
      for (Index i = 0; i < c.dim(n); ++i) {
        SparseVec v;
        if (!bn.empty()) v = shifted(d - 1, j, bn[static_cast<std::size_t>(i)]);
        if (with_B && !Bn.empty()) v = add(v, shifted(d - 1, j + 1, Bn[static_cast<std::size_t>(i)]));
        imgs.push_back(std::move(v));
      }
    }
    x.set_boundary(d, std::move(imgs));
  }

  if (capped) {
    // Y = C_k u^j + b(C_k) u^j
    for (int d = lo - 1; d <= hi + 1; ++d) {
      std::vector<SparseVec> rel;
      URange r = range(d);
      for (int j = r.lo; j <= r.hi; ++j) {
        int n = d + 2 * j;
        if (n == k)
          for (Index i = 0; i < c.dim(k); ++i) rel.push_back(shifted(d, j, SparseVec{{i, Rational(1)}}));
        if (n == k - 1)
          for (const auto& v : c.boundary(k))
            if (!v.empty()) rel.push_back(shifted(d, j, v));
      }
      x.set_relations(d, std::move(rel));
    }
  }
  x.set_certified(lo, hi);
  return t;
}

namespace {

CyclicDims dims_of(const TateComplex& t, int lo, int hi, bool capped, int k) {
  CyclicDims out;
  for (int d = lo; d <= hi; ++d) out.dims[d] = homology(t.complex, d).dim;
  out.u_range = t.u_range;
  if (capped) out.diagnostic = "good truncation below bar degree " + std::to_string(k);
  return out;
}

bool is_capped(const MixedComplex& m) { return !m.chains.certified(m.chains.hi()); }

}  // namespace

CyclicDims periodic(const MixedComplex& m, int lo, int hi) {
  return dims_of(tate_complex(m, lo, hi), lo, hi, is_capped(m), m.chains.hi());
}

CyclicDims negative_cyclic(const MixedComplex& m, int lo, int hi) {
  return dims_of(tate_complex(m, lo, hi, 0), lo, hi, is_capped(m), m.chains.hi());
}

std::map<int, Index> negative_to_periodic_rank(const MixedComplex& m, int lo, int hi) {
  auto neg = tate_complex(m, lo, hi, 0);
  auto per = tate_complex(m, lo, hi);
  auto f = key_map(neg.complex, per.complex);
  std::map<int, Index> out;
  for (int d = lo; d <= hi; ++d) out[d] = induced_rank(f, neg.complex, per.complex, d);
  return out;
}

TateFiltrationReport tate_filtration(const MixedComplex& m, int lo, int hi, int m_lo, int m_hi) {
  TateFiltrationReport r;
  const ChainComplex& c = m.chains;
  bool capped = is_capped(m);
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (c.certified(n)) r.hh[n] = homology(c, n).dim;
  for (int q = m_lo; q <= m_hi; ++q) {
    auto fil = tate_complex(m, lo, hi, q);
    auto gr = tate_complex(m, lo, hi, q, q);
    bool zero = true;
    for (int d = lo; d <= hi; ++d) {
      Index f = homology(fil.complex, d).dim;
      Index g = homology(gr.complex, d).dim;
      r.fil[q][d] = f;
      r.graded[q][d] = g;
      if (f != 0) zero = false;
      int n = d + 2 * q;
      Index expect = 0;
      if (r.hh.count(n))
        expect = r.hh[n];
      else if (!capped || n < c.lo() || n > c.hi())
        expect = 0;
      if (g != expect) r.graded_matches = false;
    }
    if (zero && !r.vanishing_from) r.vanishing_from = q;
    if (!zero) r.vanishing_from.reset();
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::pair<std::optional<int>, std::optional<int>> piece_range(TatePiece piece, int m) {
  switch (piece) {
    case TatePiece::Periodic:
      return {std::nullopt, std::nullopt};
    case TatePiece::Negative:
      return {0, std::nullopt};
    case TatePiece::Filtration:
      return {m, std::nullopt};
    case TatePiece::Graded:
      return {m, m};
  }
  return {std::nullopt, std::nullopt};
}

std::string weight_name(std::optional<int> w) { return w ? std::to_string(*w) : std::string("all"); }

}  // namespace

CyclicDims cyclic_dims(const FpAlgebra& a, std::optional<int> weight, TatePiece piece, int m, int lo, int hi,
                       const CyclicOptions& opt) {
  auto [jl, jh] = piece_range(piece, m);
  if (weight && positively_graded(a)) {
    BarComplex bar = bar_complex(a, {0, 0, weight});
    auto t = tate_complex(bar.mixed(), lo, hi, jl, jh);
    return dims_of(t, lo, hi, false, bar.options().max_degree);
  }
  int k = opt.bar_cap;
  auto build = [&](int cap) {
    return [&, cap](int T) {
      BarComplex bar = bar_complex(a, {cap, T, weight});
      return tate_complex(bar.mixed(), lo, hi, jl, jh).complex;
    };
  };
  int t0 = std::max(opt.trunc, weight ? std::abs(*weight) : 0);
  StableDims s = stable_homology(build(k), t0, 2, lo, hi, opt.persistence);
  CyclicDims out;
  out.dims = s.dims;
  out.certified = s.all_stable();
  BarComplex probe(a, {k, 0, weight});
  out.u_range = tate_complex(probe.mixed(), lo, hi, jl, jh).u_range;
  std::ostringstream diag;
  if (!out.certified) diag << "weight " << weight_name(weight) << ": truncations did not stabilize by S = " << s.last_trunc << "; ";
  // The cap is a modelling choice: the answer must not move when it grows.
  auto big = build(k + 1)(s.last_trunc);
  auto last = build(k)(s.last_trunc);
  for (int d = lo; d <= hi; ++d) {
    Index at_cap = homology(last, d).dim;
    Index above = homology(big, d).dim;
    if (at_cap != above) {
      out.certified = false;
      diag << "weight " << weight_name(weight) << ": degree " << d << " changes with the bar cap; ";
    }
  }
  out.diagnostic = diag.str();
  return out;
}

WeightList default_weights(const FpAlgebra& a, int W) {
  WeightList out;
  if (!a.weights()) return {std::nullopt};
  if (positively_graded(a)) {
    for (int w = 0; w <= W; ++w) out.push_back(w);
  } else {
    for (int w = -W; w <= W; ++w) out.push_back(w);
  }
  return out;
}

HPRoute hp_via_bar(const FpAlgebra& a, const WeightList& weights, int lo, int hi, const CyclicOptions& opt) {
  HPRoute r;
  for (int d = lo; d <= hi; ++d) r.dims[d] = 0;
  for (auto w : weights) {
    auto c = cyclic_dims(a, w, TatePiece::Periodic, 0, lo, hi, opt);
    r.by_weight[w] = c.dims;
    for (int d = lo; d <= hi; ++d) r.dims[d] += c.dims[d];
    if (!c.certified) r.certified = false;
    r.diagnostic += c.diagnostic;
  }
  return r;
}

namespace {

URange derham_band(const FpAlgebra& a, std::optional<int> w) {
  if (w && positively_graded(a)) return {-std::abs(*w) - 2, std::abs(*w) + 2};
  return {-static_cast<int>(a.nvars()) - 2, 2};
}

}  // namespace

HPDeRhamRoute hp_via_derham(const FpAlgebra& a, const WeightList& weights, int lo, int hi,
                            const CyclicOptions& opt) {
  HPDeRhamRoute r;
  for (int d = lo; d <= hi; ++d) r.dims[d] = 0;
  std::ostringstream diag;
  for (auto w : weights) {
    URange band = derham_band(a, w);
    r.band[w] = band;
    // Representatives at Hodge level m carry powers of even dg's; they need
    // room of about 2m in the truncation.
    int trunc = std::max(opt.trunc, 2 * opt.hodge_max);
    auto c = completed_derham_homotopy(a, w, band.lo, band.hi, opt.hodge_max, trunc, opt.persistence);
    r.factors[w] = c.dims;
    if (!c.hodge_stable || !c.trunc_stable) {
      r.certified = false;
      diag << "weight " << weight_name(w) << ": completed de Rham not stable; ";
    }
    if (c.dims[band.lo] != 0 || c.dims[band.hi] != 0) {
      r.certified = false;
      diag << "weight " << weight_name(w) << ": support reaches the band edge; ";
    }
    auto& bw = r.by_weight[w];
    for (int d = lo; d <= hi; ++d) {
      Index s = 0;
      for (int e = band.lo; e <= band.hi; ++e)
        if (((e - d) % 2 + 2) % 2 == 0) s += c.dims[e];
      bw[d] = s;
      r.dims[d] += s;
    }
  }
  r.diagnostic = diag.str();
  return r;
}

RouteComparison compare_routes(const FpAlgebra& a, const WeightList& weights, int lo, int hi,
                               const CyclicOptions& opt) {
  RouteComparison c;
  c.bar = hp_via_bar(a, weights, lo, hi, opt);
  c.derham = hp_via_derham(a, weights, lo, hi, opt);
  for (auto w : weights)
    for (int d = lo; d <= hi; ++d)
      if (c.bar.by_weight[w][d] != c.derham.by_weight[w][d]) {
        if (std::find(c.mismatched.begin(), c.mismatched.end(), d) == c.mismatched.end()) c.mismatched.push_back(d);
      }
  std::sort(c.mismatched.begin(), c.mismatched.end());
  if (!c.mismatched.empty())
    c.verdict = "DISAGREE";
  else if (!c.bar.certified || !c.derham.certified)
    c.verdict = "UNCERTIFIED";
  else
    c.verdict = "AGREE";
  return c;
}

HkrFiltrationReport hkr_filtration(const FpAlgebra& a, const WeightList& weights, int lo, int hi, int i_lo,
                                   int i_hi, const CyclicOptions& opt) {
  HkrFiltrationReport r;
  auto route = hp_via_derham(a, weights, lo, hi, opt);
  r.total = route.dims;
  // π summed over weights
  std::map<int, Index> pi;
  int band_lo = 0, band_hi = 0;
  for (const auto& [w, f] : route.factors)
    for (const auto& [e, n] : f) {
      pi[e] += n;
      band_lo = std::min(band_lo, e);
      band_hi = std::max(band_hi, e);
      if (n != 0 && (!r.support_top || e > *r.support_top)) r.support_top = e;
    }
  auto pi_at = [&](int e) { return pi.count(e) ? pi[e] : Index(0); };
  for (int i = i_lo; i <= i_hi + 1; ++i)
    for (int d = lo; d <= hi; ++d) {
      Index s = 0;
      // n <= -i, d + 2n inside the band
      for (int n = -i; d + 2 * n >= band_lo; --n) s += pi_at(d + 2 * n);
      r.fil[i][d] = s;
    }
  for (int i = i_lo; i <= i_hi; ++i)
    for (int d = lo; d <= hi; ++d) {
      r.graded[i][d] = r.fil[i][d] - r.fil[i + 1][d];
      if (r.graded[i][d] != pi_at(d - 2 * i)) r.graded_matches = false;
    }
  r.fil.erase(i_hi + 1);
  // Exhaustive in the window: the partial products at i_lo already carry
  // all of HP, which needs π bounded above by -2 i_lo + (smallest d).
  bool exhaustive = route.certified && r.graded_matches;
  for (int d = lo; d <= hi; ++d)
    if (r.fil[i_lo][d] != r.total[d]) exhaustive = false;
  if (r.support_top && *r.support_top > lo - 2 * i_lo) exhaustive = false;
  r.verdict = exhaustive ? "EXHAUSTIVE-IN-WINDOW" : "NOT-EXHAUSTIVE-IN-WINDOW";
  return r;
}

std::map<int, Index> hodge_filtered_derham(const FpAlgebra& a, std::optional<int> weight, int q, int lo, int hi,
                                           const CyclicOptions& opt) {
  std::map<int, Index> out;
  if (weight && positively_graded(a)) {
    auto c = de_rham_complex(a, {0, weight}).hodge_sub(q);
    for (int e = lo; e <= hi; ++e) out[e] = c.in_window(e) ? homology(c, e).dim : 0;
    return out;
  }
  int t0 = std::max(opt.trunc, weight ? std::abs(*weight) : 0);
  auto s = stable_homology([&](int t) { return de_rham_complex(a, {t, weight}).hodge_sub(q); }, t0, 2, lo, hi,
                           opt.persistence);
  return s.dims;
}

SplittingReport tate_splitting(const FpAlgebra& a, const WeightList& weights, int lo, int hi, int m_lo, int m_hi,
                               const CyclicOptions& opt) {
  SplittingReport r;
  int nv = static_cast<int>(a.nvars());
  for (int m = m_lo; m <= m_hi; ++m)
    for (int d = lo; d <= hi; ++d) r.tate[m][d] = r.hodge[m][d] = 0;
  for (auto w : weights) {
    // H_e(Fil_H^q Ω) lives in e in [-nv, 0]; q <= 0 is everything, q > nv nothing.
    std::map<int, std::map<int, Index>> fh;
    for (int q = 0; q <= nv + 1; ++q) fh[q] = hodge_filtered_derham(a, w, q, -nv, 0, opt);
    auto fil_h = [&](int q, int e) -> Index {
      if (e < -nv || e > 0) return 0;
      return fh[std::clamp(q, 0, nv + 1)][e];
    };
    for (int m = m_lo; m <= m_hi; ++m) {
      auto t = cyclic_dims(a, w, TatePiece::Filtration, m, lo, hi, opt);
      for (int d = lo; d <= hi; ++d) {
        r.tate[m][d] += t.dims[d];
        Index s = 0;
        // d + 2n in [-nv, 0]
        for (int n = ceil_div(-nv - d, 2); d + 2 * n <= 0; ++n) s += fil_h(m - n, d + 2 * n);
        r.hodge[m][d] += s;
      }
    }
  }
  r.ok = r.tate == r.hodge;
  return r;
}


// ---------------------------------------------------------------------------

namespace {

int sdeg_of(const GcAlgebra& a, const GcPoly& p) {
  int s = 0;
  for (const auto& [m, c] : p) s = std::max(s, a.sdeg(m));
  return s;
}

GcPoly drop_hodge(const GcAlgebra& a, const GcPoly& p, int level) {
  GcPoly out;
  for (const auto& [m, c] : p)
    if (a.hodge(m) <= level) out.emplace(m, c);
  return out;
}

}  // namespace

HPRing::HPRing(const FpAlgebra& a, int level, int max_degree, int weight_bound, int trunc)
    : alg_(a), level_(level), trunc_(trunc), dr_(default_resolution(a, max_degree, weight_bound)) {
  if (level < 0) throw std::invalid_argument("HPRing: negative truncation level");
}

const ChainComplex& HPRing::complex_for(std::optional<int> weight, int e, int trunc) const {
  auto key = std::make_tuple(weight, e, trunc);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  GcTruncation t;
  t.weight = weight;
  t.trunc = trunc;
  t.deg_lo = e - 1;
  t.deg_hi = e + 1;
  return cache_.emplace(key, dr_.level(level_, t)).first->second;
}

std::map<std::optional<int>, GcPoly> HPRing::split_by_weight(const GcPoly& p) const {
  std::map<std::optional<int>, GcPoly> out;
  const GcAlgebra& g = dr_.algebra();
  for (const auto& [m, c] : p) {
    std::optional<int> w;
    if (alg_.weights()) w = g.weight(m);
    out[w].emplace(m, c);
  }
  return out;
}

HPElement HPRing::one() const { return from_polynomial(alg_.one(), 0); }

HPElement HPRing::from_polynomial(const Polynomial& p, int n) const {
  HPElement e;
  e.level = level_;
  e.degree = -2 * n;
  GcPoly c = dr_.from_polynomial(alg_.normal_form(p));
  if (!c.empty()) e.coeffs[n] = std::move(c);
  return e;
}

HPElement HPRing::from_coeffs(int degree, std::map<int, GcPoly> c) const {
  HPElement e;
  e.level = level_;
  e.degree = degree;
  for (auto& [n, p] : c) {
    for (const auto& [m, x] : p)
      if (dr_.algebra().degree(m) != degree + 2 * n)
        throw std::invalid_argument("HPElement coefficient of the wrong degree");
    if (!p.empty()) e.coeffs[n] = drop_hodge(dr_.algebra(), p, level_);
  }
  return e;
}

bool HPRing::is_cycle(const HPElement& a) const {
  for (const auto& [n, p] : a.coeffs)
    if (!drop_hodge(dr_.algebra(), dr_.apply(p), a.level).empty()) return false;
  return true;
}

HPElement HPRing::add(const HPElement& a, const HPElement& b) const {
  if (a.level != b.level || a.degree != b.degree) throw std::invalid_argument("HPRing::add: mismatched elements");
  HPElement out = a;
  for (const auto& [n, p] : b.coeffs) {
    GcPoly s = gc_add(out.coeffs[n], p);
    if (s.empty())
      out.coeffs.erase(n);
    else
      out.coeffs[n] = std::move(s);
  }
  return out;
}

bool HPRing::equal(const HPElement& a, const HPElement& b) const {
  if (a.level != b.level || a.level != level_) throw std::invalid_argument("HPRing::equal: elements of another level");
  if (a.degree != b.degree) return a.coeffs.empty() && b.coeffs.empty();
  HPElement neg = b;
  for (auto& [n, p] : neg.coeffs) p = gc_scale(p, Rational(-1));
  HPElement diff = add(a, neg);
  for (const auto& [n, p] : diff.coeffs) {
    int e = a.degree + 2 * n;
    for (const auto& [w, piece] : split_by_weight(p)) {
      int t = std::max(trunc_, sdeg_of(dr_.algebra(), piece));
      const ChainComplex& c = complex_for(w, e, t);
      HomologyCoordinates hc(c, e);
      if (!hc.is_boundary(gc_encode(c, dr_.algebra(), piece))) return false;
    }
  }
  return true;
}

std::vector<GcPoly> HPRing::class_basis(int e, std::optional<int> weight) const {
  const ChainComplex& c = complex_for(weight, e, trunc_);
  std::vector<GcPoly> out;
  if (!c.in_window(e)) return out;
  for (const auto& z : homology(c, e, true).representatives) out.push_back(gc_decode(c, e, z));
  return out;
}

HPElement HPRing::sample(int degree, const std::vector<std::optional<int>>& weights, std::uint32_t seed) const {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::map<int, GcPoly> c;
  for (int e = -level_ - 1; e <= 1; ++e) {
    if (((e - degree) % 2 + 2) % 2 != 0) continue;
    int n = (e - degree) / 2;
    for (auto w : weights)
      for (const auto& z : class_basis(e, w)) c[n] = gc_add(c[n], gc_scale(z, Rational(coef(rng))));
  }
  return from_coeffs(degree, std::move(c));
}

HPElement HPRing::reduce(const HPElement& a, int level) const {
  if (level > a.level) throw std::invalid_argument("HPRing::reduce: can only go down the tower");
  HPElement out;
  out.level = level;
  out.degree = a.degree;
  for (const auto& [n, p] : a.coeffs) {
    GcPoly q = drop_hodge(dr_.algebra(), p, level);
    if (!q.empty()) out.coeffs[n] = std::move(q);
  }
  return out;
}

HPElement hp_ring_mul(const HPRing& ring, const HPElement& a, const HPElement& b) {
  if (a.level != b.level || a.level != ring.level()) throw std::logic_error("hp_ring_mul: levels differ");
  const GcAlgebra& g = ring.derived().algebra();
  HPElement out;
  out.level = a.level;
  out.degree = a.degree + b.degree;
  for (const auto& [i, p] : a.coeffs)
    for (const auto& [j, q] : b.coeffs) {
      GcPoly prod = drop_hodge(g, g.mul(p, q), a.level);
      for (const auto& [m, x] : prod)
        if (g.degree(m) != out.degree + 2 * (i + j)) throw std::logic_error("hp_ring_mul: coefficient left its degree");
      GcPoly s = gc_add(out.coeffs[i + j], prod);
      if (s.empty())
        out.coeffs.erase(i + j);
      else
        out.coeffs[i + j] = std::move(s);
    }
  return out;
}

}  // namespace cyclo
