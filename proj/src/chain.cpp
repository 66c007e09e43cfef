#include "cyclo/chain.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cyclo {

std::size_t KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : k) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Index Basis::add(const Key& k) {
  auto [it, inserted] = index_.emplace(k, static_cast<Index>(keys_.size()));
  if (inserted) keys_.push_back(k);
  return it->second;
}

std::optional<Index> Basis::find(const Key& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {
const Basis kEmptyBasis;
const std::vector<SparseVec> kEmptyVecs;
}  // namespace

ChainComplex::ChainComplex(int lo, int hi)
    : lo_(lo),
      hi_(hi),
      cert_lo_(lo),
      cert_hi_(hi),
      bases_(static_cast<std::size_t>(std::max(0, hi - lo + 1))),
      boundaries_(bases_.size()),
      relations_(bases_.size()) {}

Basis& ChainComplex::basis(int n) {
  if (!in_window(n)) throw std::out_of_range("ChainComplex::basis: degree outside window");
  return bases_[static_cast<std::size_t>(n - lo_)];
}

const Basis& ChainComplex::basis(int n) const {
  if (!in_window(n)) return kEmptyBasis;
  return bases_[static_cast<std::size_t>(n - lo_)];
}

void ChainComplex::set_boundary(int n, std::vector<SparseVec> images) {
  if (!in_window(n)) throw std::out_of_range("ChainComplex::set_boundary: degree outside window");
  if (static_cast<Index>(images.size()) != dim(n))
    throw std::invalid_argument("ChainComplex::set_boundary: one image per basis vector required");
  boundaries_[static_cast<std::size_t>(n - lo_)] = std::move(images);
}

const std::vector<SparseVec>& ChainComplex::boundary(int n) const {
  if (!in_window(n)) return kEmptyVecs;
  const auto& b = boundaries_[static_cast<std::size_t>(n - lo_)];
  return b;
}

SparseMatrix ChainComplex::differential(int n) const {
  const auto& imgs = boundary(n);
  if (imgs.empty()) {
    SparseMatrix m(dim(n - 1), dim(n));
    return m;
  }
  return SparseMatrix::from_columns(dim(n - 1), imgs);
}

void ChainComplex::set_relations(int n, std::vector<SparseVec> rel) {
  if (!in_window(n)) throw std::out_of_range("ChainComplex::set_relations: degree outside window");
  relations_[static_cast<std::size_t>(n - lo_)] = std::move(rel);
}

const std::vector<SparseVec>& ChainComplex::relations(int n) const {
  if (!in_window(n)) return kEmptyVecs;
  return relations_[static_cast<std::size_t>(n - lo_)];
}

bool ChainComplex::is_quotient() const {
  for (const auto& r : relations_)
    if (!r.empty()) return true;
  return false;
}

int ChainComplex::total_dim() const {
  Index s = 0;
  for (const auto& b : bases_) s += b.size();
  return static_cast<int>(s);
}

const std::vector<SparseVec>& ChainMap::at(int n) const {
  auto it = components.find(n);
  if (it == components.end()) return kEmptyVecs;
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {

// Image of a vector under a map given by per-basis images.
SparseVec apply_images(const std::vector<SparseVec>& images, const SparseVec& v) {
  SparseVec out;
  for (const auto& [i, c] : v) {
    if (static_cast<std::size_t>(i) >= images.size()) continue;
    axpy(out, c, images[static_cast<std::size_t>(i)]);
  }
  return out;
}

bool in_range(const SparseVec& v, Index n) {
  for (const auto& e : v)
    if (e.first < 0 || e.first >= n) return false;
  return true;
}

}  // namespace

ValidationReport validate(const ChainComplex& c) {
  ValidationReport rep;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto& b = c.boundary(n);
    if (!b.empty() && static_cast<Index>(b.size()) != c.dim(n)) {
      rep = {false, n, "boundary image count does not match dimension"};
      return rep;
    }
    for (const auto& v : b)
      if (!in_range(v, c.dim(n - 1))) {
        rep = {false, n, "boundary image index out of range"};
        return rep;
      }
    for (const auto& v : c.relations(n))
      if (!in_range(v, c.dim(n))) {
        rep = {false, n, "relation index out of range"};
        return rep;
      }
  }
  for (int n = c.lo() + 1; n <= c.hi(); ++n) {
    const auto& bn = c.boundary(n);
    const auto& bn1 = c.boundary(n - 1);
    EchelonBasis y;
    for (const auto& v : c.relations(n - 2)) y.insert(v);
    for (const auto& v : bn) {
      auto dd = apply_images(bn1, v);
      if (!y.contains(dd)) {
        std::ostringstream os;
        os << "d_" << (n - 1) << " o d_" << n << " != 0";
        return {false, n, os.str()};
      }
    }
  }
  for (int n = c.lo(); n <= c.hi(); ++n) {
    EchelonBasis y;
    for (const auto& v : c.relations(n - 1)) y.insert(v);
    for (const auto& r : c.relations(n)) {
      if (!y.contains(apply_images(c.boundary(n), r))) {
        std::ostringstream os;
        os << "relation subspace not closed under d in degree " << n;
        return {false, n, os.str()};
      }
    }
  }
  return rep;
}

ValidationReport validate_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt) {
  for (int n = src.lo(); n <= src.hi(); ++n) {
    const auto& fn = f.at(n);
    const auto& fn1 = f.at(n - 1);
    EchelonBasis y;
    for (const auto& v : tgt.relations(n - 1)) y.insert(v);
    for (Index i = 0; i < src.dim(n); ++i) {
      SparseVec img = static_cast<std::size_t>(i) < fn.size() ? fn[static_cast<std::size_t>(i)] : SparseVec{};
      SparseVec lhs = apply_images(tgt.boundary(n), img);
      SparseVec rhs = src.boundary(n).empty() ? SparseVec{}
                                              : apply_images(fn1, src.boundary(n)[static_cast<std::size_t>(i)]);
      axpy(lhs, Rational(-1), rhs);
      if (!y.contains(lhs)) {
        std::ostringstream os;
        os << "chain map does not commute with d in degree " << n;
        return {false, n, os.str()};
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

std::vector<SparseVec> relative_cycles(const ChainComplex& c, int n) {
  Index dn = c.dim(n);
  if (dn == 0) return {};
  std::vector<SparseVec> vs;
  const auto& b = c.boundary(n);
  for (Index i = 0; i < dn; ++i) vs.push_back(b.empty() ? SparseVec{} : b[static_cast<std::size_t>(i)]);
  for (const auto& y : c.relations(n - 1)) vs.push_back(y);
  auto rels = relations_among(vs);
  std::vector<SparseVec> out;
  for (auto& r : rels) {
    SparseVec z;
    for (auto& e : r)
      if (e.first < dn) z.push_back(e);
    if (!z.empty()) out.push_back(std::move(z));
  }
  return out;
}

std::vector<SparseVec> relative_boundaries(const ChainComplex& c, int n) {
  std::vector<SparseVec> out;
  for (const auto& v : c.boundary(n + 1))
    if (!v.empty()) out.push_back(v);
  for (const auto& y : c.relations(n)) out.push_back(y);
  return out;
}

HomologyResult homology(const ChainComplex& c, int n, bool with_representatives) {
  HomologyResult res;
  res.degree = n;
  res.certified = c.certified(n);
  Index dn = c.dim(n);
  if (dn == 0) return res;
  const auto& yprev = c.relations(n - 1);
  Index rank_y = yprev.empty() ? 0 : span_rank(yprev);
  Index rank_dy = span_rank(c.boundary(n), yprev);
  Index dim_z = dn - (rank_dy - rank_y);
  auto bnd = relative_boundaries(c, n);
  if (!with_representatives) {
    res.dim = dim_z - span_rank(bnd);
    return res;
  }
  EchelonBasis eb;
  for (const auto& v : bnd) eb.insert(v);
  Index rank_b = eb.rank();
  for (auto& z : relative_cycles(c, n))
    if (eb.insert(z)) res.representatives.push_back(z);
  res.dim = dim_z - rank_b;
  if (static_cast<Index>(res.representatives.size()) != res.dim)
    throw std::logic_error("homology: representative count disagrees with rank bookkeeping");
  return res;
}

std::map<int, Index> homology_dims(const ChainComplex& c) {
  std::map<int, Index> out;
  for (int n = c.lo(); n <= c.hi(); ++n) out[n] = homology(c, n).dim;
  return out;
}

Index induced_rank(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, int n) {
  auto z = relative_cycles(src, n);
  if (z.empty()) return 0;
  const auto& fn = f.at(n);
  std::vector<SparseVec> fz;
  for (const auto& v : z) fz.push_back(apply_images(fn, v));
  auto bnd = relative_boundaries(tgt, n);
  EchelonBasis eb;
  for (const auto& v : bnd) eb.insert(v);
  Index base = eb.rank();
  for (auto& v : fz) eb.insert(std::move(v));
  return eb.rank() - base;
}

SparseMatrix induced_matrix(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt, int n) {
  auto hs = homology(src, n, true);
  HomologyCoordinates coords(tgt, n);
  std::vector<SparseVec> cols;
  for (const auto& z : hs.representatives) {
    auto c = coords.coordinates(apply_images(f.at(n), z));
    if (!c) throw std::logic_error("induced_matrix: image of a cycle is not a cycle");
    cols.push_back(dense_to_sparse(*c));
  }
  return SparseMatrix::from_columns(coords.dim(), cols);
}

ChainMap key_map(const ChainComplex& src, const ChainComplex& tgt) {
  ChainMap f;
  for (int n = src.lo(); n <= src.hi(); ++n) {
    std::vector<SparseVec> imgs;
    const auto& tb = tgt.basis(n);
    for (const auto& k : src.basis(n).keys()) {
      auto j = tb.find(k);
      imgs.push_back(j ? SparseVec{{*j, Rational(1)}} : SparseVec{});
    }
    f.components[n] = std::move(imgs);
  }
  return f;
}

ChainMap key_map(const ChainComplex& src, const ChainComplex& tgt,
                 const std::function<std::vector<std::pair<Key, Rational>>(int, const Key&)>& rule) {
  ChainMap f;
  for (int n = src.lo(); n <= src.hi(); ++n) {
    std::vector<SparseVec> imgs;
    const auto& tb = tgt.basis(n);
    for (const auto& k : src.basis(n).keys()) {
      std::vector<std::pair<Index, Rational>> e;
      for (auto& [tk, c] : rule(n, k)) {
        auto j = tb.find(tk);
        if (!j) {
          if (tgt.in_window(n) && c != 0)
            throw std::out_of_range("key_map: image key missing from target basis");
          continue;
        }
        e.emplace_back(*j, c);
      }
      imgs.push_back(make_sparse(std::move(e)));
    }
    f.components[n] = std::move(imgs);
  }
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h;
  for (const auto& [n, imgs] : f.components) {
    const auto& gn = g.at(n);
    std::vector<SparseVec> out;
    for (const auto& v : imgs) out.push_back(apply_images(gn, v));
    h.components[n] = std::move(out);
  }
  return h;
}

Index persistent_rank(const ChainComplex& small, const ChainComplex& large, int n) {
  return induced_rank(key_map(small, large), small, large, n);
}

ChainComplex cone(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt) {
  int lo = std::min(src.lo() + 1, tgt.lo());
  int hi = std::max(src.hi() + 1, tgt.hi());
  ChainComplex c(lo, hi);
  for (int n = lo; n <= hi; ++n) {
    auto& b = c.basis(n);
    for (const auto& k : src.basis(n - 1).keys()) {
      Key kk{0};
      kk.insert(kk.end(), k.begin(), k.end());
      b.add(kk);
    }
    for (const auto& k : tgt.basis(n).keys()) {
      Key kk{1};
      kk.insert(kk.end(), k.begin(), k.end());
      b.add(kk);
    }
  }
  for (int n = lo; n <= hi; ++n) {
    Index off_here = src.dim(n - 1);
    Index off_below = src.dim(n - 2);
    std::vector<SparseVec> imgs;
    const auto& sb = src.boundary(n - 1);
    const auto& fn = f.at(n - 1);
    for (Index i = 0; i < src.dim(n - 1); ++i) {
      SparseVec v = sb.empty() ? SparseVec{} : scaled(sb[static_cast<std::size_t>(i)], Rational(-1));
      if (static_cast<std::size_t>(i) < fn.size())
        for (const auto& [j, x] : fn[static_cast<std::size_t>(i)]) v.emplace_back(j + off_below, x);
      imgs.push_back(make_sparse(std::move(v)));
    }
    const auto& tb = tgt.boundary(n);
    for (Index i = 0; i < tgt.dim(n); ++i) {
      SparseVec v;
      if (!tb.empty())
        for (const auto& [j, x] : tb[static_cast<std::size_t>(i)]) v.emplace_back(j + off_below, x);
      imgs.push_back(std::move(v));
    }
    c.set_boundary(n, std::move(imgs));
    std::vector<SparseVec> rel;
    for (const auto& y : src.relations(n - 1)) rel.push_back(y);
    for (const auto& y : tgt.relations(n)) {
      SparseVec v;
      for (const auto& [j, x] : y) v.emplace_back(j + off_here, x);
      rel.push_back(std::move(v));
    }
    c.set_relations(n, std::move(rel));
  }
  // Certified degrees: both ends of the long exact sequence must be trusted.
  int clo = lo, chi = hi;
  while (clo <= hi && !((src.certified(clo - 1) || src.dim(clo - 1) == 0) &&
                        (src.certified(clo - 2) || src.dim(clo - 2) == 0) &&
                        (tgt.certified(clo) || tgt.dim(clo) == 0)))
    ++clo;
  while (chi >= lo && !((src.certified(chi - 1) || src.dim(chi - 1) == 0) &&
                        (tgt.certified(chi) || tgt.dim(chi) == 0) &&
                        (tgt.certified(chi + 1) || tgt.dim(chi + 1) == 0)))
    --chi;
  c.set_certified(clo, chi);
  return c;
}

ChainComplex shift(const ChainComplex& c, int k) {
  ChainComplex s(c.lo() + k, c.hi() + k);
  Rational sign = (k % 2 == 0) ? 1 : -1;
  for (int n = c.lo(); n <= c.hi(); ++n)
    for (const auto& key : c.basis(n).keys()) s.basis(n + k).add(key);
  for (int n = c.lo(); n <= c.hi(); ++n) {
    std::vector<SparseVec> imgs;
    const auto& b = c.boundary(n);
    for (Index i = 0; i < c.dim(n); ++i)
      imgs.push_back(b.empty() ? SparseVec{} : scaled(b[static_cast<std::size_t>(i)], sign));
    s.set_boundary(n + k, std::move(imgs));
    s.set_relations(n + k, c.relations(n));
  }
  int clo = c.lo(), chi = c.hi();
  while (clo <= c.hi() && !c.certified(clo)) ++clo;
  while (chi >= c.lo() && !c.certified(chi)) --chi;
  s.set_certified(clo + k, chi + k);
  return s;
}

ChainComplex restrict_keys(const ChainComplex& c, const std::function<bool(int, const Key&)>& pred) {
  ChainComplex r(c.lo(), c.hi());
  std::vector<std::vector<Index>> remap(static_cast<std::size_t>(c.hi() - c.lo() + 1));
  for (int n = c.lo(); n <= c.hi(); ++n) {
    auto& rm = remap[static_cast<std::size_t>(n - c.lo())];
    rm.assign(static_cast<std::size_t>(c.dim(n)), -1);
    const auto& keys = c.basis(n).keys();
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (pred(n, keys[i])) rm[i] = r.basis(n).add(keys[i]);
  }
  auto project = [&](int n, const SparseVec& v) {
    SparseVec out;
    if (!c.in_window(n)) return out;
    const auto& rm = remap[static_cast<std::size_t>(n - c.lo())];
    for (const auto& [i, x] : v)
      if (rm[static_cast<std::size_t>(i)] >= 0) out.emplace_back(rm[static_cast<std::size_t>(i)], x);
    return make_sparse(std::move(out));
  };
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto& rm = remap[static_cast<std::size_t>(n - c.lo())];
    const auto& b = c.boundary(n);
    std::vector<SparseVec> imgs;
    for (std::size_t i = 0; i < rm.size(); ++i)
      if (rm[i] >= 0) imgs.push_back(b.empty() ? SparseVec{} : project(n - 1, b[i]));
    r.set_boundary(n, std::move(imgs));
    std::vector<SparseVec> rel;
    for (const auto& y : c.relations(n)) {
      auto p = project(n, y);
      if (!p.empty()) rel.push_back(std::move(p));
    }
    r.set_relations(n, std::move(rel));
  }
  return r;
}

// ---------------------------------------------------------------------------

ChainComplex total_complex(const Bicomplex& b, int lo, int hi, TotalMode /*mode*/) {
  // For each total degree n the contributing p range is
  // [max(p_lo, n - q_hi), min(p_hi, n - q_lo)]; it must be finite.
  auto prange = [&](int n) -> std::pair<int, int> {
    std::optional<int> a, z;
    if (b.p_lo) a = *b.p_lo;
    if (b.q_hi) a = a ? std::max(*a, n - *b.q_hi) : n - *b.q_hi;
    if (b.p_hi) z = *b.p_hi;
    if (b.q_lo) z = z ? std::min(*z, n - *b.q_lo) : n - *b.q_lo;
    if (!a || !z) {
      std::ostringstream os;
      os << "total_complex: total degree " << n << " receives infinitely many bidegrees";
      throw std::domain_error(os.str());
    }
    return {*a, *z};
  };
  ChainComplex c(lo, hi);
  std::map<std::pair<int, int>, Index> offset;
  for (int n = lo - 1; n <= hi; ++n) {
    auto [a, z] = prange(n);
    Index off = 0;
    for (int p = a; p <= z; ++p) {
      int q = n - p;
      offset[{p, q}] = off;
      Index d = b.dim(p, q);
      if (n >= lo)
        for (Index i = 0; i < d; ++i) c.basis(n).add(Key{p, q, static_cast<int>(i)});
      off += d;
    }
  }
  for (int n = lo; n <= hi; ++n) {
    auto [a, z] = prange(n);
    std::vector<SparseVec> imgs;
    for (int p = a; p <= z; ++p) {
      int q = n - p;
      Index d = b.dim(p, q);
      if (d == 0) continue;
      auto vert = b.vertical(p, q);
      auto horiz = b.horizontal(p, q);
      Rational sgn = (p % 2 == 0) ? 1 : -1;
      for (Index i = 0; i < d; ++i) {
        std::vector<std::pair<Index, Rational>> e;
        if (n - 1 >= lo) {
          if (!vert.empty() && b.dim(p - 1, q) > 0 && offset.count({p - 1, q}))
            for (const auto& [j, x] : vert[static_cast<std::size_t>(i)])
              e.emplace_back(offset.at({p - 1, q}) + j, x);
          if (!horiz.empty() && b.dim(p, q - 1) > 0 && offset.count({p, q - 1}))
            for (const auto& [j, x] : horiz[static_cast<std::size_t>(i)])
              e.emplace_back(offset.at({p, q - 1}) + j, sgn * x);
        }
        imgs.push_back(make_sparse(std::move(e)));
      }
    }
    c.set_boundary(n, std::move(imgs));
  }
  return c;
}

// ---------------------------------------------------------------------------

TowerLimit tower_limit(const Tower& t, int lo, int hi, int persistence) {
  TowerLimit res;
  if (t.levels.empty()) return res;
  std::size_t top = t.levels.size() - 1;
  // Composite maps from the top level down to each level m.
  std::vector<ChainMap> down(t.levels.size());
  for (int n = t.levels[top].lo(); n <= t.levels[top].hi(); ++n) {
    std::vector<SparseVec> id;
    for (Index i = 0; i < t.levels[top].dim(n); ++i) id.push_back({{i, Rational(1)}});
    down[top].components[n] = std::move(id);
  }
  for (std::size_t m = top; m-- > 0;) down[m] = compose(t.maps[m], down[m + 1]);

  for (int n = lo; n <= hi; ++n) {
    res.level_dims[n] = homology(t.levels[top], n).dim;
    std::vector<Index> r(t.levels.size());
    for (std::size_t m = 0; m < top; ++m) r[m] = induced_rank(down[m], t.levels[top], t.levels[m], n);
    if (top == 0) {
      res.lim[n] = res.level_dims[n];
      res.lim1[n] = 0;
      res.stabilized = res.stabilized && persistence <= 0;
      continue;
    }
    Index last = r[top - 1];
    bool stable = static_cast<int>(top) >= persistence;
    for (int k = 1; k < persistence && stable; ++k) {
      if (r[top - 1 - static_cast<std::size_t>(k)] != last) stable = false;
    }
    res.lim[n] = last;
    res.lim1[n] = 0;
    res.stabilized = res.stabilized && stable;
  }
  return res;
}

// ---------------------------------------------------------------------------

HomologyCoordinates::HomologyCoordinates(const ChainComplex& c, int n) : complex_(&c), degree_(n) {
  reps_ = homology(c, n, true).representatives;
  auto insert = [&](SparseVec v, SparseVec comb) {
    while (!v.empty()) {
      auto it = pivots_.find(v.front().first);
      if (it == pivots_.end()) break;
      Rational f = -v.front().second;
      axpy(v, f, it->second.first);
      axpy(comb, f, it->second.second);
    }
    if (v.empty()) return;
    Rational inv = 1 / v.front().second;
    for (auto& e : v) e.second *= inv;
    for (auto& e : comb) e.second *= inv;
    Index lead = v.front().first;
    pivots_.emplace(lead, std::make_pair(std::move(v), std::move(comb)));
  };
  for (const auto& b : relative_boundaries(c, n)) insert(b, {});
  for (std::size_t i = 0; i < reps_.size(); ++i) insert(reps_[i], {{static_cast<Index>(i), Rational(1)}});
}

std::optional<std::vector<Rational>> HomologyCoordinates::coordinates(const SparseVec& z) const {
  // Cycle test modulo the relation subspace.
  EchelonBasis y;
  for (const auto& r : complex_->relations(degree_ - 1)) y.insert(r);
  SparseVec dz = apply_images(complex_->boundary(degree_), z);
  if (!y.contains(dz)) return std::nullopt;
  SparseVec v = z, comb;
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) return std::nullopt;
    Rational f = -v.front().second;
    axpy(v, f, it->second.first);
    axpy(comb, f, it->second.second);
  }
  std::vector<Rational> out(reps_.size(), Rational(0));
  for (const auto& [i, x] : comb) out[static_cast<std::size_t>(i)] = -x;
  return out;
}

bool HomologyCoordinates::is_boundary(const SparseVec& z) const {
  auto c = coordinates(z);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rational& x) { return x == 0; });
}

}  // namespace cyclo

namespace cyclo {

bool StableDims::all_stable() const {
  return std::all_of(stable.begin(), stable.end(), [](const auto& e) { return e.second; });
}

StableDims stable_homology(const std::function<ChainComplex(int)>& build, int t0, int step, int lo, int hi,
                           int persistence) {
  StableDims out;
  persistence = std::max(1, persistence);
  std::vector<ChainComplex> levels;
  for (int i = 0; i <= persistence; ++i) levels.push_back(build(t0 + i * step));
  out.last_trunc = t0 + persistence * step;
  for (int n = lo; n <= hi; ++n) {
    std::optional<Index> first;
    bool stable = true;
    Index last = 0;
    for (int i = 0; i < persistence; ++i) {
      last = persistent_rank(levels[static_cast<std::size_t>(i)], levels[static_cast<std::size_t>(i) + 1], n);
      if (first && *first != last) stable = false;
      if (!first) first = last;
    }
    out.dims[n] = last;
    out.stable[n] = stable;
  }
  return out;
}

}  // namespace cyclo
