#include "cyclo/scheme.hpp"

#include "cyclo/derham.hpp"
#include "cyclo/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace cyclo {

Polynomial AlgebraMap::apply(const Polynomial& p, std::size_t target_nvars) const {
  if (p.nvars() != images.size()) throw std::invalid_argument("algebra map: source arity mismatch");
  Polynomial out(target_nvars);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target_nvars, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * images[i].pow(m[i]);
    out += t;
  }
  return out;
}

int AlgebraMap::degree_bound() const {
  int d = 1;
  for (const auto& p : images) d = std::max(d, p.degree());
  return d;
}

const FpAlgebra& AffineCover::section(const Subset& s) const {
  auto it = sections.find(s);
  if (it == sections.end()) throw std::out_of_range("cover has no such intersection");
  return it->second;
}

const AlgebraMap& AffineCover::map(const Subset& from, const Subset& to) const {
  auto it = maps.find({from, to});
  if (it == maps.end()) throw std::out_of_range("cover has no such restriction");
  return it->second;
}

namespace {

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  Subset cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Subset with(Subset s, int i) {
  s.insert(std::upper_bound(s.begin(), s.end(), i), i);
  return s;
}

std::string subset_name(const AffineCover& c, const Subset& s) {
  std::string out;
  for (int i : s) out += (out.empty() ? "" : "∩") + c.names[static_cast<std::size_t>(i)];
  return out;
}

// Relations go to zero and weights are respected.
std::string check_map(const FpAlgebra& src, const FpAlgebra& tgt, const AlgebraMap& f) {
  if (f.images.size() != src.nvars()) return "wrong number of images";
  for (const auto& p : f.images)
    if (p.nvars() != tgt.nvars()) return "image in the wrong ring";
  for (const auto& g : src.groebner_basis())
    if (!tgt.normal_form(f.apply(g, tgt.nvars())).is_zero()) return "a relation does not map to zero";
  if (src.weights() && tgt.weights()) {
    for (std::size_t i = 0; i < src.nvars(); ++i) {
      Polynomial img = tgt.normal_form(f.images[i]);
      if (img.is_zero()) continue;
      if (!img.is_homogeneous(*tgt.weights())) return "image is not weight-homogeneous";
      int w = tgt.weight(img.terms().begin()->first);
      if (w != (*src.weights())[i]) return "map does not preserve weights";
    }
  }
  return {};
}

std::vector<Polynomial> composite_images(const FpAlgebra& src, const AlgebraMap& first, const AlgebraMap& second,
                                         const FpAlgebra& tgt) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < src.nvars(); ++i) out.push_back(tgt.normal_form(second.apply(first.images[i], tgt.nvars())));
  return out;
}

}  // namespace

CoverCheck check_cover(const AffineCover& c) {
  CoverCheck r;
  std::ostringstream msg;
  int n = static_cast<int>(c.size());
  if (n == 0 || n > 4) {
    r.ok = false;
    r.message = "a cover has between 1 and 4 patches";
    return r;
  }
  for (int k = 1; k <= n; ++k)
    for (const auto& s : subsets_of_size(n, k)) {
      if (!c.sections.count(s)) {
        r.ok = false;
        msg << "missing intersection " << subset_name(c, s) << "; ";
        continue;
      }
      for (int i = 0; i < n; ++i) {
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        Subset t = with(s, i);
        auto it = c.maps.find({s, t});
        if (it == c.maps.end() || !c.sections.count(t)) {
          r.ok = false;
          msg << "missing restriction " << subset_name(c, s) << " -> " << subset_name(c, t) << "; ";
          continue;
        }
        auto e = check_map(c.sections.at(s), c.sections.at(t), it->second);
        if (!e.empty()) {
          r.ok = false;
          msg << subset_name(c, s) << " -> " << subset_name(c, t) << ": " << e << "; ";
        }
      }
    }
  if (!r.ok) {
    r.message = msg.str();
    return r;
  }
  // Both routes S -> S∪{i} -> S∪{i,j} and S -> S∪{j} -> S∪{i,j} agree on generators.
  for (int k = 1; k + 2 <= n; ++k)
    for (const auto& s : subsets_of_size(n, k))
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (std::binary_search(s.begin(), s.end(), i) || std::binary_search(s.begin(), s.end(), j)) continue;
          Subset si = with(s, i), sj = with(s, j), sij = with(si, j);
          const auto& tgt = c.sections.at(sij);
          auto a = composite_images(c.sections.at(s), c.maps.at({s, si}), c.maps.at({si, sij}), tgt);
          auto b = composite_images(c.sections.at(s), c.maps.at({s, sj}), c.maps.at({sj, sij}), tgt);
          if (a != b) {
            r.ok = false;
            msg << "restrictions of " << subset_name(c, s) << " to " << subset_name(c, sij) << " disagree; ";
          }
        }
  if (c.ambient) {
    for (int i = 0; i < n; ++i) {
      auto it = c.ambient_maps.find(i);
      if (it == c.ambient_maps.end()) {
        r.ok = false;
        msg << "missing map from the ambient to " << c.names[static_cast<std::size_t>(i)] << "; ";
        continue;
      }
      auto e = check_map(*c.ambient, c.sections.at({i}), it->second);
      if (!e.empty()) {
        r.ok = false;
        msg << "ambient -> " << c.names[static_cast<std::size_t>(i)] << ": " << e << "; ";
      }
    }
    if (r.ok)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Subset ij{i, j};
          const auto& tgt = c.sections.at(ij);
          auto a = composite_images(*c.ambient, c.ambient_maps.at(i), c.maps.at({{i}, ij}), tgt);
          auto b = composite_images(*c.ambient, c.ambient_maps.at(j), c.maps.at({{j}, ij}), tgt);
          if (a != b) {
            r.ok = false;
            msg << "ambient restrictions to " << subset_name(c, ij) << " disagree; ";
          }
        }
  }
  r.message = msg.str();
  return r;
}

AffineCover build_cover(AffineCover c) {
  if (c.names.empty() && !c.sections.empty()) {
    int n = 0;
    for (const auto& [s, a] : c.sections) n = std::max(n, s.back() + 1);
    for (int i = 0; i < n; ++i) c.names.push_back("U" + std::to_string(i));
  }
  auto r = check_cover(c);
  if (!r.ok) throw std::invalid_argument("incoherent cover: " + r.message);
  return c;
}

AffineCover principal_cover(const FpAlgebra& r, const std::vector<Polynomial>& fs, const std::vector<std::string>& names) {
  int n = static_cast<int>(fs.size());
  std::vector<Polynomial> gens = r.relations();
  for (const auto& f : fs) gens.push_back(f.extended(r.nvars()));
  if (!FpAlgebra(r.variables(), gens).is_zero_ring())
    throw std::invalid_argument("the localizing elements do not generate the unit ideal");
  AffineCover c;
  for (int i = 0; i < n; ++i)
    c.names.push_back(i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : "D" + std::to_string(i));
  // U_S = R[t_i : i in S], variables in index order
  for (int k = 1; k <= n; ++k)
    for (const auto& s : subsets_of_size(n, k)) {
      FpAlgebra a = r;
      for (int i : s) a = localization(a, fs[static_cast<std::size_t>(i)].extended(a.nvars()), "t" + std::to_string(i));
      c.sections.emplace(s, std::move(a));
    }
  std::size_t nr = r.nvars();
  for (const auto& [s, a] : c.sections)
    for (int i = 0; i < n; ++i) {
      if (std::binary_search(s.begin(), s.end(), i)) continue;
      Subset t = with(s, i);
      std::size_t nt = nr + t.size();
      AlgebraMap f;
      for (std::size_t v = 0; v < nr; ++v) f.images.push_back(Polynomial::variable(nt, v));
      for (int j : s) {
        auto pos = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), j) - t.begin());
        f.images.push_back(Polynomial::variable(nt, nr + pos));
      }
      c.maps.emplace(std::make_pair(s, t), std::move(f));
    }
  c.ambient = r;
  for (int i = 0; i < n; ++i) {
    AlgebraMap f;
    for (std::size_t v = 0; v < nr; ++v) f.images.push_back(Polynomial::variable(nr + 1, v));
    c.ambient_maps.emplace(i, std::move(f));
  }
  return build_cover(std::move(c));
}

AffineCover two_patch_cover(const std::string& name_a, const FpAlgebra& a, const std::string& name_b,
                            const FpAlgebra& b, const FpAlgebra& overlap, const AlgebraMap& a_to_c,
                            const AlgebraMap& b_to_c) {
  AffineCover c;
  c.names = {name_a, name_b};
  c.sections.emplace(Subset{0}, a);
  c.sections.emplace(Subset{1}, b);
  c.sections.emplace(Subset{0, 1}, overlap);
  c.maps.emplace(std::make_pair(Subset{0}, Subset{0, 1}), a_to_c);
  c.maps.emplace(std::make_pair(Subset{1}, Subset{0, 1}), b_to_c);
  return build_cover(std::move(c));
}

AffineCover permute_patches(const AffineCover& c, const std::vector<int>& perm) {
  int n = static_cast<int>(c.size());
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  auto old_of = [&](const Subset& s) {
    Subset o;
    for (int k : s) o.push_back(perm[static_cast<std::size_t>(k)]);
    std::sort(o.begin(), o.end());
    return o;
  };
  AffineCover out;
  for (int k = 0; k < n; ++k) out.names.push_back(c.names[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])]);
  for (int k = 1; k <= n; ++k)
    for (const auto& s : subsets_of_size(n, k)) {
      out.sections.emplace(s, c.section(old_of(s)));
      for (int i = 0; i < n; ++i) {
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        Subset t = with(s, i);
        out.maps.emplace(std::make_pair(s, t), c.map(old_of(s), old_of(t)));
      }
    }
  out.ambient = c.ambient;
  for (int k = 0; k < n; ++k)
    if (c.ambient_maps.count(perm[static_cast<std::size_t>(k)]))
      out.ambient_maps.emplace(k, c.ambient_maps.at(perm[static_cast<std::size_t>(k)]));
  return build_cover(std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

// One local complex of the Čech diagram, with the data needed to push
// chains forward along algebra maps.
struct Piece {
  const FpAlgebra* alg = nullptr;
  std::shared_ptr<BarComplex> bar;       // HH / HP
  std::shared_ptr<DeRhamComplex> dr;     // de Rham
  ChainComplex complex;
  int cap = 0;                           // top bar degree kept
  bool capped = false;
};

struct Node {
  int p = 0;
  int id = 0;  // index of the subset (or -1 for the ambient)
  Subset s;
  Piece piece;
};

Piece make_piece(const FpAlgebra& a, Invariant inv, int qlo, int qhi, int trunc, int cap,
                 const std::optional<int>& weight) {
  Piece pc;
  pc.alg = &a;
  if (weight && !a.weights()) throw std::invalid_argument("weight requested on an unweighted intersection");
  if (inv == Invariant::DeRham) {
    pc.dr = std::make_shared<DeRhamComplex>(de_rham_complex(a, {trunc, weight}));
    pc.complex = pc.dr->complex();
    return pc;
  }
  pc.bar = std::make_shared<BarComplex>(bar_complex(a, {cap, trunc, weight}));
  pc.cap = pc.bar->chains().hi();
  pc.capped = !pc.bar->complete();
  if (inv == Invariant::HH)
    pc.complex = tate_complex(pc.bar->mixed(), qlo, qhi, 0, 0).complex;
  else
    pc.complex = tate_complex(pc.bar->mixed(), qlo, qhi).complex;
  return pc;
}

// Image of one basis key of `src` under the algebra map, in target keys.
std::vector<std::pair<Key, Rational>> push_key(const Piece& src, const Piece& tgt, const AlgebraMap& f, Invariant inv,
                                               const Key& k) {
  std::vector<std::pair<Key, Rational>> out;
  std::size_t nt = tgt.alg->nvars();
  if (inv == Invariant::DeRham) {
    auto [m, mask] = form_index(k);
    Form w = poly_form(f.apply(Polynomial::monomial(m), nt));
    for (std::size_t i = 0; i < src.alg->nvars(); ++i)
      if (mask & (1u << i)) w = wedge(w, differential(f.images[i]));
    for (const auto& [fi, x] : w)
      if (x != 0) out.emplace_back(form_key(fi.first, fi.second), x);
    return out;
  }
  int j = k[0];
  Key barkey(k.begin() + 1, k.end());
  int n = static_cast<int>(barkey.size()) - 1;
  if (n > tgt.cap) return out;
  std::vector<Polynomial> factors;
  for (int id : barkey) factors.push_back(f.apply(Polynomial::monomial(src.bar->monomials()[static_cast<std::size_t>(id)]), nt));
  for (const auto& [t, x] : tgt.bar->tensor(factors)) {
    Key key{j};
    key.insert(key.end(), t.begin(), t.end());
    out.emplace_back(std::move(key), x);
  }
  return out;
}

Key total_key(int p, int id, const Key& k) {
  Key out{p, id};
  out.insert(out.end(), k.begin(), k.end());
  return out;
}

}  // namespace

ChainComplex cech_complex(const AffineCover& c, Invariant inv, int lo, int hi, int trunc, const CechOptions& opt) {
  int n = static_cast<int>(c.size());
  int pmin = -(n - 1);
  int pmax = opt.augmented ? 1 : 0;
  if (opt.augmented && !c.ambient) throw std::invalid_argument("augmented complex needs an ambient algebra");

  // Maps may raise degree; targets are truncated higher accordingly.
  int scale = 1;
  for (const auto& [k, f] : c.maps) scale = std::max(scale, f.degree_bound());
  for (const auto& [k, f] : c.ambient_maps) scale = std::max(scale, f.degree_bound());

  int cap = opt.bar_cap;
  std::vector<Node> nodes;
  std::map<Subset, std::size_t> where;
  auto trunc_at = [&](int p) {
    int t = trunc;
    for (int i = pmax; i > p; --i) t *= scale;
    return t;
  };
  if (opt.augmented) {
    Node nd{1, -1, {}, make_piece(*c.ambient, inv, lo - 1, hi, trunc_at(1), cap, opt.weight)};
    nodes.push_back(std::move(nd));
  }
  int id = 0;
  for (int k = 1; k <= n; ++k)
    for (const auto& s : subsets_of_size(n, k)) {
      int p = 1 - k;
      const FpAlgebra& a = c.section(s);
      ++id;
      if (a.is_zero_ring()) continue;
      where[s] = nodes.size();
      nodes.push_back(Node{p, id, s, make_piece(a, inv, lo - p, hi - p, trunc_at(p), cap, opt.weight)});
    }

  ChainComplex x(lo - 1, hi + 1);
  // offsets[D][node] = first index of that node's chains in degree D
  std::map<int, std::vector<Index>> offsets;
  for (int D = lo - 1; D <= hi + 1; ++D) {
    offsets[D].assign(nodes.size(), 0);
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      offsets[D][u] = x.dim(D);
      int q = D - nodes[u].p;
      const auto& pc = nodes[u].piece.complex;
      if (!pc.in_window(q)) continue;
      for (const auto& k : pc.basis(q).keys()) x.basis(D).add(total_key(nodes[u].p, nodes[u].id, k));
    }
  }
  auto place = [&](int D, std::size_t u, const SparseVec& v) {
    SparseVec out;
    out.reserve(v.size());
    Index off = offsets[D][u];
    for (const auto& [i, a] : v) out.emplace_back(i + off, a);
    return out;
  };

  // Čech coface maps out of each node, with signs.
  struct Edge {
    std::size_t to;
    const AlgebraMap* f;
    int sign;
  };
  std::vector<std::vector<Edge>> edges(nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const auto& nd = nodes[u];
    if (nd.id == -1) {
      for (int i = 0; i < n; ++i)
        if (where.count({i})) edges[u].push_back({where.at({i}), &c.ambient_maps.at(i), 1});
      continue;
    }
    for (int i = 0; i < n; ++i) {
      if (std::binary_search(nd.s.begin(), nd.s.end(), i)) continue;
      Subset t = with(nd.s, i);
      if (!where.count(t)) continue;
      int pos = static_cast<int>(std::lower_bound(t.begin(), t.end(), i) - t.begin());
      edges[u].push_back({where.at(t), &c.map(nd.s, t), pos % 2 == 0 ? 1 : -1});
    }
  }

  for (std::size_t u = 0; u < nodes.size(); ++u)
    for (const auto& e : edges[u])
      if (nodes[u].piece.capped && !nodes[e.to].piece.capped)
        throw std::logic_error("restriction from a capped piece into a complete one");

  for (int D = lo; D <= hi + 1; ++D) {
    std::vector<SparseVec> imgs;
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      const auto& nd = nodes[u];
      int q = D - nd.p;
      const auto& pc = nd.piece.complex;
      if (!pc.in_window(q)) continue;
      int inner_sign = (nd.p % 2 == 0) ? 1 : -1;
      const auto& bd = pc.boundary(q);
      for (Index i = 0; i < pc.dim(q); ++i) {
        SparseVec v;
        if (!bd.empty() && pc.in_window(q - 1)) v = scaled(place(D - 1, u, bd[static_cast<std::size_t>(i)]), Rational(inner_sign));
        const Key& k = pc.basis(q).key(i);
        for (const auto& e : edges[u]) {
          const auto& tp = nodes[e.to];
          const auto& tc = tp.piece.complex;
          if (!tc.in_window(q)) continue;
          std::vector<std::pair<Index, Rational>> ent;
          for (const auto& [tk, a] : push_key(nd.piece, tp.piece, *e.f, inv, k)) {
            auto j = tc.basis(q).find(tk);
            if (!j) throw std::logic_error("restricted chain outside the target truncation");
            ent.emplace_back(*j + offsets[D - 1][e.to], a * e.sign);
          }
          v = add(v, make_sparse(std::move(ent)));
        }
        imgs.push_back(std::move(v));
      }
    }
    x.set_boundary(D, std::move(imgs));
  }

  for (int D = lo - 1; D <= hi + 1; ++D) {
    std::vector<SparseVec> rel;
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      int q = D - nodes[u].p;
      const auto& pc = nodes[u].piece.complex;
      if (!pc.in_window(q)) continue;
      for (const auto& r : pc.relations(q)) rel.push_back(place(D, u, r));
    }
    if (!rel.empty()) x.set_relations(D, std::move(rel));
  }
  x.set_certified(lo, hi);
  return x;
}

CechResult cech_sections(const AffineCover& c, Invariant inv, int lo, int hi, const CechOptions& opt) {
  CechResult out;
  int n = static_cast<int>(c.size());
  CechOptions o = opt;
  // HH of column p is read in degrees up to hi - p + 1; keep them below the cap.
  if (inv == Invariant::HH) o.bar_cap = std::max(opt.bar_cap, hi + n + 1);
  int t0 = std::max(opt.trunc, opt.weight ? std::abs(*opt.weight) : 0);
  auto build = [&](int cap) {
    return [&, cap](int T) {
      CechOptions oo = o;
      oo.bar_cap = cap;
      return cech_complex(c, inv, lo, hi, T, oo);
    };
  };
  StableDims s = stable_homology(build(o.bar_cap), t0, 2, lo, hi, opt.persistence);
  out.dims = s.dims;
  out.certified = s.all_stable();
  std::ostringstream diag;
  if (!out.certified) diag << "truncations did not stabilize by S = " << s.last_trunc << "; ";
  if (inv != Invariant::DeRham) {
    auto last = build(o.bar_cap)(s.last_trunc);
    auto big = build(o.bar_cap + 1)(s.last_trunc);
    for (int d = lo; d <= hi; ++d)
      if (homology(last, d).dim != homology(big, d).dim) {
        out.certified = false;
        diag << "degree " << d << " changes with the bar cap; ";
      }
  }
  out.diagnostic = diag.str();
  return out;
}

GluedHP glued_hp(const AffineCover& c, const std::vector<std::optional<int>>& weights, int lo, int hi,
                 const CechOptions& opt) {
  GluedHP g;
  std::size_t nv = 0;
  for (const auto& [s, a] : c.sections) nv = std::max(nv, a.nvars());
  int elo = -static_cast<int>(nv) - static_cast<int>(c.size()) - 1;
  int ehi = 2;
  for (int d = lo; d <= hi; ++d) g.bar[d] = g.derham[d] = 0;
  for (int e = elo; e <= ehi; ++e) g.derham_cohomology[e] = 0;
  std::ostringstream diag;
  for (auto w : weights) {
    CechOptions o = opt;
    o.weight = w;
    auto hp = cech_sections(c, Invariant::HP, lo, hi, o);
    auto dr = cech_sections(c, Invariant::DeRham, elo, ehi, o);
    for (int d = lo; d <= hi; ++d) g.bar[d] += hp.dims[d];
    for (int e = elo; e <= ehi; ++e) g.derham_cohomology[e] += dr.dims[e];
    for (int d = lo; d <= hi; ++d)
      for (int e = elo; e <= ehi; ++e)
        if (((e - d) % 2 + 2) % 2 == 0) g.derham[d] += dr.dims[e];
    if (dr.dims[elo] != 0 || dr.dims[ehi] != 0) {
      g.certified = false;
      diag << "de Rham support reaches the band edge; ";
    }
    if (!hp.certified || !dr.certified) g.certified = false;
    diag << hp.diagnostic << dr.diagnostic;
  }
  g.diagnostic = diag.str();
  return g;
}

}  // namespace cyclo
