#include "cyclo/job.hpp"

#include "cyclo/cyclic.hpp"
#include "cyclo/derham.hpp"
#include "cyclo/hochschild.hpp"
#include "cyclo/resolve.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

namespace cyclo {

JobParseError::JobParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column),
      detail_(what) {}

const std::vector<std::string> job_tasks = {"hh",     "hcminus", "hp",         "derham", "completed-derham",
                                            "hkr",    "compare", "ring-check", "glue"};

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // of the first character of the value
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Comma-separated items with their columns.
std::vector<Entry> split_list(const Entry& e) {
  std::vector<Entry> out;
  std::size_t start = 0;
  const std::string& v = e.value;
  if (trim(v).empty()) return out;
  while (true) {
    std::size_t comma = v.find(',', start);
    std::string raw = v.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t lead = raw.find_first_not_of(" \t");
    std::string item = trim(raw);
    if (item.empty()) throw JobParseError(e.line, e.column + static_cast<int>(start), "empty list item");
    out.push_back({item, e.line, e.column + static_cast<int>(start + (lead == std::string::npos ? 0 : lead))});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_int(const Entry& e) {
  int x = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  auto [p, ec] = std::from_chars(b, end, x);
  if (ec != std::errc() || p != end) throw JobParseError(e.line, e.column, "expected an integer, got '" + e.value + "'");
  return x;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw JobParseError(e.line, e.column, "expected true or false");
}

std::pair<int, int> window_entry(const Entry& e) {
  try {
    return parse_window(e.value);
  } catch (const std::invalid_argument& ex) {
    throw JobParseError(e.line, e.column, ex.what());
  }
}

Polynomial poly_entry(const Entry& e, const std::vector<std::string>& vars) {
  try {
    return parse_polynomial(e.value, vars);
  } catch (const std::invalid_argument& ex) {
    std::smatch m;
    std::string msg = ex.what();
    int col = e.column;
    if (std::regex_search(msg, m, std::regex("position ([0-9]+)"))) col += std::stoi(m[1]);
    throw JobParseError(e.line, col, msg);
  }
}

// vars / relations / weights under a key prefix
FpAlgebra algebra_from(const Section& s, const std::string& prefix, int header_line) {
  auto get = [&](const std::string& k) -> const Entry* {
    auto it = s.find(prefix + k);
    return it == s.end() ? nullptr : &it->second;
  };
  const Entry* ve = get("vars");
  if (!ve) throw JobParseError(header_line, 1, "missing '" + prefix + "vars'");
  std::vector<std::string> vars;
  for (const auto& item : split_list(*ve)) {
    if (!std::regex_match(item.value, std::regex("[A-Za-z_][A-Za-z0-9_]*")))
      throw JobParseError(item.line, item.column, "bad variable name '" + item.value + "'");
    if (std::find(vars.begin(), vars.end(), item.value) != vars.end())
      throw JobParseError(item.line, item.column, "repeated variable '" + item.value + "'");
    vars.push_back(item.value);
  }
  std::vector<Polynomial> rels;
  if (const Entry* re = get("relations"))
    for (const auto& item : split_list(*re)) rels.push_back(poly_entry(item, vars));
  FpAlgebra a(vars, rels);
  if (const Entry* we = get("weights")) {
    std::vector<int> w;
    for (const auto& item : split_list(*we)) w.push_back(parse_int(item));
    try {
      a.set_weights(w);
    } catch (const std::invalid_argument& ex) {
      throw JobParseError(we->line, we->column, ex.what());
    }
  } else if (vars.empty()) {
    a.set_weights({});
  }
  return a;
}

AffineCover cover_from(const Section& s, const std::optional<FpAlgebra>& base, int header_line) {
  auto it = s.find("kind");
  if (it == s.end()) throw JobParseError(header_line, 1, "missing 'kind' in [cover]");
  const Entry& kind = it->second;
  if (kind.value == "principal") {
    if (!base) throw JobParseError(kind.line, kind.column, "a principal cover needs an [algebra] section");
    auto el = s.find("elements");
    if (el == s.end()) throw JobParseError(header_line, 1, "missing 'elements' in [cover]");
    std::vector<Polynomial> fs;
    for (const auto& item : split_list(el->second)) fs.push_back(poly_entry(item, base->variables()));
    for (const auto& [k, e] : s)
      if (k != "kind" && k != "elements") throw JobParseError(e.line, 1, "unknown key '" + k + "' in [cover]");
    try {
      return principal_cover(*base, fs);
    } catch (const std::invalid_argument& ex) {
      throw JobParseError(el->second.line, el->second.column, ex.what());
    }
  }
  if (kind.value != "two-patch") throw JobParseError(kind.line, kind.column, "cover kind is principal or two-patch");
  std::vector<std::string> patches;  // in order of first appearance
  std::map<std::string, int> first_line;
  for (const auto& [k, e] : s) {
    if (k == "kind" || k.rfind("overlap.", 0) == 0 || k.rfind("map.", 0) == 0) continue;
    std::smatch m;
    if (!std::regex_match(k, m, std::regex("patch\\.([A-Za-z0-9_]+)\\.(vars|relations|weights)")))
      throw JobParseError(e.line, 1, "unknown key '" + k + "' in [cover]");
    std::string name = m[1];
    if (!first_line.count(name) || e.line < first_line[name]) first_line[name] = e.line;
  }
  for (const auto& [n, l] : first_line) patches.push_back(n);
  std::sort(patches.begin(), patches.end(), [&](const auto& a, const auto& b) { return first_line[a] < first_line[b]; });
  if (patches.size() != 2) throw JobParseError(header_line, 1, "a two-patch cover declares exactly two patches");
  FpAlgebra a = algebra_from(s, "patch." + patches[0] + ".", header_line);
  FpAlgebra b = algebra_from(s, "patch." + patches[1] + ".", header_line);
  FpAlgebra c = algebra_from(s, "overlap.", header_line);
  auto images = [&](const std::string& name, const FpAlgebra& src) {
    auto mt = s.find("map." + name);
    if (mt == s.end()) throw JobParseError(header_line, 1, "missing 'map." + name + "'");
    AlgebraMap f;
    for (const auto& item : split_list(mt->second)) f.images.push_back(poly_entry(item, c.variables()));
    if (f.images.size() != src.nvars())
      throw JobParseError(mt->second.line, mt->second.column, "one image per variable of " + name + " required");
    return f;
  };
  AlgebraMap fa = images(patches[0], a), fb = images(patches[1], b);
  for (const auto& [k, e] : s)
    if (k.rfind("map.", 0) == 0 && k != "map." + patches[0] && k != "map." + patches[1])
      throw JobParseError(e.line, 1, "map for an undeclared patch");
  try {
    return two_patch_cover(patches[0], a, patches[1], b, c, fa, fb);
  } catch (const std::invalid_argument& ex) {
    throw JobParseError(header_line, 1, ex.what());
  }
}

}  // namespace

std::pair<int, int> parse_window(const std::string& s) {
  std::smatch m;
  if (!std::regex_match(s, m, std::regex("\\s*(-?[0-9]+)\\s*\\.\\.\\s*(-?[0-9]+)\\s*")))
    throw std::invalid_argument("window must look like lo..hi");
  int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  if (lo > hi) throw std::invalid_argument("window is empty");
  return {lo, hi};
}

JobSpec parse_job(const std::string& text) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> header_line;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    int indent = static_cast<int>(line.find_first_not_of(" \t"));
    std::string t = trim(line);
    if (t.front() == '[') {
      if (t.back() != ']') throw JobParseError(lineno, indent + 1, "unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      if (current != "algebra" && current != "cover" && current != "task")
        throw JobParseError(lineno, indent + 2, "unknown section '" + current + "'");
      if (header_line.count(current)) throw JobParseError(lineno, indent + 1, "repeated section [" + current + "]");
      header_line[current] = lineno;
      sections[current];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw JobParseError(lineno, indent + 1, "expected 'key = value'");
    if (current.empty()) throw JobParseError(lineno, indent + 1, "key outside of a section");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw JobParseError(lineno, indent + 1, "empty key");
    std::string rest = line.substr(eq + 1);
    auto vb = rest.find_first_not_of(" \t");
    int col = static_cast<int>(eq) + 2 + (vb == std::string::npos ? 0 : static_cast<int>(vb));
    auto& sec = sections[current];
    if (sec.count(key)) throw JobParseError(lineno, indent + 1, "repeated key '" + key + "'");
    sec[key] = {trim(rest), lineno, col};
  }

  JobSpec job;
  if (sections.count("algebra")) {
    const auto& s = sections["algebra"];
    for (const auto& [k, e] : s)
      if (k != "vars" && k != "relations" && k != "weights")
        throw JobParseError(e.line, 1, "unknown key '" + k + "' in [algebra]");
    job.algebra = algebra_from(s, "", header_line["algebra"]);
  }
  if (sections.count("cover")) job.cover = cover_from(sections["cover"], job.algebra, header_line["cover"]);
  if (!sections.count("task")) throw JobParseError(lineno + 1, 1, "missing [task] section");
  const auto& ts = sections["task"];
  for (const auto& [k, e] : ts) {
    if (k == "task") {
      if (std::find(job_tasks.begin(), job_tasks.end(), e.value) == job_tasks.end())
        throw JobParseError(e.line, e.column, "unknown task '" + e.value + "'");
      job.task = e.value;
    } else if (k == "window") {
      std::tie(job.lo, job.hi) = window_entry(e);
    } else if (k == "i-range") {
      std::tie(job.i_lo, job.i_hi) = window_entry(e);
    } else if (k == "weights") {
      std::vector<int> w;
      if (e.value.find("..") != std::string::npos) {
        auto [a, b] = window_entry(e);
        for (int x = a; x <= b; ++x) w.push_back(x);
      } else {
        for (const auto& item : split_list(e)) w.push_back(parse_int(item));
      }
      job.weights = w;
    } else if (k == "inverse-pair") {
      for (const auto& item : split_list(e)) job.inverse_pair.push_back(item.value);
      if (job.inverse_pair.size() != 2) throw JobParseError(e.line, e.column, "inverse-pair names two variables");
    } else if (k == "invariant") {
      if (e.value != "hh" && e.value != "hp" && e.value != "derham")
        throw JobParseError(e.line, e.column, "invariant is hh, hp or derham");
      job.invariant = e.value;
    } else if (k == "augmented") {
      job.augmented = parse_bool(e);
    } else if (k == "seed") {
      job.seed = static_cast<std::uint32_t>(parse_int(e));
    } else {
      static const std::map<std::string, int JobSpec::*> ints = {
          {"trunc", &JobSpec::trunc},         {"hodge-max", &JobSpec::hodge_max},
          {"adic-levels", &JobSpec::adic_levels}, {"persistence", &JobSpec::persistence},
          {"bar-cap", &JobSpec::bar_cap},     {"weight-bound", &JobSpec::weight_bound},
          {"level", &JobSpec::level},         {"samples", &JobSpec::samples}};
      auto it = ints.find(k);
      if (it == ints.end()) throw JobParseError(e.line, 1, "unknown key '" + k + "' in [task]");
      int v = parse_int(e);
      bool nonneg_ok = (k == "level");
      if (v < 0 || (v == 0 && !nonneg_ok && k != "weight-bound"))
        throw JobParseError(e.line, e.column, "'" + k + "' must be positive");
      job.*(it->second) = v;
    }
  }
  if (job.task.empty()) throw JobParseError(header_line["task"], 1, "missing 'task' in [task]");
  if (job.task == "glue" && !job.cover) throw JobParseError(header_line["task"], 1, "task glue needs a [cover] section");
  if (job.task != "glue" && !job.algebra)
    throw JobParseError(header_line["task"], 1, "task " + job.task + " needs an [algebra] section");
  if (!job.inverse_pair.empty() && job.algebra)
    for (const auto& v : job.inverse_pair)
      if (std::find(job.algebra->variables().begin(), job.algebra->variables().end(), v) ==
          job.algebra->variables().end())
        throw JobParseError(ts.at("inverse-pair").line, ts.at("inverse-pair").column, "unknown variable '" + v + "'");
  return job;
}

// ---------------------------------------------------------------------------

namespace {

std::string wname(std::optional<int> w) { return w ? std::to_string(*w) : std::string("all"); }

WeightList weight_list(const JobSpec& job, const FpAlgebra& a) {
  if (!job.weights) return default_weights(a, job.weight_bound);
  if (!a.weights()) throw std::invalid_argument("weights requested for an unweighted algebra");
  WeightList out;
  for (int w : *job.weights) out.push_back(w);
  return out;
}

CyclicOptions cyclic_options(const JobSpec& job) {
  CyclicOptions o;
  o.bar_cap = job.bar_cap;
  o.trunc = job.trunc;
  o.persistence = job.persistence;
  o.hodge_max = job.hodge_max;
  return o;
}

void add_table(Report& r, const std::string& name, const std::map<int, Index>& dims, int lo, int hi) {
  auto& t = r.tables[name];
  for (int d = lo; d <= hi; ++d) {
    auto it = dims.find(d);
    t[d] = it == dims.end() ? 0 : it->second;
  }
}

void add_weighted(Report& r, const std::string& name, const std::map<std::optional<int>, std::map<int, Index>>& by_w,
                  int lo, int hi) {
  if (by_w.size() <= 1) return;
  for (const auto& [w, dims] : by_w) add_table(r, name + ".weight." + wname(w), dims, lo, hi);
}

void note(Report& r, const std::string& diag) {
  if (!diag.empty()) r.diagnostics.push_back(diag);
}

void run_algebra_task(const JobSpec& job, Report& r, bool verbose) {
  const FpAlgebra& a = *job.algebra;
  auto ws = weight_list(job, a);
  auto opt = cyclic_options(job);
  int lo = job.lo, hi = job.hi;
  bool certified = true;
  const std::string& task = job.task;

  if (task == "hh" || task == "hcminus" || task == "derham") {
    std::map<std::optional<int>, std::map<int, Index>> by_w;
    std::map<int, Index> total;
    for (auto w : ws) {
      std::map<int, Index> dims;
      if (task == "hh") {
        auto s = hochschild_homology(a, w, lo, hi, job.trunc, job.persistence);
        dims = s.dims;
        if (!s.all_stable()) {
          certified = false;
          note(r, "weight " + wname(w) + ": truncations did not stabilize");
        }
      } else if (task == "hcminus") {
        auto c = cyclic_dims(a, w, TatePiece::Negative, 0, lo, hi, opt);
        dims = c.dims;
        certified = certified && c.certified;
        note(r, c.diagnostic);
      } else {
        auto s = de_rham_homology(a, w, job.trunc, lo, hi, job.persistence);
        dims = s.dims;
        if (!s.all_stable()) {
          certified = false;
          note(r, "weight " + wname(w) + ": truncations did not stabilize");
        }
      }
      by_w[w] = dims;
      for (int d = lo; d <= hi; ++d) total[d] += dims.count(d) ? dims[d] : 0;
    }
    add_table(r, task, total, lo, hi);
    add_weighted(r, task, by_w, lo, hi);
  } else if (task == "hp") {
    auto h = hp_via_bar(a, ws, lo, hi, opt);
    add_table(r, "hp", h.dims, lo, hi);
    add_weighted(r, "hp", h.by_weight, lo, hi);
    certified = h.certified;
    note(r, h.diagnostic);
  } else if (task == "completed-derham") {
    std::map<int, Index> res, inf;
    bool agree = true;
    for (auto w : ws) {
      bool graded = w && positively_graded(a);
      int tr = graded ? 0 : std::max(job.trunc, 2 * job.hodge_max);
      auto c = completed_derham_homotopy(a, w, lo, hi, job.hodge_max, tr, job.persistence);
      auto o = infinitesimal_cohomology(a, w, lo, hi, job.adic_levels, graded ? 0 : std::max(job.trunc, 6));
      bool ok_c = c.hodge_stable && c.trunc_stable, ok_o = o.adic_stable && o.trunc_stable;
      if (!ok_c || !ok_o) {
        certified = false;
        note(r, "weight " + wname(w) + ": " + (ok_c ? "" : "resolve route not stable; ") +
                    (ok_o ? "" : "infinitesimal oracle not stable"));
      }
      for (int d = lo; d <= hi; ++d) {
        res[d] += c.dims[d];
        inf[d] += o.dims[d];
        if (ok_c && ok_o && c.dims[d] != o.dims[d]) agree = false;
      }
    }
    add_table(r, "completed-derham.resolve", res, lo, hi);
    add_table(r, "completed-derham.infinitesimal", inf, lo, hi);
    r.values["verdict"] = !agree ? "DISAGREE" : (certified ? "AGREE" : "UNCERTIFIED");
    if (!agree) r.hard_failure = true;
  } else if (task == "hkr") {
    auto h = hkr_filtration(a, ws, lo, hi, job.i_lo, job.i_hi, opt);
    for (const auto& [i, dims] : h.fil) add_table(r, "fil." + std::to_string(i), dims, lo, hi);
    for (const auto& [i, dims] : h.graded) add_table(r, "graded." + std::to_string(i), dims, lo, hi);
    add_table(r, "hp", h.total, lo, hi);
    r.values["graded_matches"] = h.graded_matches ? "true" : "false";
    r.values["support_top"] = h.support_top ? std::to_string(*h.support_top) : "none";
    r.values["verdict"] = h.verdict;
    if (!h.graded_matches) r.hard_failure = true;
  } else if (task == "compare") {
    auto c = compare_routes(a, ws, lo, hi, opt);
    add_table(r, "hp.bar", c.bar.dims, lo, hi);
    add_table(r, "hp.derham", c.derham.dims, lo, hi);
    r.values["verdict"] = c.verdict;
    certified = c.bar.certified && c.derham.certified;
    note(r, c.bar.diagnostic);
    note(r, c.derham.diagnostic);
    if (c.verdict == "DISAGREE") r.hard_failure = true;
  } else if (task == "ring-check") {
    HPRing ring(a, job.level, 3, std::max(4, job.weight_bound), job.trunc);
    WeightList sample_ws;
    for (auto w : ws) sample_ws.push_back(w);
    int unit = 0, comm = 0, assoc = 0;
    std::uint32_t seed = job.seed;
    int second_degree = job.level == 1 ? -1 : 2;
    for (int t = 0; t < job.samples; ++t) {
      auto p = ring.sample(0, sample_ws, seed++);
      auto q = ring.sample(second_degree, sample_ws, seed++);
      auto s = ring.sample(0, sample_ws, seed++);
      if (ring.equal(hp_ring_mul(ring, ring.one(), p), p)) ++unit;
      if (ring.equal(hp_ring_mul(ring, p, q), hp_ring_mul(ring, q, p))) ++comm;
      if (ring.equal(hp_ring_mul(ring, hp_ring_mul(ring, p, q), s), hp_ring_mul(ring, p, hp_ring_mul(ring, q, s))))
        ++assoc;
      if (verbose)
        r.verbose.push_back("sample " + std::to_string(t) + ": " + std::to_string(p.coeffs.size()) + "+" +
                            std::to_string(q.coeffs.size()) + "+" + std::to_string(s.coeffs.size()) +
                            " coefficients");
    }
    r.values["ring.level"] = std::to_string(job.level);
    r.values["ring.samples"] = std::to_string(job.samples);
    r.values["ring.unit"] = std::to_string(unit);
    r.values["ring.commutative"] = std::to_string(comm);
    r.values["ring.associative"] = std::to_string(assoc);
    bool ok = unit == job.samples && comm == job.samples && assoc == job.samples;
    if (!job.inverse_pair.empty()) {
      auto idx = [&](const std::string& v) {
        return static_cast<std::size_t>(std::find(a.variables().begin(), a.variables().end(), v) - a.variables().begin());
      };
      HPRing base(a, 0, 3, std::max(4, job.weight_bound), job.trunc);
      auto prod = hp_ring_mul(ring, ring.from_polynomial(a.var(idx(job.inverse_pair[0]))),
                              ring.from_polynomial(a.var(idx(job.inverse_pair[1]))));
      bool inv = base.equal(ring.reduce(prod, 0), base.one());
      r.values["ring.inverse"] = inv ? "pass" : "fail";
      ok = ok && inv;
    }
    r.values["verdict"] = ok ? "PASS" : "FAIL";
    if (!ok) r.hard_failure = true;
  }
  r.values["certified"] = certified ? "true" : "false";
}

void run_glue(const JobSpec& job, Report& r) {
  const AffineCover& c = *job.cover;
  bool weighted = std::all_of(c.sections.begin(), c.sections.end(), [](const auto& kv) { return kv.second.weights().has_value(); });
  WeightList ws;
  if (!weighted) {
    ws = {std::nullopt};
  } else if (job.weights) {
    for (int w : *job.weights) ws.push_back(w);
  } else {
    for (int w = -job.weight_bound; w <= job.weight_bound; ++w) ws.push_back(w);
  }
  CechOptions o;
  o.trunc = job.trunc;
  o.bar_cap = job.bar_cap;
  o.persistence = job.persistence;
  o.augmented = job.augmented;
  r.values["cover.patches"] = std::to_string(c.size());
  if (job.invariant == "hp" && !job.augmented) {
    auto g = glued_hp(c, ws, job.lo, job.hi, o);
    add_table(r, "hp.bar", g.bar, job.lo, job.hi);
    add_table(r, "hp.derham", g.derham, job.lo, job.hi);
    add_table(r, "derham", g.derham_cohomology, g.derham_cohomology.begin()->first, g.derham_cohomology.rbegin()->first);
    r.values["verdict"] = !g.agree() ? "DISAGREE" : (g.certified ? "AGREE" : "UNCERTIFIED");
    r.values["certified"] = g.certified ? "true" : "false";
    note(r, g.diagnostic);
    if (!g.agree()) r.hard_failure = true;
    return;
  }
  Invariant inv = job.invariant == "hh" ? Invariant::HH : job.invariant == "hp" ? Invariant::HP : Invariant::DeRham;
  std::map<int, Index> total;
  bool certified = true;
  for (auto w : ws) {
    o.weight = w;
    auto s = cech_sections(c, inv, job.lo, job.hi, o);
    for (int d = job.lo; d <= job.hi; ++d) total[d] += s.dims[d];
    certified = certified && s.certified;
    note(r, s.diagnostic);
  }
  add_table(r, job.invariant, total, job.lo, job.hi);
  r.values["certified"] = certified ? "true" : "false";
}

}  // namespace

Report run_job(const JobSpec& job, bool verbose) {
  Report r;
  r.title = "task " + job.task;
  r.values["task"] = job.task;
  r.values["window"] = std::to_string(job.lo) + ".." + std::to_string(job.hi);
  if (job.task == "glue")
    run_glue(job, r);
  else
    run_algebra_task(job, r, verbose);
  r.values["hard_failure"] = r.hard_failure ? "true" : "false";
  return r;
}

std::string machine_text(const Report& r) {
  std::map<std::string, std::string> kv = r.values;
  for (const auto& [name, t] : r.tables)
    for (const auto& [d, n] : t) kv["table." + name + "." + std::to_string(d)] = std::to_string(n);
  for (std::size_t i = 0; i < r.diagnostics.size(); ++i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03zu", i);
    kv[std::string("diagnostic.") + buf] = r.diagnostics[i];
  }
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string human_text(const Report& r, bool verbose) {
  std::ostringstream os;
  os << r.title << "\n";
  for (const auto& [name, t] : r.tables) {
    os << "\n" << name << "\n  degree";
    for (const auto& [d, n] : t) os << "\t" << d;
    os << "\n  dim   ";
    for (const auto& [d, n] : t) os << "\t" << n;
    os << "\n";
  }
  os << "\n";
  for (const auto& [k, v] : r.values) os << k << ": " << v << "\n";
  for (const auto& d : r.diagnostics) os << "note: " << d << "\n";
  if (verbose)
    for (const auto& v : r.verbose) os << "  " << v << "\n";
  return os.str();
}

}  // namespace cyclo
