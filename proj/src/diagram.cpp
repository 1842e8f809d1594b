#include "khcube/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "detail.hpp"
#include "khcube/errors.hpp"

namespace khcube {

namespace {

bool same(const Occurrence& a, const Occurrence& b) {
  return a.crossing == b.crossing && a.slot == b.slot;
}

}  // namespace

PlanarDiagram make_diagram(std::vector<Crossing> crossings, std::vector<int> labels,
                           int free_circles, int basepoint, std::vector<uint8_t> comp_flip) {
  PlanarDiagram d;
  d.crossings_ = std::move(crossings);
  d.labels_ = std::move(labels);
  d.free_circles_ = free_circles;
  d.basepoint_ = basepoint;
  d.comp_flip_ = std::move(comp_flip);
  if (free_circles < 0) throw Error(ErrorCode::MalformedPD, "negative circle count");
  if (d.crossings_.empty() && free_circles == 0)
    throw Error(ErrorCode::MalformedPD, "a crossingless diagram needs circles >= 1");
  if (basepoint < -1 || basepoint >= static_cast<int>(d.labels_.size()))
    throw Error(ErrorCode::MalformedPD, "basepoint out of range");
  if (basepoint == -1 && !d.labels_.empty()) d.basepoint_ = 0;
  d.finalize();
  return d;
}

void PlanarDiagram::finalize() {
  const int m = num_arcs();
  occ_.assign(m, {Occurrence{}, Occurrence{}});
  for (int c = 0; c < num_crossings(); ++c) {
    for (int s = 0; s < 4; ++s) {
      int e = crossings_[c].arcs[s];
      if (e < 0 || e >= m) throw Error(ErrorCode::InconsistentArcs, "arc index out of range");
      if (occ_[e][0].crossing < 0) occ_[e][0] = {c, s};
      else if (occ_[e][1].crossing < 0) occ_[e][1] = {c, s};
      else
        throw Error(ErrorCode::InconsistentArcs,
                    "arc " + std::to_string(labels_[e]) + " used more than twice");
    }
  }
  for (int e = 0; e < m; ++e) {
    if (occ_[e][1].crossing < 0)
      throw Error(ErrorCode::InconsistentArcs,
                  "arc " + std::to_string(labels_[e]) + " used only once");
  }

  arc_component_.assign(m, -1);
  head_.assign(m, 0);
  oriented_ = true;
  num_arc_components_ = 0;
  std::vector<int> order;
  for (int e0 = 0; e0 < m; ++e0) {
    if (arc_component_[e0] >= 0) continue;
    const int comp = num_arc_components_++;
    order.clear();
    int e = e0;
    int h = 0;
    while (true) {
      if (arc_component_[e] >= 0) {
        if (e != e0 || h != head_[e0]) throw Error(ErrorCode::MalformedPD, "strand structure");
        break;
      }
      arc_component_[e] = comp;
      head_[e] = h;
      order.push_back(e);
      const Occurrence& o = occ_[e][h];
      const int exit_slot = o.slot ^ 2;
      const int f = crossings_[o.crossing].arcs[exit_slot];
      const Occurrence tail{o.crossing, exit_slot};
      h = same(occ_[f][0], tail) ? 1 : 0;
      e = f;
    }

    int agree = 0;
    int disagree = 0;
    for (int a : order) {
      const int s = occ_[a][head_[a]].slot;
      if (s == 0) ++agree;
      if (s == 2) ++disagree;
    }
    bool flip = false;
    if (agree > 0 && disagree > 0) {
      oriented_ = false;
    } else if (disagree > 0) {
      flip = true;
    } else if (agree == 0) {
      int best = order.front();
      for (int a : order)
        if (labels_[a] < labels_[best]) best = a;
      flip = head_[best] != 0;
    }
    if (agree == 0 && comp < static_cast<int>(comp_flip_.size()) && comp_flip_[comp]) flip = !flip;
    if (flip)
      for (int a : order) head_[a] ^= 1;
  }
  comp_flip_.resize(num_arc_components_, 0);

  sign_.assign(num_crossings(), 0);
  for (int c = 0; c < num_crossings(); ++c) {
    auto in_slot = [&](int s0) {
      int e = crossings_[c].arcs[s0];
      return same(occ_[e][head_[e]], Occurrence{c, s0}) ? s0 : (s0 + 2);
    };
    const int under_in = in_slot(0);
    const int over_in = in_slot(1);
    sign_[c] = ((over_in - under_in + 4) % 4 == 3) ? 1 : -1;
  }
}

PlanarDiagram PlanarDiagram::from_crossings(const std::vector<std::array<int, 4>>& crossings,
                                            int free_circles) {
  std::vector<int> labels;
  for (const auto& x : crossings) labels.insert(labels.end(), x.begin(), x.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<Crossing> cs;
  cs.reserve(crossings.size());
  for (size_t i = 0; i < crossings.size(); ++i) {
    Crossing c;
    c.id = static_cast<int>(i) + 1;
    for (int s = 0; s < 4; ++s)
      c.arcs[s] = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), crossings[i][s]) -
                                   labels.begin());
    cs.push_back(c);
  }
  return make_diagram(std::move(cs), std::move(labels), free_circles, -1);
}

int PlanarDiagram::arc_of_label(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return -1;
  return static_cast<int>(it - labels_.begin());
}

std::vector<int> PlanarDiagram::marked() const {
  std::vector<int> out;
  for (int c = 0; c < num_crossings(); ++c)
    if (crossings_[c].in_n) out.push_back(c);
  return out;
}

int PlanarDiagram::num_marked() const {
  int n = 0;
  for (const auto& c : crossings_) n += c.in_n ? 1 : 0;
  return n;
}

int PlanarDiagram::sign(int crossing) const {
  if (!oriented_)
    throw Error(ErrorCode::UnorientedDiagram,
                "incoming under-strands are not consistent with one orientation");
  return sign_[crossing];
}

std::vector<int> PlanarDiagram::signs() const {
  std::vector<int> out;
  for (int c = 0; c < num_crossings(); ++c) out.push_back(sign(c));
  return out;
}

int PlanarDiagram::writhe() const {
  int w = 0;
  for (int c = 0; c < num_crossings(); ++c) w += sign(c);
  return w;
}

int PlanarDiagram::strand_component(int crossing, int strand) const {
  return arc_component_[crossings_[crossing].arcs[strand]];
}

std::string PlanarDiagram::to_pd_string() const {
  std::ostringstream os;
  os << "PD[";
  for (int c = 0; c < num_crossings(); ++c) {
    if (c) os << ",";
    const auto& a = crossings_[c].arcs;
    os << "X(" << labels_[a[0]] << "," << labels_[a[1]] << "," << labels_[a[2]] << ","
       << labels_[a[3]] << ")";
  }
  os << "]";
  if (num_marked() != num_crossings()) {
    os << " N=[";
    bool first = true;
    for (const auto& c : crossings_) {
      if (!c.in_n) continue;
      if (!first) os << ",";
      os << c.id;
      first = false;
    }
    os << "]";
  }
  if (free_circles_ > 0) os << " circles=" << free_circles_;
  if (basepoint_ >= 0 && basepoint_ != 0) os << " basepoint=" << labels_[basepoint_];
  return os.str();
}

PlanarDiagram PlanarDiagram::with_marked(const std::vector<int>& ids) const {
  PlanarDiagram d = *this;
  for (auto& c : d.crossings_) c.in_n = false;
  for (int id : ids) {
    if (id < 1 || id > num_crossings())
      throw Error(ErrorCode::UnknownCrossingId, "crossing " + std::to_string(id));
    d.crossings_[id - 1].in_n = true;
  }
  return d;
}

PlanarDiagram PlanarDiagram::with_basepoint_label(int label) const {
  int arc = arc_of_label(label);
  if (arc < 0) throw Error(ErrorCode::MalformedPD, "basepoint arc " + std::to_string(label));
  PlanarDiagram d = *this;
  d.basepoint_ = arc;
  return d;
}

namespace {

// Rotates crossings so the wanted head occurrences put incoming under-strands at slot 0.
PlanarDiagram orient_like(const PlanarDiagram& base, const std::vector<Occurrence>& want) {
  std::vector<Crossing> cs = base.crossings();
  std::vector<Occurrence> w = want;
  std::vector<uint8_t> rotated(cs.size(), 0);
  for (int c = 0; c < static_cast<int>(cs.size()); ++c) {
    int e = cs[c].arcs[0];
    if (!same(w[e], Occurrence{c, 0})) {
      auto a = cs[c].arcs;
      cs[c].arcs = {a[2], a[3], a[0], a[1]};
      rotated[c] = 1;
    }
  }
  for (auto& o : w)
    if (rotated[o.crossing]) o.slot = (o.slot + 2) % 4;

  std::vector<int> labels;
  for (int e = 0; e < base.num_arcs(); ++e) labels.push_back(base.label(e));
  PlanarDiagram d = make_diagram(cs, labels, base.free_circles(), base.basepoint());
  std::vector<uint8_t> flips(d.num_arc_components(), 0);
  bool any = false;
  for (int e = 0; e < d.num_arcs(); ++e) {
    if (!same(d.occurrences(e)[d.head(e)], w[e])) {
      flips[d.component_of_arc(e)] = 1;
      any = true;
    }
  }
  if (!any) return d;
  d = make_diagram(cs, labels, base.free_circles(), base.basepoint(), flips);
  for (int e = 0; e < d.num_arcs(); ++e)
    if (!same(d.occurrences(e)[d.head(e)], w[e]))
      throw Error(ErrorCode::InternalInvariant, "orientation could not be realised");
  return d;
}

}  // namespace

PlanarDiagram PlanarDiagram::with_heads(const std::vector<int>& heads) const {
  std::vector<Occurrence> want(num_arcs());
  for (int e = 0; e < num_arcs(); ++e) want[e] = occ_[e][heads[e]];
  return orient_like(*this, want);
}

PlanarDiagram PlanarDiagram::mirror() const {
  if (!oriented_) throw Error(ErrorCode::UnorientedDiagram, "mirror needs an orientation");
  std::vector<Crossing> cs = crossings_;
  std::vector<int> shift(num_crossings());
  for (int c = 0; c < num_crossings(); ++c) {
    auto a = cs[c].arcs;
    if (sign_[c] > 0) {
      cs[c].arcs = {a[3], a[0], a[1], a[2]};
      shift[c] = 1;
    } else {
      cs[c].arcs = {a[1], a[2], a[3], a[0]};
      shift[c] = 3;
    }
  }
  std::vector<Occurrence> want(num_arcs());
  for (int e = 0; e < num_arcs(); ++e) {
    Occurrence o = occ_[e][head_[e]];
    o.slot = (o.slot + shift[o.crossing]) % 4;
    want[e] = o;
  }
  PlanarDiagram base = make_diagram(cs, labels_, free_circles_, basepoint_);
  return orient_like(base, want);
}

PlanarDiagram PlanarDiagram::reverse_component(int component) const {
  if (component < 0 || component >= num_components())
    throw Error(ErrorCode::InvalidArgument, "component " + std::to_string(component));
  if (component >= num_arc_components_) return *this;
  std::vector<Occurrence> want(num_arcs());
  for (int e = 0; e < num_arcs(); ++e) {
    int h = head_[e];
    if (arc_component_[e] == component) h ^= 1;
    want[e] = occ_[e][h];
  }
  return orient_like(*this, want);
}

ResolvedState resolve(const PlanarDiagram& d, const std::vector<int>& v) {
  const auto marked = d.marked();
  if (v.size() != marked.size())
    throw Error(ErrorCode::InvalidArgument, "resolution vector length " + std::to_string(v.size()));
  detail::DisjointSets ds(d.num_arcs());
  ResolvedState s;
  s.v = v;
  size_t k = 0;
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto& a = d.crossings()[c].arcs;
    if (!d.crossings()[c].in_n) {
      ds.unite(a[0], a[2]);
      ds.unite(a[1], a[3]);
      s.retained.push_back(c);
      continue;
    }
    const int bit = v[k++];
    if (bit != 0 && bit != 1)
      throw Error(ErrorCode::InvalidArgument, "resolution entries must be 0 or 1");
    if (bit == 0) {
      ds.unite(a[0], a[1]);
      ds.unite(a[2], a[3]);
    } else {
      ds.unite(a[0], a[3]);
      ds.unite(a[1], a[2]);
    }
  }
  s.arc_circle.assign(d.num_arcs(), -1);
  std::vector<int> root_id(d.num_arcs(), -1);
  int next = 0;
  for (int e = 0; e < d.num_arcs(); ++e) {
    int r = ds.find(e);
    if (root_id[r] < 0) root_id[r] = next++;
    s.arc_circle[e] = root_id[r];
  }
  s.num_circles = next + d.free_circles();
  return s;
}

ResolvedState resolve_mask(const PlanarDiagram& d, uint64_t mask) {
  std::vector<int> v(d.num_marked());
  for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>((mask >> i) & 1u);
  return resolve(d, v);
}

PlanarDiagram resolved_diagram(const PlanarDiagram& d, const std::vector<int>& v) {
  const auto marked = d.marked();
  if (v.size() != marked.size())
    throw Error(ErrorCode::InvalidArgument, "resolution vector length " + std::to_string(v.size()));
  detail::DisjointSets ds(d.num_arcs());
  std::vector<int> retained;
  size_t k = 0;
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto& a = d.crossings()[c].arcs;
    if (!d.crossings()[c].in_n) {
      retained.push_back(c);
      continue;
    }
    if (v[k++] == 0) {
      ds.unite(a[0], a[1]);
      ds.unite(a[2], a[3]);
    } else {
      ds.unite(a[0], a[3]);
      ds.unite(a[1], a[2]);
    }
  }
  std::vector<uint8_t> used(d.num_arcs(), 0);
  for (int c : retained)
    for (int s = 0; s < 4; ++s) used[ds.find(d.crossings()[c].arcs[s])] = 1;
  int free = d.free_circles();
  std::vector<int> new_index(d.num_arcs(), -1);
  std::vector<int> labels;
  for (int e = 0; e < d.num_arcs(); ++e) {
    if (ds.find(e) != e) continue;
    if (!used[e]) {
      ++free;
      continue;
    }
    new_index[e] = static_cast<int>(labels.size());
    labels.push_back(d.label(e));
  }
  std::vector<Crossing> cs;
  for (int c : retained) {
    Crossing x = d.crossings()[c];
    for (int s = 0; s < 4; ++s) x.arcs[s] = new_index[ds.find(x.arcs[s])];
    x.in_n = true;
    cs.push_back(x);
  }
  int bp = -1;
  if (d.basepoint() >= 0) bp = new_index[ds.find(d.basepoint())];
  PlanarDiagram dv = make_diagram(std::move(cs), std::move(labels), free, bp);
  if (!dv.oriented()) {
    std::vector<int> heads(dv.num_arcs());
    for (int e = 0; e < dv.num_arcs(); ++e) heads[e] = dv.head(e);
    dv = dv.with_heads(heads);
  }
  return dv;
}

std::vector<int> oriented_resolution(const PlanarDiagram& d) {
  std::vector<int> o;
  for (int c : d.marked()) o.push_back(d.sign(c) > 0 ? 0 : 1);
  return o;
}

int writhe_unlink(const PlanarDiagram& u) {
  std::map<std::pair<int, int>, int> link;
  int w = 0;
  for (int c = 0; c < u.num_crossings(); ++c) {
    const int s = u.sign(c);
    w += s;
    int p = u.strand_component(c, 0);
    int q = u.strand_component(c, 1);
    if (p != q) link[{std::min(p, q), std::max(p, q)}] += s;
  }
  for (const auto& [pair, sum] : link) {
    if (sum != 0)
      throw Error(ErrorCode::OrientationDependentWrithe,
                  "components " + std::to_string(pair.first) + " and " +
                      std::to_string(pair.second) + " have crossing sum " + std::to_string(sum));
  }
  return w;
}

int writhe_unlink(const PlanarDiagram& d, const ResolvedState& s) {
  return writhe_unlink(resolved_diagram(d, s.v));
}

int simplify_count(const PlanarDiagram& d) {
  std::vector<std::array<int, 4>> xs;
  for (const auto& c : d.crossings()) xs.push_back(c.arcs);
  detail::DisjointSets ds(d.num_arcs());

  auto remove = [&](std::vector<int> idx) {
    std::sort(idx.rbegin(), idx.rend());
    for (int i : idx) {
      ds.unite(xs[i][0], xs[i][2]);
      ds.unite(xs[i][1], xs[i][3]);
      xs.erase(xs.begin() + i);
    }
    for (auto& x : xs)
      for (auto& a : x) a = ds.find(a);
  };

  auto slot_of = [](const std::array<int, 4>& x, int arc, int& count) {
    int slot = -1;
    count = 0;
    for (int s = 0; s < 4; ++s)
      if (x[s] == arc) {
        slot = s;
        ++count;
      }
    return slot;
  };

  bool changed = true;
  while (changed && !xs.empty()) {
    changed = false;
    for (int i = 0; i < static_cast<int>(xs.size()) && !changed; ++i) {
      for (int s = 0; s < 4; ++s) {
        if (xs[i][s] == xs[i][(s + 1) % 4]) {
          remove({i});
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;
    for (int i = 0; i < static_cast<int>(xs.size()) && !changed; ++i) {
      for (int j = i + 1; j < static_cast<int>(xs.size()) && !changed; ++j) {
        std::vector<std::pair<int, int>> shared;
        for (int s = 0; s < 4; ++s) {
          int ci = 0;
          int cj = 0;
          slot_of(xs[i], xs[i][s], ci);
          int t = slot_of(xs[j], xs[i][s], cj);
          if (ci == 1 && cj == 1) shared.push_back({s, t});
        }
        for (size_t p = 0; p < shared.size() && !changed; ++p) {
          for (size_t q = p + 1; q < shared.size() && !changed; ++q) {
            auto [si_x, sj_x] = shared[p];
            auto [si_y, sj_y] = shared[q];
            const bool adj_i = ((si_x - si_y) & 1) != 0;
            const bool adj_j = ((sj_x - sj_y) & 1) != 0;
            const bool same_level = (si_x & 1) == (sj_x & 1);
            if (adj_i && adj_j && same_level) {
              remove({i, j});
              changed = true;
            }
          }
        }
      }
    }
  }
  return static_cast<int>(xs.size());
}

bool is_planar(const PlanarDiagram& d) {
  const int n = d.num_crossings();
  if (n == 0) return true;
  std::vector<uint8_t> seen(4 * n, 0);
  int faces = 0;
  for (int start = 0; start < 4 * n; ++start) {
    if (seen[start]) continue;
    ++faces;
    int dart = start;
    while (!seen[dart]) {
      seen[dart] = 1;
      const int c = dart / 4;
      const int s = dart % 4;
      const int e = d.crossings()[c].arcs[s];
      const auto& oc = d.occurrences(e);
      const Occurrence other = same(oc[0], Occurrence{c, s}) ? oc[1] : oc[0];
      dart = other.crossing * 4 + (other.slot + 1) % 4;
    }
  }
  detail::DisjointSets ds(n);
  for (int e = 0; e < d.num_arcs(); ++e)
    ds.unite(d.occurrences(e)[0].crossing, d.occurrences(e)[1].crossing);
  int k = 0;
  for (int c = 0; c < n; ++c) k += ds.find(c) == c ? 1 : 0;
  return faces == n + 2 * k;
}

PlanarDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw Error(ErrorCode::InvalidArgument, "braid needs at least one strand");
  std::vector<int> cur(strands);
  for (int j = 0; j < strands; ++j) cur[j] = j + 1;
  int next = strands + 1;
  std::vector<std::array<int, 4>> xs;
  for (int g : word) {
    const int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands)
      throw Error(ErrorCode::InvalidArgument, "braid generator " + std::to_string(g));
    const int x = cur[i];
    const int y = cur[i + 1];
    const int left = next++;
    const int right = next++;
    if (g > 0) xs.push_back({y, right, left, x});
    else xs.push_back({x, y, right, left});
    cur[i] = left;
    cur[i + 1] = right;
  }
  int free = 0;
  std::map<int, int> rename;
  for (int j = 0; j < strands; ++j) {
    if (cur[j] == j + 1) ++free;
    else rename[cur[j]] = j + 1;
  }
  for (auto& x : xs)
    for (auto& a : x) {
      auto it = rename.find(a);
      if (it != rename.end()) a = it->second;
    }
  return PlanarDiagram::from_crossings(xs, free);
}

namespace {

class PdParser {
 public:
  explicit PdParser(const std::string& t) : t_(t) {}

  PlanarDiagram parse() {
    skip();
    expect_word("PD");
    skip();
    const char close = open_bracket();
    std::vector<std::array<int, 4>> xs;
    skip();
    if (peek() != close) {
      while (true) {
        xs.push_back(crossing());
        skip();
        if (peek() == ',') {
          ++pos_;
          skip();
          continue;
        }
        break;
      }
    }
    expect(close);
    std::vector<int> n_ids;
    bool has_n = false;
    int basepoint = 0;
    bool has_bp = false;
    int circles = 0;
    bool has_circles = false;
    while (true) {
      skip_separators();
      if (pos_ >= t_.size()) break;
      std::string key = word();
      skip();
      expect('=');
      skip();
      if (key == "N" || key == "n") {
        has_n = true;
        const char c2 = open_bracket();
        skip();
        if (peek() != c2) {
          while (true) {
            n_ids.push_back(integer());
            skip();
            if (peek() == ',') {
              ++pos_;
              skip();
              continue;
            }
            break;
          }
        }
        expect(c2);
      } else if (key == "basepoint") {
        has_bp = true;
        basepoint = integer();
      } else if (key == "circles") {
        has_circles = true;
        circles = integer();
      } else {
        fail("unknown clause '" + key + "'");
      }
    }
    if (xs.empty() && !has_circles) fail("PD[] needs a circles= clause");
    PlanarDiagram d = PlanarDiagram::from_crossings(xs, circles);
    if (has_n) d = d.with_marked(n_ids);
    if (has_bp) d = d.with_basepoint_label(basepoint);
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::MalformedPD, what + " at offset " + std::to_string(pos_));
  }

  char peek() const { return pos_ < t_.size() ? t_[pos_] : '\0'; }

  void skip() {
    while (pos_ < t_.size()) {
      if (std::isspace(static_cast<unsigned char>(t_[pos_]))) {
        ++pos_;
      } else if (t_[pos_] == '#') {
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void skip_separators() {
    while (true) {
      skip();
      if (peek() == ',' || peek() == ';') ++pos_;
      else break;
    }
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char open_bracket() {
    if (peek() == '[') {
      ++pos_;
      return ']';
    }
    if (peek() == '(') {
      ++pos_;
      return ')';
    }
    fail("expected '[' or '('");
  }

  std::string word() {
    size_t start = pos_;
    while (pos_ < t_.size() && (std::isalpha(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a keyword");
    return t_.substr(start, pos_ - start);
  }

  void expect_word(const std::string& w) {
    if (word() != w) fail("expected '" + w + "'");
  }

  int integer() {
    skip();
    size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(t_[pos_ - 1])))
      fail("expected an integer");
    try {
      return std::stoi(t_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }

  std::array<int, 4> crossing() {
    std::string w = word();
    if (w != "X") fail("expected X(...)");
    skip();
    const char close = open_bracket();
    std::array<int, 4> x{};
    for (int s = 0; s < 4; ++s) {
      x[s] = integer();
      skip();
      if (s < 3) expect(',');
      skip();
    }
    expect(close);
    return x;
  }

  const std::string& t_;
  size_t pos_ = 0;
};

PlanarDiagram parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedPD, e.what());
  }
  try {
    std::vector<std::array<int, 4>> xs;
    if (j.contains("crossings")) {
      for (const auto& c : j.at("crossings")) {
        if (!c.is_array() || c.size() != 4)
          throw Error(ErrorCode::MalformedPD, "each crossing needs four arcs");
        xs.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>(), c[3].get<int>()});
      }
    }
    const int circles = j.value("circles", 0);
    if (xs.empty() && circles == 0) throw Error(ErrorCode::MalformedPD, "empty diagram needs circles");
    PlanarDiagram d = PlanarDiagram::from_crossings(xs, circles);
    if (j.contains("n") && !j.at("n").is_null()) d = d.with_marked(j.at("n").get<std::vector<int>>());
    if (j.contains("basepoint") && !j.at("basepoint").is_null())
      d = d.with_basepoint_label(j.at("basepoint").get<int>());
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedPD, e.what());
  }
}

}  // namespace

PlanarDiagram parse_pd(const std::string& text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{') return parse_json(text);
  return PdParser(text).parse();
}

}  // namespace khcube
