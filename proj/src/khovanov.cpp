#include "khcube/khovanov.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <set>

#include "khcube/errors.hpp"
#include "khcube/parallel.hpp"

namespace khcube {

namespace {

struct Binomials {
  std::array<std::array<uint64_t, 34>, 34> c{};
  Binomials() {
    for (int n = 0; n < 34; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
  uint64_t operator()(int n, int k) const {
    if (k < 0 || n < 0 || k > n) return 0;
    return c[n][k];
  }
};

const Binomials kBinom;

// Position of x among words of the same popcount, in increasing numeric order.
uint64_t colex_rank(uint32_t x) {
  uint64_t r = 0;
  int i = 0;
  while (x) {
    const int pos = __builtin_ctz(x);
    ++i;
    r += kBinom(pos, i);
    x &= x - 1;
  }
  return r;
}

uint32_t drop_bit(uint32_t x, int bit) {
  const uint32_t low = x & ((1u << bit) - 1);
  return low | ((x >> (bit + 1)) << bit);
}

uint32_t insert_bit(uint32_t x, int bit) {
  const uint32_t low = x & ((1u << bit) - 1);
  return low | (1u << bit) | ((x >> bit) << (bit + 1));
}

uint32_t next_combination(uint32_t x) {
  const uint32_t c = x & (~x + 1);
  const uint32_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

uint32_t permute(uint32_t x, const uint8_t* perm) {
  uint32_t y = 0;
  while (x) {
    const int c = __builtin_ctz(x);
    y |= 1u << perm[c];
    x &= x - 1;
  }
  return y;
}

}  // namespace

int edge_map(EdgeKind kind, const uint8_t* perm, int /*p*/, int a, int b, int m, int s1, int s2,
             uint32_t x, LocalTerm out[2]) {
  switch (kind) {
    case EdgeKind::NonorientableBand:
      return 0;
    case EdgeKind::Merge: {
      const bool la = (x >> a) & 1u;
      const bool lb = (x >> b) & 1u;
      if (la && lb) return 0;
      uint32_t y = permute(x & ~((1u << a) | (1u << b)), perm);
      if (la || lb) y |= 1u << m;
      out[0] = {y, 1};
      return 1;
    }
    case EdgeKind::Split: {
      const uint32_t base = permute(x & ~(1u << a), perm);
      if ((x >> a) & 1u) {
        out[0] = {base | (1u << s1) | (1u << s2), 1};
        return 1;
      }
      out[0] = {base | (1u << s2), 1};
      out[1] = {base | (1u << s1), 1};
      return 2;
    }
  }
  return 0;
}

int edge_sign(uint32_t v, int k) { return (__builtin_popcount(v & ((1u << k) - 1)) & 1) ? -1 : 1; }

int msign(const std::vector<int>& v, const std::vector<int>& u) {
  if (v.size() != u.size()) throw Error(ErrorCode::InvalidArgument, "vectors differ in length");
  int dist = 0;
  int sum = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    dist += std::abs(v[i] - u[i]);
    sum += v[i];
  }
  return ((dist * (dist - 1) / 2 + sum) % 2) ? -1 : 1;
}

KhovanovComplex::KhovanovComplex(GradedCube cube, KhOptions options)
    : cube_(std::move(cube)), options_(options) {
  const PlanarDiagram& d = cube_.diagram();
  const auto marked = d.marked();
  const uint32_t nv = static_cast<uint32_t>(cube_.vertices().size());
  for (const auto& x : cube_.vertices())
    if (x.p > 31) throw Error(ErrorCode::InvalidArgument, "more than 31 circles in a resolution");

  bp_circle_.resize(nv);
  for (uint32_t v = 0; v < nv; ++v) {
    const auto& st = cube_.vertices()[v].state;
    const int arc_circles = st.num_circles - d.free_circles();
    bp_circle_[v] = d.basepoint() >= 0 ? st.arc_circle[d.basepoint()] : arc_circles;
    if (options_.reduced && bp_circle_[v] >= st.num_circles)
      throw Error(ErrorCode::InvalidArgument, "reduced complex needs a basepoint");
  }

  edge_offset_.resize(nv);
  size_t ne = 0;
  for (uint32_t v = 0; v < nv; ++v) {
    edge_offset_[v] = ne;
    ne += static_cast<size_t>(__builtin_popcount(v));
  }
  if (ne != cube_.edges().size()) throw Error(ErrorCode::InternalInvariant, "edge count mismatch");
  edges_.resize(ne);
  std::vector<size_t> perm_start(ne + 1, 0);
  for (size_t i = 0; i < ne; ++i)
    perm_start[i + 1] = perm_start[i] + static_cast<size_t>(cube_.vertices()[cube_.edges()[i].v].p);
  perms_.resize(perm_start[ne]);

  parallel_for(ne, [&](size_t i) {
    const CubeEdge& ce = cube_.edges()[i];
    const auto& sv = cube_.vertices()[ce.v].state;
    const auto& su = cube_.vertices()[ce.u].state;
    const int kv = sv.num_circles - d.free_circles();
    const int ku = su.num_circles - d.free_circles();
    EdgeInfo& e = edges_[i];
    e.kind = ce.kind;
    e.perm_offset = static_cast<uint32_t>(perm_start[i]);
    uint8_t* perm = perms_.data() + perm_start[i];
    for (int a = 0; a < d.num_arcs(); ++a) perm[sv.arc_circle[a]] = static_cast<uint8_t>(su.arc_circle[a]);
    for (int f = 0; f < d.free_circles(); ++f) perm[kv + f] = static_cast<uint8_t>(ku + f);
    const auto& arcs = d.crossings()[marked[ce.position]].arcs;
    if (ce.kind == EdgeKind::Merge) {
      e.a = static_cast<int8_t>(sv.arc_circle[arcs[0]]);
      e.b = static_cast<int8_t>(sv.arc_circle[arcs[1]]);
      e.m = static_cast<int8_t>(su.arc_circle[arcs[0]]);
      if (e.a == e.b) throw Error(ErrorCode::InternalInvariant, "merge of a circle with itself");
    } else if (ce.kind == EdgeKind::Split) {
      e.a = static_cast<int8_t>(sv.arc_circle[arcs[0]]);
      e.s1 = static_cast<int8_t>(su.arc_circle[arcs[0]]);
      e.s2 = static_cast<int8_t>(su.arc_circle[arcs[2]]);
      if (e.s1 == e.s2) throw Error(ErrorCode::InternalInvariant, "split into a single circle");
    }
  });
}

int KhovanovComplex::q(uint32_t v, uint32_t labels) const {
  const int p = circles(v);
  return p - 2 * __builtin_popcount(labels) + cube_.q_offset(v) +
         (options_.reduced ? options_.reduced_shift : 0);
}

size_t KhovanovComplex::num_generators() const {
  size_t n = 0;
  for (const auto& x : cube_.vertices()) n += size_t{1} << (options_.reduced ? x.p - 1 : x.p);
  return n;
}

int KhovanovComplex::apply_edge(uint32_t v, int k, uint32_t labels, LocalTerm out[2]) const {
  const EdgeInfo& e = edges_[edge_index(v, k)];
  return edge_map(e.kind, perms_.data() + e.perm_offset, circles(v), e.a, e.b, e.m, e.s1, e.s2, labels,
                  out);
}

std::vector<int> KhovanovComplex::touched_circles(uint32_t v, int k) const {
  const auto& st = cube_.vertices()[v].state;
  const auto& arcs = cube_.diagram().crossings()[cube_.diagram().marked()[k]].arcs;
  std::vector<int> out;
  for (int a : arcs) out.push_back(st.arc_circle[a]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BigradedComplex KhovanovComplex::assemble() const {
  const size_t n = num_generators();
  if (n > (size_t{1} << 22)) throw Error(ErrorCode::InvalidArgument, "complex too large to assemble");
  const uint32_t nv = static_cast<uint32_t>(cube_.vertices().size());
  std::vector<size_t> offset(nv);
  size_t total = 0;
  for (uint32_t v = 0; v < nv; ++v) {
    offset[v] = total;
    total += size_t{1} << (options_.reduced ? circles(v) - 1 : circles(v));
  }
  auto index = [&](uint32_t v, uint32_t labels) {
    return static_cast<int>(offset[v] + (options_.reduced ? drop_bit(labels, bp_circle_[v]) : labels));
  };
  BigradedComplex c;
  c.h.resize(total);
  c.q.resize(total);
  std::vector<std::tuple<int, int, Integer>> entries;
  for (uint32_t v = 0; v < nv; ++v) {
    const uint32_t count = 1u << circles(v);
    for (uint32_t x = 0; x < count; ++x) {
      if (!label_ok(v, x)) continue;
      const int col = index(v, x);
      c.h[col] = h(v);
      c.q[col] = q(v, x);
      apply_d(v, x, [&](uint32_t u, uint32_t y, int coeff) {
        entries.emplace_back(index(u, y), col, Integer(coeff));
      });
    }
  }
  c.d = SparseIntMatrix::from_triplets(static_cast<int>(total), static_cast<int>(total), std::move(entries));
  return c;
}

std::vector<int> KhovanovComplex::q_values() const {
  std::set<int> qs;
  for (const auto& x : cube_.vertices()) {
    const int top = q(x.v, 0);
    for (int m = options_.reduced ? 1 : 0; m <= x.p; ++m) qs.insert(top - 2 * m);
  }
  return {qs.begin(), qs.end()};
}

DegreeComplex KhovanovComplex::q_slice(int qv, std::vector<std::pair<uint32_t, uint32_t>>* generators) const {
  const uint32_t nv = static_cast<uint32_t>(cube_.vertices().size());
  const bool red = options_.reduced;
  // Number of free minus labels at each vertex, or -1 when the slice is empty there.
  std::vector<int> minus(nv, -1);
  std::vector<size_t> offset(nv, 0);
  size_t total = 0;
  for (uint32_t v = 0; v < nv; ++v) {
    const int p = circles(v);
    const int diff = q(v, 0) - qv;
    offset[v] = total;
    if (diff < 0 || diff % 2) continue;
    int m = diff / 2;
    if (red) --m;
    const int slots = red ? p - 1 : p;
    if (m < 0 || m > slots) continue;
    minus[v] = m;
    total += kBinom(slots, m);
  }
  if (total > UINT32_MAX) throw Error(ErrorCode::InvalidArgument, "quantum slice too large");

  auto index = [&](uint32_t u, uint32_t y) -> uint32_t {
    const uint32_t w = red ? drop_bit(y, bp_circle_[u]) : y;
    return static_cast<uint32_t>(offset[u] + colex_rank(w));
  };

  DegreeComplex dc;
  dc.degree.resize(total);
  dc.columns.resize(total);
  if (generators) generators->resize(total);
  parallel_for(nv, [&](size_t vi) {
    const uint32_t v = static_cast<uint32_t>(vi);
    if (minus[v] < 0) return;
    const int slots = red ? circles(v) - 1 : circles(v);
    const uint64_t count = kBinom(slots, minus[v]);
    uint32_t w = minus[v] == 0 ? 0u : ((1u << minus[v]) - 1);
    std::vector<std::pair<uint32_t, int64_t>> col;
    for (uint64_t r = 0; r < count; ++r) {
      const uint32_t x = red ? insert_bit(w, bp_circle_[v]) : w;
      const size_t g = offset[v] + r;
      dc.degree[g] = h(v);
      if (generators) (*generators)[g] = {v, x};
      col.clear();
      apply_d(v, x, [&](uint32_t u, uint32_t y, int coeff) { col.emplace_back(index(u, y), coeff); });
      std::sort(col.begin(), col.end());
      auto& out = dc.columns[g];
      for (const auto& [row, val] : col) {
        if (!out.empty() && out.back().first == row) out.back().second += val;
        else out.emplace_back(row, val);
      }
      out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }),
                out.end());
      if (w != 0 && r + 1 < count) w = next_combination(w);
    }
  });
  return dc;
}

HomologyTable KhovanovComplex::homology() const {
  HomologyTable table;
  table.grading = Grading::Bigraded;
  for (int qv : q_values()) {
    const DegreeComplex dc = q_slice(qv);
    for (auto& [hv, g] : degree_homology(dc))
      if (!g.is_zero()) table.groups[{hv, qv}] = g;
  }
  return table;
}

void KhovanovComplex::check_d_squared() const {
  const uint32_t nv = static_cast<uint32_t>(cube_.vertices().size());
  const int n = cube_.dim();
  std::mutex mu;
  std::string failure;
  parallel_for(nv, [&](size_t vi) {
    const uint32_t v = static_cast<uint32_t>(vi);
    std::vector<std::pair<uint32_t, int>> terms;
    for (int k1 = 0; k1 < n; ++k1) {
      if (!((v >> k1) & 1u)) continue;
      for (int k2 = k1 + 1; k2 < n; ++k2) {
        if (!((v >> k2) & 1u)) continue;
        std::vector<int> t = touched_circles(v, k1);
        for (int c : touched_circles(v, k2)) t.push_back(c);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        const uint32_t u1 = v & ~(1u << k1);
        const uint32_t u2 = v & ~(1u << k2);
        const int s1 = edge_sign(v, k1) * edge_sign(u1, k2);
        const int s2 = edge_sign(v, k2) * edge_sign(u2, k1);
        for (uint32_t local = 0; local < (1u << t.size()); ++local) {
          uint32_t x = 0;
          for (size_t i = 0; i < t.size(); ++i)
            if ((local >> i) & 1u) x |= 1u << t[i];
          if (options_.reduced) x |= 1u << bp_circle_[v];
          if (!label_ok(v, x)) continue;
          terms.clear();
          LocalTerm first[2], second[2];
          const int a = apply_edge(v, k1, x, first);
          for (int i = 0; i < a; ++i) {
            const int b = apply_edge(u1, k2, first[i].labels, second);
            for (int j = 0; j < b; ++j) terms.emplace_back(second[j].labels, s1 * first[i].coeff * second[j].coeff);
          }
          const int c = apply_edge(v, k2, x, first);
          for (int i = 0; i < c; ++i) {
            const int b = apply_edge(u2, k1, first[i].labels, second);
            for (int j = 0; j < b; ++j) terms.emplace_back(second[j].labels, s2 * first[i].coeff * second[j].coeff);
          }
          std::sort(terms.begin(), terms.end());
          for (size_t i = 0; i < terms.size();) {
            int sum = 0;
            size_t j = i;
            for (; j < terms.size() && terms[j].first == terms[i].first; ++j) sum += terms[j].second;
            if (sum != 0) {
              std::lock_guard<std::mutex> lock(mu);
              if (failure.empty())
                failure = "face at v=" + std::to_string(v) + " positions " + std::to_string(k1) + "," +
                          std::to_string(k2) + " gives " + std::to_string(sum);
              return;
            }
            i = j;
          }
        }
      }
    }
  });
  if (!failure.empty()) throw Error(ErrorCode::SignInconsistency, failure);
}

void KhovanovComplex::check_bidegree() const {
  const uint32_t nv = static_cast<uint32_t>(cube_.vertices().size());
  const int n = cube_.dim();
  std::mutex mu;
  std::string failure;
  parallel_for(nv, [&](size_t vi) {
    const uint32_t v = static_cast<uint32_t>(vi);
    for (int k = 0; k < n; ++k) {
      if (!((v >> k) & 1u)) continue;
      const uint32_t u = v & ~(1u << k);
      const std::vector<int> t = touched_circles(v, k);
      for (uint32_t local = 0; local < (1u << t.size()); ++local) {
        uint32_t x = 0;
        for (size_t i = 0; i < t.size(); ++i)
          if ((local >> i) & 1u) x |= 1u << t[i];
        if (options_.reduced) x |= 1u << bp_circle_[v];
        LocalTerm out[2];
        const int m = apply_edge(v, k, x, out);
        for (int i = 0; i < m; ++i) {
          if (h(u) != h(v) + 1 || q(u, out[i].labels) != q(v, x)) {
            std::lock_guard<std::mutex> lock(mu);
            if (failure.empty())
              failure = "edge at v=" + std::to_string(v) + " position " + std::to_string(k) + " has bidegree (" +
                        std::to_string(h(u) - h(v)) + "," + std::to_string(q(u, out[i].labels) - q(v, x)) + ")";
            return;
          }
        }
      }
    }
  });
  if (!failure.empty()) throw Error(ErrorCode::InternalInvariant, failure);
}

KhovanovComplex build_khovanov(const PlanarDiagram& d, const KhOptions& options) {
  BuildOptions b;
  b.trust_pseudo = options.trust_pseudo;
  return KhovanovComplex(build_cube(d, b), options);
}

HomologyTable khovanov_homology(const PlanarDiagram& d, const KhOptions& options) {
  return build_khovanov(d, options).homology();
}

std::map<std::pair<int, int>, int> rational_ranks(const HomologyTable& t) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& [k, g] : t.groups)
    if (g.free_rank) out[k] = g.free_rank;
  return out;
}

ReidemeisterReport reidemeister_compare(const PlanarDiagram& d1, const PlanarDiagram& d2,
                                        const KhOptions& options) {
  ReidemeisterReport r;
  r.first = khovanov_homology(d1, options);
  r.second = khovanov_homology(d2, options);
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, g] : r.first.groups)
    if (!g.is_zero()) keys.insert(k);
  for (const auto& [k, g] : r.second.groups)
    if (!g.is_zero()) keys.insert(k);
  r.equal = true;
  for (const auto& k : keys) {
    auto a = r.first.groups.find(k);
    auto b = r.second.groups.find(k);
    const HomologyGroup ga = a == r.first.groups.end() ? HomologyGroup{} : a->second;
    const HomologyGroup gb = b == r.second.groups.end() ? HomologyGroup{} : b->second;
    if (!(ga == gb)) {
      r.equal = false;
      r.first_difference = k;
      break;
    }
  }
  return r;
}

}  // namespace khcube
