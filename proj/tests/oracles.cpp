#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

using Occ = std::pair<int, int>;  // crossing, slot

std::map<int, std::vector<Occ>> occurrences(const Pd& pd) {
  std::map<int, std::vector<Occ>> occ;
  for (int c = 0; c < static_cast<int>(pd.size()); ++c)
    for (int s = 0; s < 4; ++s) occ[pd[c][s]].push_back({c, s});
  for (const auto& [l, v] : occ)
    if (v.size() != 2) throw std::runtime_error("label " + std::to_string(l) + " not used twice");
  return occ;
}

int smoothing_partner(int slot, int bit) {
  if (bit == 0) return slot ^ 1;  // (0,1) (2,3)
  return 3 - slot;                // (0,3) (1,2)
}

// Circles as lists of labels.
std::vector<std::vector<int>> circles(const Pd& pd, uint32_t v) {
  const auto occ = occurrences(pd);
  std::set<int> seen;
  std::vector<std::vector<int>> out;
  for (const auto& [start, o] : occ) {
    if (seen.count(start)) continue;
    std::vector<int> circle;
    int label = start;
    Occ from = o[0];
    while (!seen.count(label)) {
      seen.insert(label);
      circle.push_back(label);
      const auto& pair = occ.at(label);
      const Occ to = (pair[0] == from) ? pair[1] : pair[0];
      const int partner = smoothing_partner(to.second, (v >> to.first) & 1u);
      label = pd[to.first][partner];
      from = {to.first, partner};
    }
    std::sort(circle.begin(), circle.end());
    out.push_back(circle);
  }
  return out;
}

Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

void egcd(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y) {
  if (a != 0 && b % a == 0) {
    g = iabs(a);
    x = a < 0 ? -1 : 1;
    y = 0;
    return;
  }
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  g = old_r;
  x = old_s;
  y = old_t;
  if (g < 0) {
    g = -g;
    x = -x;
    y = -y;
  }
}

using Poly = std::map<int, Integer>;

void add_to(Poly& p, int e, const Integer& c) {
  Integer& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_to(out, ea + eb, ca * cb);
  return out;
}

}  // namespace

int count_circles(const Pd& pd, uint32_t v, int free_circles) {
  return static_cast<int>(circles(pd, v).size()) + free_circles;
}

std::map<int, int> circle_of_label(const Pd& pd, uint32_t v) {
  std::map<int, int> out;
  const auto cs = circles(pd, v);
  for (size_t i = 0; i < cs.size(); ++i)
    for (int l : cs[i]) out[l] = static_cast<int>(i);
  return out;
}

int label_sign(const std::array<int, 4>& x, const Pd&) {
  const int b = x[1], d = x[3];
  return (b - d == 1 || d - b > 1) ? 1 : -1;
}

std::vector<Integer> smith_divisors(IntMatrix a) {
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : 0;
  std::vector<Integer> diag;
  size_t t = 0;
  for (size_t col = 0; col < n && t < m; ++col) {
    size_t piv = m;
    for (size_t i = t; i < m; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    std::swap(a[t], a[piv]);
    if (col != t)
      for (size_t i = 0; i < m; ++i) std::swap(a[i][col], a[i][t]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer g, x, y;
        egcd(a[t][t], a[i][t], g, x, y);
        const Integer p = a[t][t] / g, q = a[i][t] / g;
        for (size_t j = t; j < n; ++j) {
          const Integer u = a[t][j], w = a[i][j];
          a[t][j] = x * u + y * w;
          a[i][j] = -q * u + p * w;
        }
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer g, x, y;
        egcd(a[t][t], a[t][j], g, x, y);
        const Integer p = a[t][t] / g, q = a[t][j] / g;
        for (size_t i = t; i < m; ++i) {
          const Integer u = a[i][t], w = a[i][j];
          a[i][t] = x * u + y * w;
          a[i][j] = -q * u + p * w;
        }
        dirty = true;
      }
      for (size_t i = t + 1; i < m && !dirty; ++i)
        if (a[i][t] != 0) dirty = true;
    }
    diag.push_back(iabs(a[t][t]));
    ++t;
  }
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      const Integer g = boost::multiprecision::gcd(diag[i], diag[j]);
      const Integer l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

int gauss_rank(const IntMatrix& in) {
  IntMatrix a = in;
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : 0;
  size_t r = 0;
  Integer prev = 1;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[r], a[p]);
    for (size_t i = r + 1; i < m; ++i) {
      for (size_t j = c + 1; j < n; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

Integer bareiss_det(IntMatrix a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Table khovanov(const Pd& pd, bool reduced, int basepoint_label, int reduced_shift) {
  const int n = static_cast<int>(pd.size());
  int n_plus = 0, n_minus = 0;
  for (const auto& x : pd) (label_sign(x, pd) > 0 ? n_plus : n_minus)++;
  if (reduced && basepoint_label == 0) basepoint_label = pd.empty() ? 0 : pd[0][0];

  struct Gen {
    uint32_t v;
    std::vector<int> labels;  // +1 / -1 per circle
    bool operator<(const Gen& o) const { return std::tie(v, labels) < std::tie(o.v, o.labels); }
  };
  std::vector<std::vector<std::vector<int>>> circ(1u << n);
  for (uint32_t v = 0; v < (1u << n); ++v) circ[v] = circles(pd, v);

  std::map<Gen, int> index;
  std::vector<Gen> gens;
  std::vector<int> hs, qs;
  for (uint32_t v = 0; v < (1u << n); ++v) {
    const int p = static_cast<int>(circ[v].size());
    const int sum = __builtin_popcount(v);
    for (uint32_t bits = 0; bits < (1u << p); ++bits) {
      Gen g{v, std::vector<int>(p)};
      int qsum = 0;
      for (int i = 0; i < p; ++i) {
        g.labels[i] = ((bits >> i) & 1u) ? -1 : 1;
        qsum += g.labels[i];
      }
      if (reduced) {
        int bc = -1;
        for (int i = 0; i < p; ++i)
          if (std::binary_search(circ[v][i].begin(), circ[v][i].end(), basepoint_label)) bc = i;
        if (g.labels[bc] != -1) continue;
      }
      index[g] = static_cast<int>(gens.size());
      gens.push_back(g);
      hs.push_back(-sum + n_minus);
      qs.push_back(qsum - sum - n_plus + 2 * n_minus + (reduced ? reduced_shift : 0));
    }
  }

  const size_t N = gens.size();
  std::map<std::pair<int, int>, Integer> entries;  // (row, col)
  for (size_t col = 0; col < N; ++col) {
    const Gen& g = gens[col];
    for (int c = 0; c < n; ++c) {
      if (!((g.v >> c) & 1u)) continue;
      const uint32_t u = g.v & ~(1u << c);
      const int sign = (__builtin_popcount(g.v & ((1u << c) - 1)) % 2) ? -1 : 1;
      const auto& cv = circ[g.v];
      const auto& cu = circ[u];
      std::vector<int> gone, fresh;
      std::vector<int> u_from_v(cu.size(), -1);
      for (size_t i = 0; i < cv.size(); ++i) {
        auto it = std::find(cu.begin(), cu.end(), cv[i]);
        if (it == cu.end()) gone.push_back(static_cast<int>(i));
        else u_from_v[it - cu.begin()] = static_cast<int>(i);
      }
      for (size_t j = 0; j < cu.size(); ++j)
        if (u_from_v[j] < 0) fresh.push_back(static_cast<int>(j));
      std::vector<std::vector<int>> outs;
      std::vector<int> base(cu.size(), 0);
      for (size_t j = 0; j < cu.size(); ++j)
        if (u_from_v[j] >= 0) base[j] = g.labels[u_from_v[j]];
      if (gone.size() == 2 && fresh.size() == 1) {
        const int a = g.labels[gone[0]], b = g.labels[gone[1]];
        if (a == -1 && b == -1) continue;
        base[fresh[0]] = (a == 1 && b == 1) ? 1 : -1;
        outs.push_back(base);
      } else if (gone.size() == 1 && fresh.size() == 2) {
        if (g.labels[gone[0]] == 1) {
          auto o1 = base, o2 = base;
          o1[fresh[0]] = 1;
          o1[fresh[1]] = -1;
          o2[fresh[0]] = -1;
          o2[fresh[1]] = 1;
          outs.push_back(o1);
          outs.push_back(o2);
        } else {
          base[fresh[0]] = -1;
          base[fresh[1]] = -1;
          outs.push_back(base);
        }
      } else {
        throw std::runtime_error("saddle neither merges nor splits");
      }
      for (const auto& lab : outs) {
        auto it = index.find(Gen{u, lab});
        if (it == index.end()) continue;
        entries[{it->second, static_cast<int>(col)}] += sign;
      }
    }
  }

  std::map<std::pair<int, int>, std::vector<int>> slots;
  for (size_t i = 0; i < N; ++i) slots[{hs[i], qs[i]}].push_back(static_cast<int>(i));
  auto block = [&](int h, int q) {
    IntMatrix m;
    auto src = slots.find({h, q});
    auto dst = slots.find({h + 1, q});
    if (src == slots.end() || dst == slots.end()) return m;
    m.assign(dst->second.size(), std::vector<Integer>(src->second.size(), 0));
    for (size_t i = 0; i < dst->second.size(); ++i)
      for (size_t j = 0; j < src->second.size(); ++j) {
        auto it = entries.find({dst->second[i], src->second[j]});
        if (it != entries.end()) m[i][j] = it->second;
      }
    return m;
  };
  Table out;
  for (const auto& [k, xs] : slots) {
    const auto out_div = smith_divisors(block(k.first, k.second));
    const auto in_div = smith_divisors(block(k.first - 1, k.second));
    Group g;
    g.free_rank = static_cast<int>(xs.size()) - static_cast<int>(out_div.size()) - static_cast<int>(in_div.size());
    for (const auto& d : in_div)
      if (d > 1) g.torsion.push_back(d);
    if (g.free_rank != 0 || !g.torsion.empty()) out[k] = g;
  }
  return out;
}

std::map<int, Integer> jones_half(const Pd& pd) {
  const int n = static_cast<int>(pd.size());
  const Poly delta = {{2, -1}, {-2, -1}};
  Poly bracket;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    const int b = __builtin_popcount(s);
    const int a = n - b;
    Poly term = {{a - b, 1}};
    const int c = count_circles(pd, s);
    for (int i = 1; i < c; ++i) term = mul(term, delta);
    for (const auto& [e, v] : term) add_to(bracket, e, v);
  }
  int w = 0;
  for (const auto& x : pd) w += label_sign(x, pd);
  // (-A^3)^(-w)
  Poly norm = {{-3 * w, (w % 2) ? -1 : 1}};
  Poly v = mul(norm, bracket);
  std::map<int, Integer> out;
  for (const auto& [e, c] : v) {
    if (e % 2 != 0) throw std::runtime_error("odd power of A");
    out[-e / 2] += c;  // t^(1/2) = A^-2
  }
  return out;
}

std::map<int, Integer> unnormalized_jones(const Pd& pd) {
  std::map<int, Integer> v;
  for (const auto& [k, c] : jones_half(pd)) {
    // (t^(1/2))^k = (-1)^k q^-k
    const Integer s = (k % 2) ? Integer(-c) : c;
    v[-k] += s;
  }
  std::map<int, Integer> out;
  for (const auto& [e, c] : v) {
    out[e + 1] += c;
    out[e - 1] += c;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

namespace {

int rot(int s) { return 4 * (s / 4) + (s % 4 + 1) % 4; }

bool connected_planar(const std::vector<int>& m, int n) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int s = 0; s < 4 * n; ++s) parent[find(s / 4)] = find(m[s] / 4);
  for (int i = 0; i < n; ++i)
    if (find(i) != find(0)) return false;
  std::vector<char> seen(4 * n, 0);
  int faces = 0;
  for (int s = 0; s < 4 * n; ++s) {
    if (seen[s]) continue;
    ++faces;
    int d = s;
    while (!seen[d]) {
      seen[d] = 1;
      d = rot(m[d]);
    }
  }
  return faces == n + 2;
}

std::vector<int> canonical_code(const std::vector<int>& m, int n) {
  std::vector<int> best;
  const int darts = 4 * n;
  std::vector<int> lab(darts), order;
  for (int root = 0; root < darts; ++root) {
    std::fill(lab.begin(), lab.end(), -1);
    order.clear();
    lab[root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < order.size(); ++i) {
      for (int e : {rot(order[i]), m[order[i]]})
        if (lab[e] < 0) {
          lab[e] = static_cast<int>(order.size());
          order.push_back(e);
        }
    }
    std::vector<int> code;
    code.reserve(2 * darts);
    for (int d : order) {
      code.push_back(lab[rot(d)]);
      code.push_back(lab[m[d]]);
    }
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace

std::vector<std::vector<int>> planar_maps(int n) {
  const int darts = 4 * n;
  std::vector<int> m(darts, -1);
  std::set<std::vector<int>> codes;
  std::vector<std::vector<int>> out;
  std::function<void()> rec = [&]() {
    int first = -1;
    for (int s = 0; s < darts; ++s)
      if (m[s] < 0) {
        first = s;
        break;
      }
    if (first < 0) {
      if (!connected_planar(m, n)) return;
      if (codes.insert(canonical_code(m, n)).second) out.push_back(m);
      return;
    }
    for (int t = first + 1; t < darts; ++t) {
      if (m[t] >= 0) continue;
      m[first] = t;
      m[t] = first;
      rec();
      m[first] = -1;
      m[t] = -1;
    }
  };
  rec();
  return out;
}

std::vector<Pd> decorated_diagrams(const std::vector<int>& m, int n) {
  const int darts = 4 * n;
  // Components as forward start slots.
  std::vector<int> starts;
  {
    std::vector<char> seen(darts, 0);
    for (int s0 = 0; s0 < darts; ++s0) {
      if (seen[s0]) continue;
      starts.push_back(s0);
      int s = s0;
      do {
        seen[s] = 1;
        const int t = m[s];
        seen[t] = 1;
        s = t ^ 2;
      } while (s != s0);
    }
  }
  const int k = static_cast<int>(starts.size());
  std::vector<Pd> out;
  for (uint32_t flips = 0; flips < (1u << (k - 1)); ++flips) {
    std::vector<int> lab(darts, 0);
    std::vector<char> enter(darts, 0);
    int next = 1;
    for (int comp = 0; comp < k; ++comp) {
      const bool rev = comp > 0 && ((flips >> (comp - 1)) & 1u);
      const int s0 = rev ? m[starts[comp]] : starts[comp];
      int s = s0;
      do {
        const int t = m[s];
        lab[s] = next;
        lab[t] = next;
        enter[t] = 1;
        ++next;
        s = t ^ 2;
      } while (s != s0);
    }
    for (uint32_t under = 0; under < (1u << n); ++under) {
      Pd pd(n);
      for (int c = 0; c < n; ++c) {
        const int parity = (under >> c) & 1u;
        const int e = enter[4 * c + parity] ? parity : parity + 2;
        for (int i = 0; i < 4; ++i) pd[c][i] = lab[4 * c + (e + i) % 4];
      }
      out.push_back(pd);
    }
  }
  return out;
}

Pd relabel_along_strands(const Pd& pd) {
  const auto occ = occurrences(pd);
  std::map<int, int> fresh;
  int next = 1;
  // Components that pass under somewhere first, so their direction is forced.
  std::vector<Occ> starts;
  for (int c = 0; c < static_cast<int>(pd.size()); ++c) starts.push_back({c, 0});
  for (int c = 0; c < static_cast<int>(pd.size()); ++c) starts.push_back({c, 1});
  for (const auto& start : starts) {
    if (fresh.count(pd[start.first][start.second])) continue;
    // Walk backwards to the entering occurrence, then forward along the component.
    Occ at = start;
    while (true) {
      const int label = pd[at.first][at.second];
      if (fresh.count(label)) break;
      fresh[label] = next++;
      const Occ out = {at.first, (at.second + 2) % 4};
      const auto& pair = occ.at(pd[out.first][out.second]);
      at = (pair[0] == out) ? pair[1] : pair[0];
    }
  }
  Pd out = pd;
  for (auto& x : out)
    for (int& l : x) l = fresh.at(l);
  return out;
}

std::string to_pd_text(const Pd& pd) {
  std::ostringstream os;
  os << "PD[";
  for (size_t i = 0; i < pd.size(); ++i) {
    if (i) os << ",";
    os << "X(" << pd[i][0] << "," << pd[i][1] << "," << pd[i][2] << "," << pd[i][3] << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace oracle
