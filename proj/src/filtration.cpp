#include "khcube/filtration.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <json.hpp>

#include "khcube/errors.hpp"

namespace khcube {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

using QCol = std::vector<std::pair<int, Integer>>;

// c = s * c - t * o on sorted columns.
void combine(QCol& c, const Integer& s, const Integer& t, const QCol& o) {
  QCol out;
  out.reserve(c.size() + o.size());
  size_t i = 0, j = 0;
  while (i < c.size() || j < o.size()) {
    if (j == o.size() || (i < c.size() && c[i].first < o[j].first)) {
      out.emplace_back(c[i].first, s * c[i].second);
      ++i;
    } else if (i == c.size() || o[j].first < c[i].first) {
      out.emplace_back(o[j].first, -t * o[j].second);
      ++j;
    } else {
      Integer v = s * c[i].second - t * o[j].second;
      if (v != 0) out.emplace_back(c[i].first, v);
      ++i;
      ++j;
    }
  }
  Integer g = 0;
  for (const auto& [r, v] : out) g = boost::multiprecision::gcd(g, v);
  if (g > 1)
    for (auto& [r, v] : out) v /= g;
  c.swap(out);
}

}  // namespace

FilteredComplex make_filtered(BigradedComplex c, Weight w) {
  if (w.a < 0 || w.b < 0 || (w.a == 0 && w.b == 0))
    throw Error(ErrorCode::InvalidArgument, "weight must be nonnegative and not both zero");
  FilteredComplex f{std::move(c), w};
  const auto& cx = f.complex;
  for (int x = 0; x < cx.size(); ++x)
    for (const auto& [y, v] : cx.d.column(x)) {
      (void)v;
      const int dp = f.p(y) - f.p(x);
      if (dp < w.a || (dp == 0 && cx.h[y] <= cx.h[x]))
        throw Error(ErrorCode::NotFiltered, "entry from generator " + std::to_string(x) + " to " +
                                                std::to_string(y) + " raises p by " + std::to_string(dp));
    }
  return f;
}

MapOrder op_order(const SparseIntMatrix& f, const std::vector<int>& src_h, const std::vector<int>& src_q,
                  const std::vector<int>& dst_h, const std::vector<int>& dst_q) {
  MapOrder o;
  for (int x = 0; x < f.cols(); ++x)
    for (const auto& [y, v] : f.column(x)) {
      if (v == 0) continue;
      o.s = std::min(o.s, dst_h[y] - src_h[x]);
      o.t = std::min(o.t, dst_q[y] - src_q[x]);
    }
  return o;
}

MapOrder op_order(const SparseIntMatrix& f, const BigradedComplex& c) {
  return op_order(f, c.h, c.q, c.h, c.q);
}

int SpectralPage::total() const {
  int t = 0;
  for (const auto& [k, r] : groups) t += r;
  return t;
}

int SpectralPage::d_total() const {
  int t = 0;
  for (const auto& [k, r] : d_ranks) t += r;
  return t;
}

SpectralSequence spectral_sequence(const FilteredComplex& fc) {
  const auto& c = fc.complex;
  const int n = c.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const auto kx = std::make_tuple(fc.p(x), c.h[x], c.q[x]);
    const auto ky = std::make_tuple(fc.p(y), c.h[y], c.q[y]);
    if (kx != ky) return kx > ky;
    return x < y;
  });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<QCol> cols(n);
  for (int j = 0; j < n; ++j) {
    for (const auto& [y, v] : c.d.column(order[j])) {
      if (pos[y] >= j) throw Error(ErrorCode::NotFiltered, "differential is not triangular in filtration order");
      cols[j].emplace_back(pos[y], v);
    }
    std::sort(cols[j].begin(), cols[j].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  std::vector<int> owner(n, -1);  // low row -> column
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < n; ++j) {
    auto& col = cols[j];
    while (!col.empty()) {
      const int low = col.back().first;
      const int k = owner[low];
      if (k < 0) break;
      const Integer s = cols[k].back().second;
      const Integer t = col.back().second;
      combine(col, s, t, cols[k]);
    }
    if (!col.empty()) {
      owner[col.back().first] = j;
      pairs.emplace_back(col.back().first, j);
    }
  }

  if (static_cast<int>(pairs.size()) != rank_q(c.d))
    throw Error(ErrorCode::InternalInvariant, "persistence pairs disagree with the rank of d");

  std::vector<int> gap_of(n, -1);
  int max_gap = -1;
  for (const auto& [lo, j] : pairs) {
    const int gap = fc.p(order[lo]) - fc.p(order[j]);
    gap_of[lo] = gap;
    gap_of[j] = gap;
    max_gap = std::max(max_gap, gap);
  }

  SpectralSequence ss;
  ss.homology_rank = n - 2 * static_cast<int>(pairs.size());
  for (int r = 0; r <= max_gap + 1; ++r) {
    SpectralPage page;
    page.r = r;
    for (int i = 0; i < n; ++i) {
      if (gap_of[i] >= 0 && gap_of[i] < r) continue;
      ++page.groups[{fc.p(order[i]), fc.complementary(order[i])}];
    }
    for (const auto& [lo, j] : pairs)
      if (fc.p(order[lo]) - fc.p(order[j]) == r) ++page.d_ranks[fc.p(order[j])];
    ss.pages.push_back(std::move(page));
  }
  return ss;
}

std::string SpectralSequence::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& page : pages) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& [k, rank] : page.groups)
      groups.push_back({{"p", k.first}, {"complementary", k.second}, {"rank", rank}});
    nlohmann::json d = nlohmann::json::array();
    for (const auto& [p, rank] : page.d_ranks) d.push_back({{"p", p}, {"rank", rank}});
    out.push_back({{"r", page.r}, {"groups", groups}, {"d_ranks", d}});
  }
  return out.dump(2);
}

SparseIntMatrix sandbox_nilpotent(const BigradedComplex& c, uint64_t seed, const SandboxOptions& o) {
  if (o.min_dq < 1 && o.min_dh < 1)
    throw Error(ErrorCode::InvalidArgument, "perturbation must raise h or q strictly");
  const int n = c.size();
  std::mt19937_64 rng(seed);
  const uint64_t threshold = static_cast<uint64_t>(o.density * 1e9);
  std::vector<std::tuple<int, int, Integer>> entries;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (c.h[y] - c.h[x] < o.min_dh || c.q[y] - c.q[x] < o.min_dq) continue;
      const uint64_t u = rng();
      if ((u >> 1) % 1000000000ull >= threshold) continue;
      entries.emplace_back(y, x, Integer((u & 1u) ? 1 : -1));
    }
  return SparseIntMatrix::from_triplets(n, n, std::move(entries));
}

PerturbedDifferential sandbox_conjugate(const BigradedComplex& c, const SparseIntMatrix& nmat) {
  const int n = c.size();
  const SparseIntMatrix id = SparseIntMatrix::identity(n);
  SparseIntMatrix inv = id;
  SparseIntMatrix term = id;
  const SparseIntMatrix neg = -nmat;
  for (int k = 0; k <= n; ++k) {
    term = term * neg;
    if (term.is_zero()) break;
    if (k == n) throw Error(ErrorCode::OrderViolation, "perturbation is not nilpotent");
    inv = inv + term;
  }
  PerturbedDifferential out;
  out.base = c.d;
  out.g = id + nmat;
  out.has_certificate = true;
  out.d_sharp = out.g * c.d * inv;
  return out;
}

PerturbedDifferential sandbox_perturb(const BigradedComplex& c, uint64_t seed, const SandboxOptions& o) {
  PerturbedDifferential p = sandbox_conjugate(c, sandbox_nilpotent(c, seed, o));
  const MapOrder od = op_order(p.d_sharp, c);
  const MapOrder odiff = op_order(p.d_sharp - p.base, c);
  if (!od.at_least(1, 0) || !odiff.at_least(1, 2))
    throw Error(ErrorCode::OrderViolation, "conjugated differential breaks the order contract");
  return p;
}

PerturbedDifferential sandbox_raw(const BigradedComplex& c, const SparseIntMatrix& d_sharp) {
  if (d_sharp.rows() != c.size() || d_sharp.cols() != c.size())
    throw Error(ErrorCode::InvalidArgument, "matrix size differs from the complex");
  BigradedComplex probe{c.h, c.q, d_sharp};
  check_differential(probe);
  const MapOrder od = op_order(d_sharp, c);
  if (!od.at_least(1, 0))
    throw Error(ErrorCode::OrderViolation, "order of d is (" + std::to_string(od.s) + "," + std::to_string(od.t) + ")");
  const MapOrder odiff = op_order(d_sharp - c.d, c);
  if (!odiff.at_least(1, 2))
    throw Error(ErrorCode::OrderViolation,
                "order of the difference is (" + std::to_string(odiff.s) + "," + std::to_string(odiff.t) + ")");
  PerturbedDifferential out;
  out.d_sharp = d_sharp;
  out.base = c.d;
  return out;
}

double sandbox_expected_entries(const std::vector<int>& h, const std::vector<int>& q, const SandboxOptions& o) {
  std::map<std::pair<int, int>, double> count;
  for (size_t i = 0; i < h.size(); ++i) count[{h[i], q[i]}] += 1;
  double pairs = 0;
  for (const auto& [a, na] : count)
    for (const auto& [b, nb] : count)
      if (b.first - a.first >= o.min_dh && b.second - a.second >= o.min_dq) pairs += na * nb;
  return pairs * o.density;
}

int q_order_bound(int chi, int s_dot_s, int dim_g) {
  if (s_dot_s % 2 != 0) throw Error(ErrorCode::OddSelfIntersection, std::to_string(s_dot_s));
  return chi + s_dot_s - 4 * floor_div(s_dot_s, 8) + dim_g;
}

std::pair<int, int> cobordism_order(int chi, int s_dot_s) {
  if (s_dot_s % 2 != 0) throw Error(ErrorCode::OddSelfIntersection, std::to_string(s_dot_s));
  return {s_dot_s / 2, chi + 3 * s_dot_s / 2};
}

}  // namespace khcube
