#include "khcube/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include <json.hpp>

#include "khcube/errors.hpp"
#include "detail.hpp"

namespace khcube {

namespace {

using Matrix = std::vector<std::vector<LaurentPoly>>;

LaurentPoly bareiss_det(Matrix m) {
  const size_t n = m.size();
  if (n == 0) return LaurentPoly(1);
  LaurentPoly prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return LaurentPoly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divide_exact(prev);
      m[i][k] = LaurentPoly();
    }
    prev = m[k][k];
  }
  LaurentPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace

LaurentPoly alexander(const PlanarDiagram& d) {
  if (d.num_components() > 1)
    throw Error(ErrorCode::MultiComponent, std::to_string(d.num_components()) + " components");
  const int n = d.num_crossings();
  if (n == 0) return LaurentPoly(1);

  detail::DisjointSets ds(d.num_arcs());
  for (const auto& c : d.crossings()) ds.unite(c.arcs[1], c.arcs[3]);
  std::vector<int> gen(d.num_arcs(), -1);
  int ng = 0;
  for (int e = 0; e < d.num_arcs(); ++e) {
    const int r = ds.find(e);
    if (gen[r] < 0) gen[r] = ng++;
    gen[e] = gen[r];
  }
  if (ng != n) throw Error(ErrorCode::InternalInvariant, "over-arc count differs from crossing count");

  const LaurentPoly t = LaurentPoly::T();
  const LaurentPoly tinv = LaurentPoly::monomial(1, -1);
  const LaurentPoly one(1);
  Matrix a(n, std::vector<LaurentPoly>(n));
  for (int c = 0; c < n; ++c) {
    const auto& arcs = d.crossings()[c].arcs;
    const bool positive = d.sign(c) > 0;
    a[c][gen[arcs[0]]] = a[c][gen[arcs[0]]] + (positive ? t : tinv);
    a[c][gen[arcs[2]]] = a[c][gen[arcs[2]]] - one;
    a[c][gen[arcs[1]]] = a[c][gen[arcs[1]]] + (one - (positive ? t : tinv));
  }
  Matrix minor(n - 1, std::vector<LaurentPoly>(n - 1));
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) minor[i][j] = a[i][j];
  LaurentPoly delta = bareiss_det(std::move(minor));
  if (delta.is_zero()) return delta;
  const int lo = delta.min_degree();
  const int hi = delta.max_degree();
  if ((lo + hi) % 2 != 0) throw Error(ErrorCode::InternalInvariant, "Alexander polynomial has odd span");
  delta = delta.shift(-(lo + hi) / 2);
  if (delta.coefficient(delta.max_degree()) < 0) delta = -delta;
  return delta;
}

long long rank_lower_bound(const LaurentPoly& delta) {
  return static_cast<long long>(delta.abs_coeff_sum());
}

int mod4_class(int i, int j) { return (((j - i - 1) % 4) + 4) % 4; }

Mod4Table mod4_betti(const RankTable& ranks) {
  Mod4Table t;
  for (const auto& [k, r] : ranks) t.betti[mod4_class(k.first, k.second)] += r;
  return t;
}

bool admissible_move(std::pair<int, int> s, std::pair<int, int> t, FiltrationCase mode) {
  const int di = t.first - s.first;
  const int dj = t.second - s.second;
  const int drow = dj - di;
  if (drow < -1) return false;
  if ((((drow + 1) % 4) + 4) % 4 != 0) return false;
  return mode == FiltrationCase::H ? di >= 1 : dj >= 1;
}

FeasibilityReport differential_feasibility(const RankTable& ranks, int target_rank,
                                           const FeasibilityOptions& options) {
  FeasibilityReport rep;
  rep.mode = options.mode;
  rep.target_rank = target_rank;
  for (const auto& [k, r] : ranks) rep.total_rank += r;
  rep.betti_before = mod4_betti(ranks);
  if (target_rank < 0 || target_rank > rep.total_rank)
    throw Error(ErrorCode::InvalidArgument, "target rank outside [0, total rank]");
  if ((rep.total_rank - target_rank) % 2 != 0)
    throw Error(ErrorCode::InfeasibleParity, "total rank " + std::to_string(rep.total_rank) + " and target " +
                                                 std::to_string(target_rank) + " differ by an odd number");
  rep.kill = (rep.total_rank - target_rank) / 2;

  int zero_eigenspace = -1;
  if (options.alexander && rank_lower_bound(*options.alexander) == target_rank) {
    rep.eigenspace_constraint = true;
    zero_eigenspace = static_cast<int>(abs(options.alexander->coefficient(0)));
    rep.annotations.push_back("eigenspace constraint: |b0-b2| + |b1-b3| <= " + std::to_string(zero_eigenspace) +
                              " with matching parity (constant Alexander coefficient)");
  }

  std::vector<std::pair<int, int>> cells;
  std::map<std::pair<int, int>, int> capacity;
  for (const auto& [k, r] : ranks)
    if (r > 0) {
      cells.push_back(k);
      capacity[k] = r;
    }
  std::vector<PairMove> moves;
  for (const auto& s : cells)
    for (const auto& t : cells)
      if (s != t && admissible_move(s, t, options.mode)) moves.push_back({s, t, 1});

  std::map<std::vector<std::tuple<int, int, int>>, size_t> by_rows;
  std::vector<int> count(moves.size(), 0);
  size_t realizations = 0;
  std::function<void(size_t, int)> rec = [&](size_t idx, int left) {
    if (left == 0) {
      if (++realizations > options.max_realizations)
        throw Error(ErrorCode::InvalidArgument, "too many placements to enumerate");
      std::vector<PairMove> chosen;
      std::map<std::pair<int, int>, int> rows;
      for (size_t m = 0; m < moves.size(); ++m) {
        if (!count[m]) continue;
        chosen.push_back({moves[m].source, moves[m].target, count[m]});
        rows[{moves[m].source.second - moves[m].source.first, moves[m].target.second - moves[m].target.first}] +=
            count[m];
      }
      std::vector<std::tuple<int, int, int>> key;
      for (const auto& [ft, r] : rows) key.emplace_back(ft.first, ft.second, r);
      auto it = by_rows.find(key);
      if (it == by_rows.end()) {
        Placement p;
        for (const auto& [f, t, r] : key) p.rows.push_back({f, t, r});
        p.betti_after = rep.betti_before;
        for (const auto& mv : chosen) {
          p.betti_after.betti[mod4_class(mv.source.first, mv.source.second)] -= mv.rank;
          p.betti_after.betti[mod4_class(mv.target.first, mv.target.second)] -= mv.rank;
        }
        it = by_rows.emplace(key, rep.placements.size()).first;
        rep.placements.push_back(std::move(p));
      }
      rep.placements[it->second].realizations.push_back(std::move(chosen));
      return;
    }
    if (idx == moves.size()) return;
    const auto& mv = moves[idx];
    const int room = std::min(capacity[mv.source], capacity[mv.target]);
    for (int c = std::min(room, left); c >= 0; --c) {
      capacity[mv.source] -= c;
      capacity[mv.target] -= c;
      count[idx] = c;
      rec(idx + 1, left - c);
      count[idx] = 0;
      capacity[mv.source] += c;
      capacity[mv.target] += c;
    }
  };
  rec(0, rep.kill);

  if (rep.eigenspace_constraint) {
    std::vector<Placement> kept;
    for (auto& p : rep.placements) {
      const auto& b = p.betti_after.betti;
      const int offset = std::abs(b[0] - b[2]) + std::abs(b[1] - b[3]);
      if (offset <= zero_eigenspace && (zero_eigenspace - offset) % 2 == 0) kept.push_back(std::move(p));
    }
    rep.placements = std::move(kept);
  }
  for (const auto& p : rep.placements) {
    std::string s = "placement";
    for (const auto& r : p.rows)
      s += " " + std::to_string(r.from_row) + "->" + std::to_string(r.to_row) + " (rank " + std::to_string(r.rank) + ")";
    s += " leaves mod 4 Betti numbers " + std::to_string(p.betti_after.betti[0]) + "," +
         std::to_string(p.betti_after.betti[1]) + "," + std::to_string(p.betti_after.betti[2]) + "," +
         std::to_string(p.betti_after.betti[3]);
    rep.annotations.push_back(s);
  }
  return rep;
}

std::string FeasibilityReport::to_json() const {
  using nlohmann::json;
  auto bettis = [](const Mod4Table& t) { return json(t.betti); };
  json places = json::array();
  for (const auto& p : placements) {
    json rows = json::array();
    for (const auto& r : p.rows) rows.push_back({{"from_row", r.from_row}, {"to_row", r.to_row}, {"rank", r.rank}});
    json real = json::array();
    for (const auto& alt : p.realizations) {
      json moves = json::array();
      for (const auto& m : alt)
        moves.push_back({{"source", {m.source.first, m.source.second}},
                         {"target", {m.target.first, m.target.second}},
                         {"rank", m.rank}});
      real.push_back(moves);
    }
    places.push_back({{"rows", rows}, {"realizations", real}, {"betti_after", bettis(p.betti_after)}});
  }
  json j = {{"target_rank", target_rank},
            {"total_rank", total_rank},
            {"kill", kill},
            {"filtration", mode == FiltrationCase::H ? "h" : "q"},
            {"eigenspace_constraint", eigenspace_constraint},
            {"betti_before", bettis(betti_before)},
            {"placements", places},
            {"annotations", annotations}};
  return j.dump(2);
}

}  // namespace khcube
