#include "khcube/chain.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "khcube/errors.hpp"

namespace khcube {

// ---------------------------------------------------------------------------
// SparseIntMatrix

SparseIntMatrix SparseIntMatrix::from_triplets(int rows, int cols,
                                               std::vector<std::tuple<int, int, Integer>> entries) {
  SparseIntMatrix m(rows, cols);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<0>(a) < std::get<0>(b);
  });
  for (auto& [r, c, v] : entries) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
    auto& col = m.data_[c];
    if (!col.empty() && col.back().first == r) col.back().second += v;
    else col.emplace_back(r, v);
  }
  for (auto& col : m.data_)
    col.erase(std::remove_if(col.begin(), col.end(), [](const auto& e) { return e.second == 0; }),
              col.end());
  return m;
}

SparseIntMatrix SparseIntMatrix::identity(int n) {
  SparseIntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, 1);
  return m;
}

Integer SparseIntMatrix::get(int r, int c) const {
  const auto& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, int row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

void SparseIntMatrix::add(int r, int c, const Integer& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols())
    throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
  if (v == 0) return;
  auto& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, int row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    it->second += v;
    if (it->second == 0) col.erase(it);
  } else {
    col.insert(it, {r, v});
  }
}

size_t SparseIntMatrix::nnz() const {
  size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& b) const {
  if (cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  SparseIntMatrix out(rows_, b.cols());
  std::vector<Integer> acc(rows_);
  std::vector<uint8_t> touched(rows_, 0);
  std::vector<int> list;
  for (int j = 0; j < b.cols(); ++j) {
    list.clear();
    for (const auto& [k, bv] : b.data_[j]) {
      for (const auto& [i, av] : data_[k]) {
        if (!touched[i]) {
          touched[i] = 1;
          acc[i] = 0;
          list.push_back(i);
        }
        acc[i] += av * bv;
      }
    }
    std::sort(list.begin(), list.end());
    for (int i : list) {
      if (acc[i] != 0) out.data_[j].emplace_back(i, acc[i]);
      touched[i] = 0;
    }
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::operator+(const SparseIntMatrix& b) const {
  if (rows_ != b.rows_ || cols() != b.cols()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  SparseIntMatrix out(rows_, cols());
  for (int j = 0; j < cols(); ++j) {
    const auto& x = data_[j];
    const auto& y = b.data_[j];
    size_t p = 0, q = 0;
    auto& o = out.data_[j];
    while (p < x.size() || q < y.size()) {
      if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
        o.push_back(x[p++]);
      } else if (p == x.size() || y[q].first < x[p].first) {
        o.push_back(y[q++]);
      } else {
        Integer v = x[p].second + y[q].second;
        if (v != 0) o.emplace_back(x[p].first, v);
        ++p;
        ++q;
      }
    }
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::operator-() const {
  SparseIntMatrix out = *this;
  for (auto& c : out.data_)
    for (auto& e : c) e.second = -e.second;
  return out;
}

SparseIntMatrix SparseIntMatrix::operator-(const SparseIntMatrix& b) const { return *this + (-b); }

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix out(cols(), rows_);
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, v] : data_[j]) out.data_[i].emplace_back(j, v);
  return out;
}

bool SparseIntMatrix::operator==(const SparseIntMatrix& b) const {
  return rows_ == b.rows_ && data_ == b.data_;
}

DenseMatrix SparseIntMatrix::to_dense() const {
  DenseMatrix a(rows_, std::vector<Integer>(cols(), 0));
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, v] : data_[j]) a[i][j] = v;
  return a;
}

SparseIntMatrix SparseIntMatrix::from_dense(const DenseMatrix& a) {
  const int r = static_cast<int>(a.size());
  const int c = r == 0 ? 0 : static_cast<int>(a[0].size());
  SparseIntMatrix m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i)
      if (a[i][j] != 0) m.data_[j].emplace_back(i, a[i][j]);
  return m;
}

// ---------------------------------------------------------------------------
// Checked scalar arithmetic

namespace {

struct Overflow {};

inline int64_t mul_add(int64_t acc, int64_t c, int64_t x) {
  int64_t p;
  int64_t s;
  if (__builtin_mul_overflow(c, x, &p) || __builtin_add_overflow(acc, p, &s)) throw Overflow{};
  return s;
}

inline Integer mul_add(const Integer& acc, const Integer& c, const Integer& x) { return acc + c * x; }

inline int64_t negate(int64_t x) {
  if (x == std::numeric_limits<int64_t>::min()) throw Overflow{};
  return -x;
}

inline Integer negate(const Integer& x) { return -x; }

inline bool is_unit(int64_t x) { return x == 1 || x == -1; }
inline bool is_unit(const Integer& x) { return x == 1 || x == -1; }

template <class T>
using SparseCol = std::vector<std::pair<uint32_t, T>>;

// out = a + c * b, both sorted by index; newly created indices are appended to fresh.
template <class T>
void axpy_merge(const SparseCol<T>& a, const T& c, const SparseCol<T>& b, SparseCol<T>& out,
                std::vector<uint32_t>& fresh) {
  out.clear();
  out.reserve(a.size() + b.size());
  size_t p = 0, q = 0;
  while (p < a.size() || q < b.size()) {
    if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
      out.push_back(a[p++]);
    } else if (p == a.size() || b[q].first < a[p].first) {
      T v = mul_add(T(0), c, b[q].second);
      if (v != 0) {
        out.emplace_back(b[q].first, v);
        fresh.push_back(b[q].first);
      }
      ++q;
    } else {
      T v = mul_add(a[p].second, c, b[q].second);
      if (v != 0) out.emplace_back(a[p].first, v);
      ++p;
      ++q;
    }
  }
}

template <class T>
const T* find_entry(const SparseCol<T>& col, uint32_t idx) {
  auto it = std::lower_bound(col.begin(), col.end(), idx,
                             [](const auto& e, uint32_t i) { return e.first < i; });
  if (it != col.end() && it->first == idx) return &it->second;
  return nullptr;
}

template <class T>
void erase_entry(SparseCol<T>& col, uint32_t idx) {
  auto it = std::lower_bound(col.begin(), col.end(), idx,
                             [](const auto& e, uint32_t i) { return e.first < i; });
  if (it != col.end() && it->first == idx) col.erase(it);
}

const std::vector<size_t> kThresholds = {0, 1, 2, 4, 8, 16, 32, 64, 256, 1024, 4096,
                                         std::numeric_limits<size_t>::max()};

// ---------------------------------------------------------------------------
// Dense Smith normal form with optional transforms.

struct DenseSnf {
  DenseMatrix a;
  DenseMatrix u;
  DenseMatrix v;
  bool track = false;
  int m = 0;
  int n = 0;

  void row_axpy(int i, int t, const Integer& q) {  // row_i -= q row_t
    for (int j = 0; j < n; ++j)
      if (a[t][j] != 0) a[i][j] -= q * a[t][j];
    if (track)
      for (int j = 0; j < m; ++j)
        if (u[t][j] != 0) u[i][j] -= q * u[t][j];
  }
  void col_axpy(int j, int t, const Integer& q) {  // col_j -= q col_t
    for (int i = 0; i < m; ++i)
      if (a[i][t] != 0) a[i][j] -= q * a[i][t];
    if (track)
      for (int i = 0; i < n; ++i)
        if (v[i][t] != 0) v[i][j] -= q * v[i][t];
  }
  void swap_rows(int i, int k) {
    if (i == k) return;
    std::swap(a[i], a[k]);
    if (track) std::swap(u[i], u[k]);
  }
  void swap_cols(int j, int k) {
    if (j == k) return;
    for (int i = 0; i < m; ++i) std::swap(a[i][j], a[i][k]);
    if (track)
      for (int i = 0; i < n; ++i) std::swap(v[i][j], v[i][k]);
  }
  void negate_row(int i) {
    for (auto& x : a[i]) x = -x;
    if (track)
      for (auto& x : u[i]) x = -x;
  }

  std::vector<Integer> run() {
    std::vector<Integer> diag;
    for (int t = 0; t < std::min(m, n); ++t) {
      int bi = -1, bj = -1;
      Integer best;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) {
          if (a[i][j] == 0) continue;
          Integer mag = abs(a[i][j]);
          if (bi < 0 || mag < best) {
            best = mag;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      while (true) {
        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
          if (a[i][t] == 0) continue;
          Integer q = a[i][t] / a[t][t];
          row_axpy(i, t, q);
          if (a[i][t] != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
          if (a[t][j] == 0) continue;
          Integer q = a[t][j] / a[t][t];
          col_axpy(j, t, q);
          if (a[t][j] != 0) clean = false;
        }
        if (clean) {
          int bad_row = -1;
          for (int i = t + 1; i < m && bad_row < 0; ++i)
            for (int j = t + 1; j < n; ++j)
              if (a[i][j] != 0 && a[i][j] % a[t][t] != 0) {
                bad_row = i;
                break;
              }
          if (bad_row < 0) break;
          row_axpy(t, bad_row, -1);
          continue;
        }
        int si = -1, sj = -1;
        Integer small = abs(a[t][t]);
        for (int i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && abs(a[i][t]) < small) {
            small = abs(a[i][t]);
            si = i;
            sj = t;
          }
        for (int j = t + 1; j < n; ++j)
          if (a[t][j] != 0 && abs(a[t][j]) < small) {
            small = abs(a[t][j]);
            si = t;
            sj = j;
          }
        if (si >= 0) {
          swap_rows(t, si);
          swap_cols(t, sj);
        }
      }
      if (a[t][t] < 0) negate_row(t);
      diag.push_back(a[t][t]);
    }
    return diag;
  }
};

DenseMatrix identity_dense(int n) {
  DenseMatrix id(n, std::vector<Integer>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// ---------------------------------------------------------------------------
// Sparse unit-pivot elimination for general matrices.

template <class T>
struct SparseSnfResult {
  int units = 0;
  DenseMatrix residual;
};

template <class T>
SparseSnfResult<T> sparse_unit_phase(const SparseIntMatrix& mtx) {
  const int nr = mtx.rows();
  const int nc = mtx.cols();
  std::vector<SparseCol<T>> cols(nc);
  std::vector<std::vector<uint32_t>> rows(nr);
  for (int j = 0; j < nc; ++j) {
    for (const auto& [i, val] : mtx.column(j)) {
      if constexpr (std::is_same_v<T, int64_t>) {
        if (val > std::numeric_limits<int64_t>::max() || val < std::numeric_limits<int64_t>::min())
          throw Overflow{};
        cols[j].emplace_back(static_cast<uint32_t>(i), static_cast<int64_t>(val));
      } else {
        cols[j].emplace_back(static_cast<uint32_t>(i), val);
      }
      rows[i].push_back(static_cast<uint32_t>(j));
    }
  }
  std::vector<uint8_t> col_alive(nc, 1), row_alive(nr, 1);
  SparseSnfResult<T> res;
  SparseCol<T> tmp;
  std::vector<uint32_t> fresh;

  auto clean_row = [&](uint32_t r) {
    auto& lst = rows[r];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    lst.erase(std::remove_if(lst.begin(), lst.end(),
                             [&](uint32_t c) { return !col_alive[c] || !find_entry(cols[c], r); }),
              lst.end());
  };

  for (size_t thr : kThresholds) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int p = 0; p < nc; ++p) {
        if (!col_alive[p] || cols[p].empty()) continue;
        size_t best_cost = std::numeric_limits<size_t>::max();
        uint32_t best_row = 0;
        for (const auto& [r, val] : cols[p]) {
          if (!is_unit(val)) continue;
          size_t cost = (cols[p].size() - 1) * (rows[r].size() - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best_row = r;
          }
        }
        if (best_cost == std::numeric_limits<size_t>::max() || best_cost > thr) continue;
        const uint32_t r = best_row;
        const T u = *find_entry(cols[p], r);
        clean_row(r);
        for (uint32_t z : rows[r]) {
          if (z == static_cast<uint32_t>(p)) continue;
          const T a = *find_entry(cols[z], r);
          const T c = negate(mul_add(T(0), a, u));
          fresh.clear();
          axpy_merge(cols[z], c, cols[p], tmp, fresh);
          cols[z].swap(tmp);
          for (uint32_t w : fresh) rows[w].push_back(z);
        }
        col_alive[p] = 0;
        row_alive[r] = 0;
        SparseCol<T>().swap(cols[p]);
        std::vector<uint32_t>().swap(rows[r]);
        ++res.units;
        progress = true;
      }
    }
  }

  std::vector<int> rmap(nr, -1), cmap;
  int rcount = 0;
  for (int j = 0; j < nc; ++j) {
    if (!col_alive[j]) continue;
    bool any = false;
    for (const auto& [i, val] : cols[j]) {
      (void)val;
      if (!row_alive[i]) continue;
      any = true;
      if (rmap[i] < 0) rmap[i] = rcount++;
    }
    if (any) cmap.push_back(j);
  }
  res.residual.assign(rcount, std::vector<Integer>(cmap.size(), 0));
  for (size_t k = 0; k < cmap.size(); ++k)
    for (const auto& [i, val] : cols[cmap[k]])
      if (row_alive[i]) res.residual[rmap[i]][k] = Integer(val);
  return res;
}

template <class T>
SmithResult sparse_snf(const SparseIntMatrix& m) {
  SparseSnfResult<T> s = sparse_unit_phase<T>(m);
  DenseSnf d;
  d.a = std::move(s.residual);
  d.m = static_cast<int>(d.a.size());
  d.n = d.m == 0 ? 0 : static_cast<int>(d.a[0].size());
  std::vector<Integer> diag = d.run();
  SmithResult r;
  r.divisors.assign(s.units, Integer(1));
  r.divisors.insert(r.divisors.end(), diag.begin(), diag.end());
  r.rank = static_cast<int>(r.divisors.size());
  return r;
}

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& m, bool transforms) {
  if (transforms) {
    DenseSnf d;
    d.a = m.to_dense();
    d.m = m.rows();
    d.n = m.cols();
    d.track = true;
    d.u = identity_dense(d.m);
    d.v = identity_dense(d.n);
    SmithResult r;
    r.divisors = d.run();
    r.rank = static_cast<int>(r.divisors.size());
    r.has_transforms = true;
    r.left = std::move(d.u);
    r.right = std::move(d.v);
    return r;
  }
  try {
    return sparse_snf<int64_t>(m);
  } catch (const Overflow&) {
    return sparse_snf<Integer>(m);
  }
}

int rank_q(const SparseIntMatrix& m) { return smith_normal_form(m).rank; }

std::string HomologyGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << "+";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Chain-complex cancellation

namespace {

template <class T>
class ChainReducer {
 public:
  ChainReducer(const std::vector<int>& degree, std::vector<SparseCol<T>> cols)
      : degree_(degree), cols_(std::move(cols)), rows_(degree.size()), alive_(degree.size(), 1) {
    for (uint32_t x = 0; x < cols_.size(); ++x)
      for (const auto& [y, val] : cols_[x]) {
        (void)val;
        if (degree_[y] != degree_[x] + 1)
          throw Error(ErrorCode::InvalidArgument, "differential does not raise degree by one");
        rows_[y].push_back(x);
      }
  }

  size_t run() {
    size_t pairs = 0;
    for (size_t thr : kThresholds) {
      bool progress = true;
      while (progress) {
        progress = false;
        for (uint32_t x = 0; x < cols_.size(); ++x) {
          if (!alive_[x] || cols_[x].empty()) continue;
          size_t best_cost = std::numeric_limits<size_t>::max();
          uint32_t best = 0;
          for (const auto& [y, val] : cols_[x]) {
            if (!is_unit(val)) continue;
            size_t rs = rows_[y].size();
            size_t cost = (cols_[x].size() - 1) * (rs == 0 ? 0 : rs - 1);
            if (cost < best_cost) {
              best_cost = cost;
              best = y;
            }
          }
          if (best_cost == std::numeric_limits<size_t>::max() || best_cost > thr) continue;
          cancel(x, best);
          ++pairs;
          progress = true;
        }
      }
    }
    return pairs;
  }

  std::map<int, HomologyGroup> residual_homology(size_t* residual) const {
    std::map<int, std::vector<uint32_t>> by_degree;
    for (uint32_t x = 0; x < cols_.size(); ++x)
      if (alive_[x]) by_degree[degree_[x]].push_back(x);
    if (residual) {
      *residual = 0;
      for (const auto& [h, xs] : by_degree) *residual += xs.size();
    }
    std::vector<int> local(cols_.size(), -1);
    for (const auto& [h, xs] : by_degree)
      for (size_t i = 0; i < xs.size(); ++i) local[xs[i]] = static_cast<int>(i);
    std::map<int, SmithResult> snf;
    for (const auto& [h, xs] : by_degree) {
      auto it = by_degree.find(h + 1);
      if (it == by_degree.end()) continue;
      std::vector<std::tuple<int, int, Integer>> entries;
      for (size_t j = 0; j < xs.size(); ++j)
        for (const auto& [y, val] : cols_[xs[j]])
          if (alive_[y]) entries.emplace_back(local[y], static_cast<int>(j), Integer(val));
      SparseIntMatrix blk = SparseIntMatrix::from_triplets(static_cast<int>(it->second.size()),
                                                           static_cast<int>(xs.size()), entries);
      snf[h] = smith_normal_form(blk);
    }
    std::map<int, HomologyGroup> out;
    for (const auto& [h, xs] : by_degree) {
      HomologyGroup g;
      int rank_out = snf.count(h) ? snf[h].rank : 0;
      int rank_in = snf.count(h - 1) ? snf[h - 1].rank : 0;
      g.free_rank = static_cast<int>(xs.size()) - rank_out - rank_in;
      if (snf.count(h - 1))
        for (const auto& dv : snf[h - 1].divisors)
          if (dv > 1) g.torsion.push_back(dv);
      out[h] = g;
    }
    return out;
  }

 private:
  void clean_row(uint32_t y) {
    auto& lst = rows_[y];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    lst.erase(std::remove_if(lst.begin(), lst.end(),
                             [&](uint32_t z) { return !alive_[z] || !find_entry(cols_[z], y); }),
              lst.end());
  }

  void cancel(uint32_t x, uint32_t y) {
    const T u = *find_entry(cols_[x], y);
    clean_row(y);
    for (uint32_t z : rows_[y]) {
      if (z == x) continue;
      const T a = *find_entry(cols_[z], y);
      const T c = negate(mul_add(T(0), a, u));
      fresh_.clear();
      axpy_merge(cols_[z], c, cols_[x], tmp_, fresh_);
      cols_[z].swap(tmp_);
      for (uint32_t w : fresh_) rows_[w].push_back(z);
    }
    clean_row(x);
    for (uint32_t s : rows_[x]) erase_entry(cols_[s], x);
    alive_[x] = 0;
    alive_[y] = 0;
    SparseCol<T>().swap(cols_[x]);
    SparseCol<T>().swap(cols_[y]);
    std::vector<uint32_t>().swap(rows_[x]);
    std::vector<uint32_t>().swap(rows_[y]);
  }

  const std::vector<int>& degree_;
  std::vector<SparseCol<T>> cols_;
  std::vector<std::vector<uint32_t>> rows_;
  std::vector<uint8_t> alive_;
  SparseCol<T> tmp_;
  std::vector<uint32_t> fresh_;
};

template <class T, class Src>
std::vector<SparseCol<T>> convert_columns(const std::vector<SparseCol<Src>>& in) {
  std::vector<SparseCol<T>> out(in.size());
  for (size_t x = 0; x < in.size(); ++x) {
    out[x].reserve(in[x].size());
    for (const auto& [y, v] : in[x]) {
      if constexpr (std::is_same_v<T, int64_t> && std::is_same_v<Src, Integer>) {
        if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
          throw Overflow{};
        out[x].emplace_back(y, static_cast<int64_t>(v));
      } else {
        out[x].emplace_back(y, T(v));
      }
    }
  }
  return out;
}

template <class Src>
std::map<int, HomologyGroup> reduce_and_measure(const std::vector<int>& degree,
                                                const std::vector<SparseCol<Src>>& columns,
                                                ReductionStats* stats) {
  try {
    ChainReducer<int64_t> r(degree, convert_columns<int64_t>(columns));
    size_t pairs = r.run();
    size_t residual = 0;
    auto out = r.residual_homology(&residual);
    if (stats) *stats = {pairs, residual, false};
    return out;
  } catch (const Overflow&) {
  }
  ChainReducer<Integer> r(degree, convert_columns<Integer>(columns));
  size_t pairs = r.run();
  size_t residual = 0;
  auto out = r.residual_homology(&residual);
  if (stats) *stats = {pairs, residual, true};
  return out;
}

}  // namespace

std::map<int, HomologyGroup> degree_homology(const DegreeComplex& c, ReductionStats* stats) {
  if (c.columns.size() != c.degree.size())
    throw Error(ErrorCode::InvalidArgument, "column count differs from generator count");
  return reduce_and_measure<int64_t>(c.degree, c.columns, stats);
}

// ---------------------------------------------------------------------------
// Bigraded homology

void check_differential(const BigradedComplex& c) {
  SparseIntMatrix dd = c.d * c.d;
  for (int j = 0; j < dd.cols(); ++j) {
    if (!dd.column(j).empty()) {
      const auto& [i, v] = dd.column(j).front();
      std::ostringstream os;
      os << "(d^2)[" << i << "," << j << "] = " << v;
      throw Error(ErrorCode::NotADifferential, os.str());
    }
  }
}

HomologyTable homology(const BigradedComplex& c) {
  const int n = c.size();
  if (c.d.rows() != n || c.d.cols() != n || static_cast<int>(c.q.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "complex dimensions are inconsistent");
  check_differential(c);
  bool h_pure = true;
  bool q_pure = true;
  for (int x = 0; x < n; ++x)
    for (const auto& [y, v] : c.d.column(x)) {
      (void)v;
      if (c.h[y] != c.h[x] + 1) h_pure = false;
      if (c.q[y] != c.q[x]) q_pure = false;
    }

  HomologyTable table;
  if (!h_pure) {
    table.grading = Grading::Ungraded;
    SmithResult s = smith_normal_form(c.d);
    HomologyGroup g;
    g.free_rank = n - 2 * s.rank;
    for (const auto& dv : s.divisors)
      if (dv > 1) g.torsion.push_back(dv);
    table.groups[{0, kUngradedQ}] = g;
    return table;
  }

  std::map<int, std::vector<int>> buckets;
  for (int x = 0; x < n; ++x) buckets[q_pure ? c.q[x] : kUngradedQ].push_back(x);
  table.grading = q_pure ? Grading::Bigraded : Grading::HGraded;
  for (const auto& [q, xs] : buckets) {
    std::vector<int> local(n, -1);
    for (size_t i = 0; i < xs.size(); ++i) local[xs[i]] = static_cast<int>(i);
    std::vector<int> degree(xs.size());
    std::vector<SparseCol<Integer>> cols(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      degree[i] = c.h[xs[i]];
      for (const auto& [y, v] : c.d.column(xs[i])) cols[i].emplace_back(local[y], v);
      std::sort(cols[i].begin(), cols[i].end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    for (auto& [h, g] : reduce_and_measure<Integer>(degree, cols, nullptr))
      if (!g.is_zero()) table.groups[{h, q}] = g;
  }
  return table;
}

int HomologyTable::total_free_rank() const {
  int t = 0;
  for (const auto& [k, g] : groups) t += g.free_rank;
  return t;
}

std::string HomologyTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [k, g] : groups) {
    if (g.is_zero()) continue;
    nlohmann::json tors = nlohmann::json::array();
    for (const auto& t : g.torsion) tors.push_back(t.str());
    nlohmann::json row = {{"h", k.first}, {"free_rank", g.free_rank}, {"torsion", tors}};
    if (k.second == kUngradedQ) row["q"] = nullptr;
    else row["q"] = k.second;
    rows.push_back(row);
  }
  return rows.dump(2);
}

std::string HomologyTable::to_csv() const {
  std::ostringstream os;
  os << "h,q,free_rank,torsion\n";
  for (const auto& [k, g] : groups) {
    if (g.is_zero()) continue;
    os << k.first << ",";
    if (k.second != kUngradedQ) os << k.second;
    os << "," << g.free_rank << ",";
    for (size_t i = 0; i < g.torsion.size(); ++i) os << (i ? ";" : "") << g.torsion[i];
    os << "\n";
  }
  return os.str();
}

}  // namespace khcube
