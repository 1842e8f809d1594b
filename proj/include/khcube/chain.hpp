#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace khcube {

using Integer = boost::multiprecision::cpp_int;

class SparseIntMatrix {
 public:
  using Column = std::vector<std::pair<int, Integer>>;

  SparseIntMatrix(int rows = 0, int cols = 0) : rows_(rows), data_(cols) {}

  // Entries (row, col, value); duplicates are summed, zeros dropped.
  static SparseIntMatrix from_triplets(int rows, int cols,
                                       std::vector<std::tuple<int, int, Integer>> entries);
  static SparseIntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(data_.size()); }
  const Column& column(int c) const { return data_[c]; }
  Integer get(int r, int c) const;
  void add(int r, int c, const Integer& v);
  size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  SparseIntMatrix operator*(const SparseIntMatrix& b) const;
  SparseIntMatrix operator+(const SparseIntMatrix& b) const;
  SparseIntMatrix operator-(const SparseIntMatrix& b) const;
  SparseIntMatrix operator-() const;
  SparseIntMatrix transpose() const;
  bool operator==(const SparseIntMatrix& b) const;

  std::vector<std::vector<Integer>> to_dense() const;
  static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& a);

 private:
  int rows_ = 0;
  std::vector<Column> data_;
};

using DenseMatrix = std::vector<std::vector<Integer>>;

struct SmithResult {
  int rank = 0;
  std::vector<Integer> divisors;  // d1 | d2 | ... | d_rank, all positive
  bool has_transforms = false;
  DenseMatrix left;   // unimodular U
  DenseMatrix right;  // unimodular V, with U * M * V diagonal
};

SmithResult smith_normal_form(const SparseIntMatrix& m, bool transforms = false);

// Rank of the matrix over the rationals.
int rank_q(const SparseIntMatrix& m);

struct HomologyGroup {
  int free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors greater than one, in divisor order

  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
};

// A cochain complex whose differential raises the integer degree by one.
struct DegreeComplex {
  std::vector<int> degree;
  // columns[x] = sorted (target, coefficient) pairs of d(x).
  std::vector<std::vector<std::pair<uint32_t, int64_t>>> columns;
};

struct ReductionStats {
  size_t cancelled_pairs = 0;
  size_t residual_generators = 0;
  bool used_big_integers = false;
};

// Homology per degree: unit-pivot cancellation, then Smith normal form of residual blocks.
std::map<int, HomologyGroup> degree_homology(const DegreeComplex& c, ReductionStats* stats = nullptr);

inline constexpr int kUngradedQ = INT_MIN;

struct BigradedComplex {
  std::vector<int> h;
  std::vector<int> q;
  SparseIntMatrix d;  // square; column = source generator

  int size() const { return static_cast<int>(h.size()); }
};

enum class Grading { Bigraded, HGraded, Ungraded };

struct HomologyTable {
  Grading grading = Grading::Bigraded;
  // Keys (h,q); q = kUngradedQ when the differential mixes q, h = 0 when it also mixes h.
  std::map<std::pair<int, int>, HomologyGroup> groups;

  int total_free_rank() const;
  std::string to_json() const;
  std::string to_csv() const;
};

// Throws NotADifferential when d^2 != 0.
void check_differential(const BigradedComplex& c);
HomologyTable homology(const BigradedComplex& c);

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Integer& constant);
  static LaurentPoly monomial(const Integer& coefficient, int exponent);
  static LaurentPoly T() { return monomial(1, 1); }

  const std::map<int, Integer>& terms() const { return c_; }
  Integer coefficient(int exponent) const;
  bool is_zero() const { return c_.empty(); }
  int min_degree() const;
  int max_degree() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }

  // Exact division; throws InternalInvariant when o does not divide this.
  LaurentPoly divide_exact(const LaurentPoly& o) const;
  LaurentPoly shift(int k) const;
  LaurentPoly invert_variable() const;  // T -> T^-1
  Integer eval_at_one() const;
  // Value at an integer point, as numerator/denominator.
  std::pair<Integer, Integer> eval(const Integer& t) const;
  Integer abs_coeff_sum() const;
  std::string to_string() const;

 private:
  void add_term(int e, const Integer& v);
  std::map<int, Integer> c_;
};

}  // namespace khcube
