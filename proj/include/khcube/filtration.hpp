#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khcube/chain.hpp"
#include "khcube/khovanov.hpp"

namespace khcube {

struct Weight {
  int a = 1;
  int b = 0;
};

// Filtration degree p(x) = a h(x) + b q(x).
struct FilteredComplex {
  BigradedComplex complex;
  Weight weight;

  int p(int x) const { return weight.a * complex.h[x] + weight.b * complex.q[x]; }
  // q for the h-filtration, h otherwise.
  int complementary(int x) const { return weight.b == 0 ? complex.q[x] : complex.h[x]; }
};

// Throws InvalidArgument on a bad weight and NotFiltered when some entry raises p by less than a.
FilteredComplex make_filtered(BigradedComplex c, Weight w);

inline constexpr int kInfiniteOrder = INT_MAX;

struct MapOrder {
  int s = kInfiniteOrder;
  int t = kInfiniteOrder;
  bool is_zero() const { return s == kInfiniteOrder; }
  bool at_least(int s0, int t0) const { return is_zero() || (s >= s0 && t >= t0); }
};

// Minimum (dh, dq) over nonzero entries of f from the source to the target gradings.
MapOrder op_order(const SparseIntMatrix& f, const std::vector<int>& src_h, const std::vector<int>& src_q,
                  const std::vector<int>& dst_h, const std::vector<int>& dst_q);
MapOrder op_order(const SparseIntMatrix& f, const BigradedComplex& c);

struct SpectralPage {
  int r = 0;
  std::map<std::pair<int, int>, int> groups;  // (p, complementary) -> rank
  std::map<int, int> d_ranks;                 // source p -> rank of d_r
  int total() const;
  int d_total() const;
};

struct SpectralSequence {
  std::vector<SpectralPage> pages;  // E_0, ..., E_R with E_R = E_infinity
  int homology_rank = 0;            // rank over Q of H(C)
  std::string to_json() const;
};

SpectralSequence spectral_sequence(const FilteredComplex& c);

enum class SandboxMode { Conjugate, Raw };

struct PerturbedDifferential {
  SparseIntMatrix d_sharp;
  SparseIntMatrix base;
  bool has_certificate = false;
  SparseIntMatrix g;  // d_sharp = g base g^-1
};

struct SandboxOptions {
  double density = 0.1;
  int min_dh = 1;
  int min_dq = 2;
};

// Random n with entries in {-1,+1} on pairs raising (h,q) by at least (min_dh, min_dq).
SparseIntMatrix sandbox_nilpotent(const BigradedComplex& c, uint64_t seed, const SandboxOptions& o = {});
PerturbedDifferential sandbox_conjugate(const BigradedComplex& c, const SparseIntMatrix& n);
PerturbedDifferential sandbox_perturb(const BigradedComplex& c, uint64_t seed, const SandboxOptions& o = {});
// Validates a supplied differential; throws NotADifferential or OrderViolation.
PerturbedDifferential sandbox_raw(const BigradedComplex& c, const SparseIntMatrix& d_sharp);

// Number of nonzeros expected in n for the given complex.
double sandbox_expected_entries(const std::vector<int>& h, const std::vector<int>& q,
                                const SandboxOptions& o = {});

int q_order_bound(int chi, int s_dot_s, int dim_g = 0);
std::pair<int, int> cobordism_order(int chi, int s_dot_s);

}  // namespace khcube
