#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khcube/chain.hpp"
#include "khcube/cube.hpp"

namespace khcube {

struct KhOptions {
  bool reduced = false;
  // Added to q on the reduced complex; 1 puts the reduced unknot at (0,0).
  int reduced_shift = 1;
  bool trust_pseudo = false;
};

// Generator labelling: bit i set means circle i carries v-, clear means v+.
struct LocalTerm {
  uint32_t labels;
  int coeff;
};

// Applies m, Delta, or the zero map on a V^{p(v)} basis element; returns the number of terms.
// perm sends each circle of the source to a circle of the target; a,b merge into m, a splits into s1,s2.
int edge_map(EdgeKind kind, const uint8_t* perm, int p, int a, int b, int m, int s1, int s2, uint32_t x,
             LocalTerm out[2]);

// (-1)^{#{c' < c : v(c') = 1}} for the edge leaving v at position k.
int edge_sign(uint32_t v, int k);
// (-1)^nu with nu = 1/2 |v-u|_1 (|v-u|_1 - 1) + sum v.
int msign(const std::vector<int>& v, const std::vector<int>& u);

class KhovanovComplex {
 public:
  KhovanovComplex(GradedCube cube, KhOptions options);

  const GradedCube& cube() const { return cube_; }
  const KhOptions& options() const { return options_; }
  bool reduced() const { return options_.reduced; }

  int circles(uint32_t v) const { return cube_.vertices()[v].p; }
  int basepoint_circle(uint32_t v) const { return bp_circle_[v]; }
  int h(uint32_t v) const { return cube_.h_offset(v); }
  int q(uint32_t v, uint32_t labels) const;
  size_t num_generators() const;

  // Calls f(u, labels, coeff) for every term of d applied to (v, labels).
  template <class F>
  void apply_d(uint32_t v, uint32_t labels, F&& f) const {
    for (int k = 0; k < cube_.dim(); ++k) {
      if (!((v >> k) & 1u)) continue;
      LocalTerm t[2];
      int n = apply_edge(v, k, labels, t);
      const uint32_t u = v & ~(1u << k);
      const int s = edge_sign(v, k);
      for (int i = 0; i < n; ++i) f(u, t[i].labels, s * t[i].coeff);
    }
  }

  int apply_edge(uint32_t v, int k, uint32_t labels, LocalTerm out[2]) const;

  // Circles of v that meet the marked crossing at position k.
  std::vector<int> touched_circles(uint32_t v, int k) const;

  // Explicit assembly; intended for small complexes.
  BigradedComplex assemble() const;

  // Generators of one quantum grading, indexed densely.
  DegreeComplex q_slice(int q, std::vector<std::pair<uint32_t, uint32_t>>* generators = nullptr) const;
  std::vector<int> q_values() const;

  HomologyTable homology() const;

  // Face-by-face check of d^2 = 0; throws SignInconsistency.
  void check_d_squared() const;
  // Every term has bidegree (+1,0); throws InternalInvariant otherwise.
  void check_bidegree() const;

 private:
  struct EdgeInfo {
    EdgeKind kind;
    int8_t a = -1, b = -1, m = -1, s1 = -1, s2 = -1;
    uint32_t perm_offset = 0;
  };

  size_t edge_index(uint32_t v, int k) const {
    return edge_offset_[v] + static_cast<size_t>(__builtin_popcount(v & ((1u << k) - 1)));
  }
  bool label_ok(uint32_t v, uint32_t labels) const {
    return !options_.reduced || ((labels >> bp_circle_[v]) & 1u);
  }

  GradedCube cube_;
  KhOptions options_;
  std::vector<int> bp_circle_;
  std::vector<size_t> edge_offset_;
  std::vector<EdgeInfo> edges_;
  std::vector<uint8_t> perms_;
};

KhovanovComplex build_khovanov(const PlanarDiagram& d, const KhOptions& options = {});
HomologyTable khovanov_homology(const PlanarDiagram& d, const KhOptions& options = {});

// Rational ranks by (h, q).
std::map<std::pair<int, int>, int> rational_ranks(const HomologyTable& t);

struct ReidemeisterReport {
  bool equal = false;
  std::optional<std::pair<int, int>> first_difference;
  HomologyTable first;
  HomologyTable second;
};

ReidemeisterReport reidemeister_compare(const PlanarDiagram& d1, const PlanarDiagram& d2,
                                        const KhOptions& options = {});

}  // namespace khcube
