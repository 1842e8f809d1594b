#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khcube/chain.hpp"

namespace oracle {

using khcube::Integer;
using Pd = std::vector<std::array<int, 4>>;
using IntMatrix = std::vector<std::vector<Integer>>;

// Circles of the smoothing v (bit k for crossing k, 0 joins (a,b)(c,d)) by walking arcs.
int count_circles(const Pd& pd, uint32_t v, int free_circles = 0);
// Circle index of every label, labels in first-seen order.
std::map<int, int> circle_of_label(const Pd& pd, uint32_t v);

// Crossing sign from consecutive labelling along each component.
int label_sign(const std::array<int, 4>& x, const Pd& pd);

struct Group {
  int free_rank = 0;
  std::vector<Integer> torsion;
  bool operator==(const Group& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
};
using Table = std::map<std::pair<int, int>, Group>;

// Bigraded integral Khovanov homology of a genuine diagram by dense linear algebra.
Table khovanov(const Pd& pd, bool reduced = false, int basepoint_label = 0, int reduced_shift = 1);

// Independent Smith form: nonzero invariant factors in divisor order.
std::vector<Integer> smith_divisors(IntMatrix a);
int gauss_rank(const IntMatrix& a);
Integer bareiss_det(IntMatrix a);

// Jones polynomial V(t) as exponents of t^(1/2) -> coefficient, via the Kauffman bracket.
std::map<int, Integer> jones_half(const Pd& pd);
// (q + 1/q) V at t^(1/2) = -1/q, as exponent of q -> coefficient.
std::map<int, Integer> unnormalized_jones(const Pd& pd);

// Connected planar 4-valent maps with n vertices up to orientation-preserving isomorphism,
// each given as a slot matching (slot 4c+k, k counterclockwise).
std::vector<std::vector<int>> planar_maps(int n);
// Strand traversal of a matching with the chosen under-strand parity per crossing and a
// direction flag per component; returns a PD in the X(a,b,c,d) convention.
std::vector<Pd> decorated_diagrams(const std::vector<int>& matching, int n);

// Renumbers labels consecutively along each component, following the incoming under-strand.
Pd relabel_along_strands(const Pd& pd);

std::string to_pd_text(const Pd& pd);

}  // namespace oracle
