#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "khcube/diagram.hpp"

namespace khcube {

enum class EdgeKind { Merge, Split, NonorientableBand };
enum class UnlinkStatus { Verified, Unverified };

const char* edge_kind_name(EdgeKind k);

struct CubeVertex {
  uint32_t v = 0;  // bit k is the entry at the k-th marked crossing
  ResolvedState state;
  int p = 0;
  UnlinkStatus unlink_status = UnlinkStatus::Verified;
  int writhe = 0;  // writhe of the resolved unlink diagram
};

struct CubeEdge {
  uint32_t v = 0;  // source, v >= u
  uint32_t u = 0;
  int position = 0;  // index into N of the changed crossing
  EdgeKind kind = EdgeKind::Merge;
  int sigma = 0;
  int chi = -1;
};

struct BuildOptions {
  bool trust_pseudo = false;
};

class GradedCube {
 public:
  const PlanarDiagram& diagram() const { return diagram_; }
  int dim() const { return dim_; }
  const std::vector<CubeVertex>& vertices() const { return vertices_; }
  const std::vector<CubeEdge>& edges() const { return edges_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  uint32_t oriented_mask() const { return o_; }

  // sigma on cube vertices and on mod-3 translates; throws OutOfDomain on entries = 2 mod 3.
  int sigma(const std::vector<int>& v, const std::vector<int>& u) const;
  int sigma_mask(uint32_t v, uint32_t u) const;

  int h_grading(const std::vector<int>& v) const;
  int q_grading(const std::vector<int>& v, int labeling_q) const;
  // Offsets on cube vertices: h = h_offset, q = Q + q_offset.
  int h_offset(uint32_t v) const { return h_offset_[v]; }
  int q_offset(uint32_t v) const { return q_offset_[v]; }

  // Largest sigma(v,u) over v >= u.
  int max_self_intersection() const;
  bool small_squares() const { return max_self_intersection() <= 6; }

  std::string dump_json() const;

 private:
  friend GradedCube build_cube(const PlanarDiagram& d, BuildOptions options);

  PlanarDiagram diagram_;
  int dim_ = 0;
  std::vector<CubeVertex> vertices_;
  std::vector<CubeEdge> edges_;
  int n_plus_ = 0;
  int n_minus_ = 0;
  uint32_t o_ = 0;
  std::vector<int> h_offset_;
  std::vector<int> q_offset_;
};

GradedCube build_cube(const PlanarDiagram& d, BuildOptions options = {});

std::vector<int> mask_to_vector(uint32_t mask, int dim);
uint32_t vector_to_mask(const std::vector<int>& v);

bool edge_parity_admissible(int sigma, int chi);
bool edge_parity_admissible(const CubeEdge& e);

struct DropShift {
  int dh = 0;
  int dq = 0;
  int sigma_shift = 0;  // sigma(v,o) - sigma(v',o')
  int parity_term = 0;  // 1 - eps
};

// Grading change when a crossing of sign eps leaves N and is resolved at v(c) = 2.
DropShift grading_shift_on_drop(int eps);

}  // namespace khcube
