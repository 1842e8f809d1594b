#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace khcube {

// One crossing of a PD code. Arcs are internal indices 0..m-1; labels live on the diagram.
struct Crossing {
  int id = 0;                 // 1-based input position
  std::array<int, 4> arcs{};  // a, b, c, d counterclockwise, a = incoming under-strand
  bool in_n = true;
};

struct Occurrence {
  int crossing = -1;
  int slot = -1;
};

class PlanarDiagram {
 public:
  PlanarDiagram() = default;

  // Arcs are given by label; labels must each occur exactly twice.
  static PlanarDiagram from_crossings(const std::vector<std::array<int, 4>>& crossings,
                                      int free_circles = 0);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int num_crossings() const { return static_cast<int>(crossings_.size()); }
  int num_arcs() const { return static_cast<int>(labels_.size()); }
  int label(int arc) const { return labels_[arc]; }
  int arc_of_label(int label) const;  // -1 when absent
  int free_circles() const { return free_circles_; }

  // Marked crossing set N, in crossing order (indices into crossings()).
  std::vector<int> marked() const;
  int num_marked() const;

  int basepoint() const { return basepoint_; }  // arc index, -1 = first free circle

  int num_components() const { return num_arc_components_ + free_circles_; }
  int num_arc_components() const { return num_arc_components_; }
  int component_of_arc(int arc) const { return arc_component_[arc]; }
  const std::array<Occurrence, 2>& occurrences(int arc) const { return occ_[arc]; }

  // Index of the occurrence where the arc enters a crossing under the current orientation.
  int head(int arc) const { return head_[arc]; }
  bool oriented() const { return oriented_; }

  // +1 or -1; throws UnorientedDiagram when the PD convention is violated.
  int sign(int crossing) const;
  std::vector<int> signs() const;
  int writhe() const;

  // Index of the strand (0: a-c, 1: b-d) component passing through each strand.
  int strand_component(int crossing, int strand) const;

  std::string to_pd_string() const;

  // Mutators return new diagrams.
  PlanarDiagram with_marked(const std::vector<int>& ids) const;  // 1-based ids
  PlanarDiagram with_basepoint_label(int label) const;
  PlanarDiagram mirror() const;
  PlanarDiagram reverse_component(int component) const;
  // Rotates crossings so that slot 0 is the incoming under-strand for the given heads.
  PlanarDiagram with_heads(const std::vector<int>& heads) const;

 private:
  friend PlanarDiagram make_diagram(std::vector<Crossing>, std::vector<int>, int, int,
                                    std::vector<uint8_t>);
  void finalize();

  std::vector<Crossing> crossings_;
  std::vector<int> labels_;
  int free_circles_ = 0;
  int basepoint_ = -1;

  std::vector<std::array<Occurrence, 2>> occ_;
  std::vector<int> arc_component_;
  int num_arc_components_ = 0;
  std::vector<uint8_t> comp_flip_;  // reversal flags for components that never pass under
  std::vector<int> head_;
  bool oriented_ = true;
  std::vector<int> sign_;
};

// Builds a validated diagram from raw parts; arcs are indices into labels.
PlanarDiagram make_diagram(std::vector<Crossing> crossings, std::vector<int> labels,
                           int free_circles, int basepoint, std::vector<uint8_t> comp_flip = {});

// PD[X(a,b,c,d),...] with optional N=[ids], basepoint=arc, circles=k clauses, or JSON.
PlanarDiagram parse_pd(const std::string& text);

struct ResolvedState {
  std::vector<int> v;             // one entry per marked crossing
  int num_circles = 0;            // components of the resolved diagram, free circles included
  std::vector<int> arc_circle;    // arc -> circle
  std::vector<int> retained;      // crossings not in N
};

// Smoothings: 0 joins (a,b),(c,d); 1 joins (a,d),(b,c).
ResolvedState resolve(const PlanarDiagram& d, const std::vector<int>& v);
ResolvedState resolve_mask(const PlanarDiagram& d, uint64_t mask);

// The diagram D_v made of the retained crossings, re-oriented arbitrarily.
PlanarDiagram resolved_diagram(const PlanarDiagram& d, const std::vector<int>& v);

// 0 at positive crossings, 1 at negative, one entry per marked crossing.
std::vector<int> oriented_resolution(const PlanarDiagram& d);

// Writhe of an unlink diagram; checks that every pair of components has zero linking.
int writhe_unlink(const PlanarDiagram& unlink);
int writhe_unlink(const PlanarDiagram& d, const ResolvedState& s);

// Greedy kink and bigon removal. Returns the number of crossings left.
int simplify_count(const PlanarDiagram& d);

bool is_planar(const PlanarDiagram& d);

// Closure of a braid word; generator k > 0 is sigma_k (strand k over k+1), k < 0 its inverse.
PlanarDiagram braid_closure(int strands, const std::vector<int>& word);

}  // namespace khcube
