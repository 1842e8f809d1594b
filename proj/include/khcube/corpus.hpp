#pragma once

#include <string>
#include <vector>

#include "khcube/diagram.hpp"

namespace khcube {

struct CorpusEntry {
  std::string name;
  std::string pd;  // parse_pd text
  std::string description;
};

// Named diagrams: unknot, trefoil, figure_eight, hopf, unlink_pseudo, hopf_pseudo, t45.
const std::vector<CorpusEntry>& corpus();
// Prime knots with at most six crossings.
const std::vector<CorpusEntry>& knot_table();

PlanarDiagram corpus_diagram(const std::string& name);
std::string corpus_pd(const std::string& name);

// Closure of (s1 s2 s3)^5 on four strands.
PlanarDiagram torus_4_5();

struct ReidemeisterPair {
  std::string name;
  PlanarDiagram before;
  PlanarDiagram after;
};

// R1, R2, R3 on two-component braid closures, each in two orientations.
std::vector<ReidemeisterPair> reidemeister_pairs();

}  // namespace khcube
