#include "khcube/corpus.hpp"

#include "khcube/errors.hpp"

namespace khcube {

PlanarDiagram torus_4_5() {
  std::vector<int> word;
  for (int i = 0; i < 5; ++i)
    for (int g = 1; g <= 3; ++g) word.push_back(g);
  return braid_closure(4, word);
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"unknot", "PD[] circles=1", "crossingless unknot"},
      {"trefoil", "PD[X(4,2,5,1),X(6,4,1,3),X(2,6,3,5)]", "positive trefoil"},
      {"figure_eight", "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]", "figure-eight knot"},
      {"hopf", "PD[X(4,1,3,2),X(2,3,1,4)]", "Hopf link"},
      {"unlink_pseudo", "PD[X(4,2,3,1),X(3,2,4,1)] N=[2]", "one-crossing pseudo-diagram of the unlink"},
      {"hopf_pseudo", "PD[X(4,1,3,2),X(2,3,1,4)] N=[1]", "one-crossing pseudo-diagram of the Hopf link"},
      {"t45", torus_4_5().to_pd_string(), "torus knot T(4,5) as a braid closure"},
  };
  return entries;
}

const std::vector<CorpusEntry>& knot_table() {
  static const std::vector<CorpusEntry> entries = {
      {"3_1", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", ""},
      {"4_1", "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]", ""},
      {"5_1", "PD[X(1,6,2,7),X(3,8,4,9),X(5,10,6,1),X(7,2,8,3),X(9,4,10,5)]", ""},
      {"5_2", "PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)]", ""},
      {"6_1", "PD[X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)]", ""},
      {"6_2", "PD[X(1,4,2,5),X(5,10,6,11),X(3,9,4,8),X(9,3,10,2),X(7,12,8,1),X(11,6,12,7)]", ""},
      {"6_3", "PD[X(4,2,5,1),X(8,4,9,3),X(12,9,1,10),X(10,5,11,6),X(6,11,7,12),X(2,8,3,7)]", ""},
  };
  return entries;
}

std::string corpus_pd(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e.pd;
  for (const auto& e : knot_table())
    if (e.name == name) return e.pd;
  throw Error(ErrorCode::InvalidArgument, "no bundled diagram named " + name);
}

PlanarDiagram corpus_diagram(const std::string& name) {
  if (name == "t45") return torus_4_5();
  return parse_pd(corpus_pd(name));
}

std::vector<ReidemeisterPair> reidemeister_pairs() {
  struct Spec {
    const char* name;
    int s1;
    std::vector<int> w1;
    int s2;
    std::vector<int> w2;
  };
  const std::vector<Spec> specs = {
      {"R1", 2, {1, 1}, 3, {1, 1, 2}},
      {"R2", 2, {1, 1}, 2, {1, -1, 1, 1}},
      {"R3", 3, {1, 2, 1}, 3, {2, 1, 2}},
  };
  std::vector<ReidemeisterPair> out;
  for (const auto& s : specs) {
    const PlanarDiagram a = braid_closure(s.s1, s.w1);
    const PlanarDiagram b = braid_closure(s.s2, s.w2);
    out.push_back({std::string(s.name) + "_A", a, b});
    // Reverse the component through the bottom of strand 1 in both.
    const PlanarDiagram ra = a.reverse_component(a.component_of_arc(a.arc_of_label(1)));
    const PlanarDiagram rb = b.reverse_component(b.component_of_arc(b.arc_of_label(1)));
    out.push_back({std::string(s.name) + "_B", ra, rb});
  }
  return out;
}

}  // namespace khcube
