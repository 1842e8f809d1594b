#pragma once

#include "khcube/diagram.hpp"
#include "oracles.hpp"

inline oracle::Pd to_oracle_pd(const khcube::PlanarDiagram& d) {
  oracle::Pd pd;
  for (const auto& c : d.crossings()) {
    std::array<int, 4> x{};
    for (int i = 0; i < 4; ++i) x[i] = d.label(c.arcs[i]);
    pd.push_back(x);
  }
  return pd;
}

inline khcube::PlanarDiagram from_oracle_pd(const oracle::Pd& pd) {
  return khcube::PlanarDiagram::from_crossings(std::vector<std::array<int, 4>>(pd.begin(), pd.end()));
}
