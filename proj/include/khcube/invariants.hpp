#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khcube/chain.hpp"
#include "khcube/diagram.hpp"

namespace khcube {

// Symmetrized, positive leading coefficient. Throws MultiComponent for links.
LaurentPoly alexander(const PlanarDiagram& d);

// Sum of absolute values of the coefficients.
long long rank_lower_bound(const LaurentPoly& delta);

// Rational ranks keyed by (i, j) = (h, q).
using RankTable = std::map<std::pair<int, int>, int>;

struct Mod4Table {
  std::array<int, 4> betti{};  // class (j - i - 1) mod 4
  int total() const { return betti[0] + betti[1] + betti[2] + betti[3]; }
};

int mod4_class(int i, int j);
Mod4Table mod4_betti(const RankTable& ranks);

enum class FiltrationCase { H, Q };

struct PairMove {
  std::pair<int, int> source;  // (i, j)
  std::pair<int, int> target;
  int rank = 1;
};

struct RowMove {
  int from_row = 0;  // j - i
  int to_row = 0;
  int rank = 1;
};

struct Placement {
  std::vector<RowMove> rows;
  std::vector<std::vector<PairMove>> realizations;
  Mod4Table betti_after;
};

struct FeasibilityOptions {
  FiltrationCase mode = FiltrationCase::H;
  // With the Alexander polynomial and target equal to its coefficient sum, Betti numbers in
  // classes l and l+2 may differ only through the constant-term eigenspace.
  std::optional<LaurentPoly> alexander;
  size_t max_realizations = 200000;
};

struct FeasibilityReport {
  int target_rank = 0;
  int total_rank = 0;
  int kill = 0;
  FiltrationCase mode = FiltrationCase::H;
  bool eigenspace_constraint = false;
  Mod4Table betti_before;
  std::vector<Placement> placements;
  std::vector<std::string> annotations;
  std::string to_json() const;
};

// True when a rank-1 differential may go from source to target.
bool admissible_move(std::pair<int, int> source, std::pair<int, int> target, FiltrationCase mode);

FeasibilityReport differential_feasibility(const RankTable& ranks, int target_rank,
                                           const FeasibilityOptions& options = {});

}  // namespace khcube
