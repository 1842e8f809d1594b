#include <doctest.h>

#include <algorithm>
#include <random>

#include "khcube/corpus.hpp"
#include "khcube/errors.hpp"
#include "khcube/invariants.hpp"
#include "khcube/khovanov.hpp"
#include "test_util.hpp"

using namespace khcube;

namespace {

// Reduced T(4,5) ranks at (i, j) read off the plotted (i, j - i) points.
RankTable t45_plot() {
  RankTable t;
  for (auto [i, row] : std::vector<std::pair<int, int>>{
           {0, 11}, {2, 13}, {4, 13}, {6, 13}, {3, 14}, {8, 15}, {5, 16}, {7, 16}, {9, 16}})
    t[{i, i + row}] = 1;
  return t;
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("alexander polynomials") {
  CHECK(alexander(parse_pd("PD[] circles=1")) == LaurentPoly(1));
  CHECK(alexander(corpus_diagram("trefoil")).to_string() == "T-1+T^-1");
  CHECK(alexander(corpus_diagram("figure_eight")).to_string() == "T-3+T^-1");
  CHECK(alexander(torus_4_5()).to_string() == "T^6-T^5+T^2-1+T^-2-T^-5+T^-6");
  try {
    alexander(corpus_diagram("hopf"));
    FAIL("accepted a link");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultiComponent);
  }
}

TEST_CASE("alexander is symmetric with unit value at one") {
  for (const auto& e : knot_table()) {
    const auto a = alexander(parse_pd(e.pd));
    CHECK(a == a.invert_variable());
    const auto one = a.eval_at_one();
    CHECK((one == 1 || one == -1));
  }
}

TEST_CASE("alexander is invariant under crossing reordering") {
  std::mt19937_64 rng(5);
  for (const auto& e : knot_table()) {
    const auto d = parse_pd(e.pd);
    auto pd = to_oracle_pd(d);
    std::shuffle(pd.begin(), pd.end(), rng);
    CHECK(alexander(from_oracle_pd(pd)) == alexander(d));
  }
}

TEST_CASE("rank lower bound") {
  CHECK(rank_lower_bound(LaurentPoly(1)) == 1);
  CHECK(rank_lower_bound(alexander(corpus_diagram("trefoil"))) == 3);
  CHECK(rank_lower_bound(alexander(torus_4_5())) == 7);
}

TEST_CASE("mod 4 betti numbers") {
  CHECK(mod4_class(0, 0) == 3);
  CHECK(mod4_betti({{{0, 0}, 1}}).betti == std::array<int, 4>{0, 0, 0, 1});
  const auto t = mod4_betti(t45_plot());
  CHECK(t.betti == std::array<int, 4>{3, 1, 2, 3});
  CHECK(t.total() == 9);
  KhOptions r;
  r.reduced = true;
  const auto tref = mod4_betti(rational_ranks(khovanov_homology(corpus_diagram("trefoil"), r)));
  CHECK(tref.total() == 3);
}

TEST_CASE("mod 4 betti numbers ignore crossing order") {
  std::mt19937_64 rng(8);
  KhOptions r;
  r.reduced = true;
  for (const auto& e : knot_table()) {
    const auto d = parse_pd(e.pd);
    auto pd = to_oracle_pd(d);
    std::shuffle(pd.begin(), pd.end(), rng);
    CHECK(mod4_betti(rational_ranks(khovanov_homology(from_oracle_pd(pd), r))).betti ==
          mod4_betti(rational_ranks(khovanov_homology(d, r))).betti);
  }
}

TEST_CASE("admissible moves") {
  CHECK(admissible_move({0, 0}, {1, 0}, FiltrationCase::H));
  CHECK(admissible_move({0, 0}, {1, 4}, FiltrationCase::H));
  CHECK_FALSE(admissible_move({0, 0}, {1, 2}, FiltrationCase::H));
  CHECK_FALSE(admissible_move({0, 0}, {0, 3}, FiltrationCase::H));
  CHECK(admissible_move({0, 0}, {0, 3}, FiltrationCase::Q));
  CHECK_FALSE(admissible_move({0, 0}, {5, 0}, FiltrationCase::H));
}

TEST_CASE("feasibility on the unknot") {
  const auto rep = differential_feasibility({{{0, 0}, 1}}, 1);
  REQUIRE(rep.placements.size() == 1);
  CHECK(rep.placements[0].rows.empty());
  CHECK(rep.kill == 0);
}

TEST_CASE("feasibility on T(4,5)") {
  const auto plot = t45_plot();
  const auto none = differential_feasibility(plot, 9);
  REQUIRE(none.placements.size() == 1);
  CHECK(none.placements[0].rows.empty());

  FeasibilityOptions o;
  o.alexander = alexander(torus_4_5());
  const auto rep = differential_feasibility(plot, 7, o);
  CHECK(rep.eigenspace_constraint);
  REQUIRE(rep.placements.size() == 1);
  REQUIRE(rep.placements[0].rows.size() == 1);
  CHECK(rep.placements[0].rows[0].from_row == 13);
  CHECK(rep.placements[0].rows[0].to_row == 16);
  CHECK(rep.placements[0].rows[0].rank == 1);
  CHECK(rep.placements[0].betti_after.betti == std::array<int, 4>{2, 1, 2, 2});
  for (const auto& real : rep.placements[0].realizations)
    for (const auto& m : real) CHECK(admissible_move(m.source, m.target, FiltrationCase::H));
  CHECK(rep.to_json().find("\"placements\"") != std::string::npos);

  const auto loose = differential_feasibility(plot, 7);
  CHECK(loose.placements.size() > 1);
}

TEST_CASE("feasibility argument checks") {
  const auto plot = t45_plot();
  try {
    differential_feasibility(plot, 8);
    FAIL("odd difference accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleParity);
  }
  CHECK_THROWS_AS(differential_feasibility(plot, 11), Error);
}

}
