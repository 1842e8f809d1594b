#include <doctest.h>

#include <set>

#include "khcube/corpus.hpp"
#include "khcube/cube.hpp"
#include "khcube/errors.hpp"

using namespace khcube;

TEST_SUITE("cube") {

TEST_CASE("trefoil cube") {
  const auto c = build_cube(corpus_diagram("trefoil"));
  CHECK(c.vertices().size() == 8);
  CHECK(c.edges().size() == 12);
  for (const auto& e : c.edges()) {
    CHECK(e.kind != EdgeKind::NonorientableBand);
    CHECK(e.sigma == 0);
    CHECK(e.chi == -1);
    const int dp = c.vertices()[e.u].p - c.vertices()[e.v].p;
    CHECK(dp == (e.kind == EdgeKind::Split ? 1 : -1));
  }
  CHECK(c.n_plus() + c.n_minus() == 3);
  CHECK(c.h_offset(c.oriented_mask()) == 0);
  CHECK(c.max_self_intersection() == 0);
  CHECK(c.small_squares());
}

TEST_CASE("pseudo-diagram edges") {
  const auto u = build_cube(corpus_diagram("unlink_pseudo"));
  REQUIRE(u.edges().size() == 1);
  CHECK(u.vertices().size() == 2);
  CHECK(u.edges()[0].kind == EdgeKind::NonorientableBand);
  CHECK(u.edges()[0].sigma == 2);
  const auto h = build_cube(corpus_diagram("hopf_pseudo"));
  REQUIRE(h.edges().size() == 1);
  CHECK(h.edges()[0].kind == EdgeKind::NonorientableBand);
  CHECK(h.edges()[0].sigma == -2);
}

TEST_CASE("unlink pseudo-diagram gradings") {
  const auto c = build_cube(corpus_diagram("unlink_pseudo"));
  std::multiset<std::pair<int, int>> got;
  for (uint32_t v = 0; v < 2; ++v)
    for (int qq : {1, -1}) got.insert({c.h_offset(v), qq + c.q_offset(v)});
  CHECK(got == std::multiset<std::pair<int, int>>{{0, 2}, {0, 0}, {0, 0}, {0, -2}});
}

TEST_CASE("sigma") {
  const auto c = build_cube(corpus_diagram("hopf_pseudo"));
  CHECK(c.sigma({1}, {1}) == 0);
  CHECK(c.sigma({1}, {0}) == -2);
  CHECK(c.sigma({0}, {1}) == 2);
  CHECK(c.sigma({3}, {0}) == 2);
  CHECK(c.sigma({4}, {1}) == 2);
  CHECK(c.sigma({0}, {3}) == -2);
  CHECK_THROWS_AS(c.sigma({2}, {0}), Error);
  try {
    c.sigma({2}, {0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfDomain);
  }
}

TEST_CASE("unknot gradings") {
  const auto c = build_cube(parse_pd("PD[] circles=1"));
  CHECK(c.vertices().size() == 1);
  CHECK(c.q_grading({}, 1) == 1);
  CHECK(c.q_grading({}, -1) == -1);
  CHECK(c.h_grading({}) == 0);
}

TEST_CASE("genuine diagrams have h = 0 at the oriented resolution") {
  for (const auto& e : knot_table()) {
    const auto c = build_cube(parse_pd(e.pd));
    CHECK(c.h_grading(mask_to_vector(c.oriented_mask(), c.dim())) == 0);
    CHECK(c.max_self_intersection() == 0);
  }
}

TEST_CASE("edge parity") {
  CHECK(edge_parity_admissible(0, -1));
  CHECK_FALSE(edge_parity_admissible(2, -1));
  CHECK_FALSE(edge_parity_admissible(-2, -1));
  CHECK_FALSE(edge_parity_admissible(0, -2));
}

TEST_CASE("grading shift on dropping a crossing") {
  const auto p = grading_shift_on_drop(1);
  const auto m = grading_shift_on_drop(-1);
  CHECK(p.dh == -1);
  CHECK(p.dq == 0);
  CHECK(p.sigma_shift == 2);
  CHECK(m.dh == -1);
  CHECK(m.dq == 0);
  CHECK(m.sigma_shift == 0);
  CHECK(m.parity_term == 2);
  CHECK_THROWS_AS(grading_shift_on_drop(0), Error);
}

TEST_CASE("additivity and telescoping on the figure-eight") {
  const auto c = build_cube(corpus_diagram("figure_eight"));
  const uint32_t n = 1u << c.dim();
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t w = 0; w < n; ++w) CHECK(c.sigma_mask(a, w) == c.sigma_mask(a, b) + c.sigma_mask(b, w));
}

TEST_CASE("q parity is constant") {
  for (const auto& e : corpus()) {
    if (e.name == "t45") continue;
    const auto d = parse_pd(e.pd);
    const auto c = build_cube(d);
    std::set<int> parities;
    for (const auto& v : c.vertices()) parities.insert(((v.p + c.q_offset(v.v)) % 2 + 2) % 2);
    CHECK(parities.size() == 1);
    CHECK(*parities.begin() == d.num_components() % 2);
  }
}

TEST_CASE("json dump") {
  const auto s = build_cube(corpus_diagram("trefoil")).dump_json();
  CHECK(s.find("\"vertices\"") != std::string::npos);
  CHECK(s.find("\"edges\"") != std::string::npos);
  CHECK(s.find("\"unlink_status\"") != std::string::npos);
}

}
