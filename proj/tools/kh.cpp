#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acceptance_suite.hpp"
#include "khcube/errors.hpp"
#include "khcube/filtration.hpp"
#include "khcube/invariants.hpp"
#include "khcube/khovanov.hpp"

using namespace khcube;
using nlohmann::json;

namespace {

// Largest expected perturbation size the sandbox will attempt.
constexpr double kSandboxEntryLimit = 2e7;

struct Config {
  std::string input;
  bool mirror = false;
  bool reduced = false;
  int reduced_shift = 1;
  std::string coeffs = "z";
  std::string weight = "1,0";
  int64_t seed = -1;
  bool trust_pseudo = false;
  int target_rank = -1;
  std::string filtration = "h";
  std::string format = "json";
  std::vector<std::string> criteria;
};

PlanarDiagram load(const Config& cfg) {
  std::string text;
  if (std::filesystem::is_regular_file(cfg.input)) {
    std::ifstream in(cfg.input);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (cfg.input.rfind("PD[", 0) == 0 || cfg.input.rfind("{", 0) == 0) {
    text = cfg.input;
  } else {
    throw Error(ErrorCode::InvalidArgument, "cannot read " + cfg.input);
  }
  PlanarDiagram d = parse_pd(text);
  return cfg.mirror ? d.mirror() : d;
}

KhOptions kh_options(const Config& cfg) {
  KhOptions o;
  o.reduced = cfg.reduced;
  o.reduced_shift = cfg.reduced_shift;
  o.trust_pseudo = cfg.trust_pseudo;
  return o;
}

Weight parse_weight(const std::string& s) {
  Weight w;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> w.a >> comma >> w.b) || comma != ',' || !is.eof())
    throw Error(ErrorCode::InvalidArgument, "weight must look like a,b");
  return w;
}

int cmd_parse(const Config& cfg) {
  const auto d = load(cfg);
  if (cfg.format == "csv") {
    std::cout << "id,a,b,c,d,sign,in_n\n";
    for (const auto& c : d.crossings())
      std::cout << c.id << "," << d.label(c.arcs[0]) << "," << d.label(c.arcs[1]) << "," << d.label(c.arcs[2]) << ","
                << d.label(c.arcs[3]) << "," << d.sign(c.id - 1) << "," << (c.in_n ? 1 : 0) << "\n";
    return 0;
  }
  json xs = json::array();
  for (const auto& c : d.crossings())
    xs.push_back({{"id", c.id},
                  {"arcs", {d.label(c.arcs[0]), d.label(c.arcs[1]), d.label(c.arcs[2]), d.label(c.arcs[3])}},
                  {"sign", d.sign(c.id - 1)},
                  {"in_n", c.in_n}});
  json out = {{"pd", d.to_pd_string()},
              {"crossings", xs},
              {"arcs", d.num_arcs()},
              {"components", d.num_components()},
              {"writhe", d.writhe()},
              {"marked", d.num_marked()}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_cube(const Config& cfg) {
  BuildOptions b;
  b.trust_pseudo = cfg.trust_pseudo;
  const auto c = build_cube(load(cfg), b);
  if (cfg.format == "csv") {
    std::cout << "v,circles,h_offset,q_offset,unlink_status\n";
    for (const auto& v : c.vertices())
      std::cout << v.v << "," << v.p << "," << c.h_offset(v.v) << "," << c.q_offset(v.v) << ","
                << (v.unlink_status == UnlinkStatus::Verified ? "Verified" : "Unverified") << "\n";
    return 0;
  }
  std::cout << c.dump_json() << "\n";
  return 0;
}

int cmd_homology(const Config& cfg) {
  const auto t = khovanov_homology(load(cfg), kh_options(cfg));
  if (cfg.coeffs == "z") {
    std::cout << (cfg.format == "csv" ? t.to_csv() : t.to_json()) << "\n";
    return 0;
  }
  const auto ranks = rational_ranks(t);
  if (cfg.format == "csv") {
    std::cout << "h,q,rank\n";
    for (const auto& [k, r] : ranks) std::cout << k.first << "," << k.second << "," << r << "\n";
    return 0;
  }
  json out = json::array();
  for (const auto& [k, r] : ranks) out.push_back({{"h", k.first}, {"q", k.second}, {"rank", r}});
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_ss(const Config& cfg) {
  const Weight w = parse_weight(cfg.weight);
  if (w.a < 0 || w.b < 0 || (w.a == 0 && w.b == 0))
    throw Error(ErrorCode::InvalidArgument, "weight must be nonnegative and not both zero");
  const auto k = build_khovanov(load(cfg), kh_options(cfg));
  BigradedComplex c = k.assemble();
  if (cfg.seed >= 0) {
    const double entries = sandbox_expected_entries(c.h, c.q);
    if (entries > kSandboxEntryLimit)
      throw Error(ErrorCode::InvalidArgument, "perturbation would need about " + std::to_string(static_cast<long long>(entries)) +
                                                  " random entries on " + std::to_string(c.size()) + " generators");
    c.d = sandbox_perturb(c, static_cast<uint64_t>(cfg.seed)).d_sharp;
  }
  const auto ss = spectral_sequence(make_filtered(std::move(c), w));
  if (cfg.format == "csv") {
    std::cout << "r,p,complementary,rank\n";
    for (const auto& page : ss.pages)
      for (const auto& [key, rank] : page.groups)
        std::cout << page.r << "," << key.first << "," << key.second << "," << rank << "\n";
    return 0;
  }
  std::cout << ss.to_json() << "\n";
  return 0;
}

int cmd_alexander(const Config& cfg) {
  const auto a = alexander(load(cfg));
  if (cfg.format == "csv") {
    std::cout << "exponent,coefficient\n";
    for (const auto& [e, c] : a.terms()) std::cout << e << "," << c << "\n";
    return 0;
  }
  json coeffs = json::object();
  for (const auto& [e, c] : a.terms()) coeffs[std::to_string(e)] = c.str();
  json out = {{"alexander", a.to_string()}, {"coefficients", coeffs}, {"rank_lower_bound", rank_lower_bound(a)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_analyze(const Config& cfg) {
  const auto d = load(cfg);
  KhOptions o = kh_options(cfg);
  o.reduced = true;
  const auto ranks = rational_ranks(khovanov_homology(d, o));
  FeasibilityOptions f;
  f.mode = cfg.filtration == "q" ? FiltrationCase::Q : FiltrationCase::H;
  if (d.num_components() == 1) f.alexander = alexander(d);
  const auto rep = differential_feasibility(ranks, cfg.target_rank, f);
  if (cfg.format == "csv") {
    std::cout << "placement,from_row,to_row,rank\n";
    for (size_t i = 0; i < rep.placements.size(); ++i)
      for (const auto& r : rep.placements[i].rows)
        std::cout << i << "," << r.from_row << "," << r.to_row << "," << r.rank << "\n";
    return 0;
  }
  std::cout << rep.to_json() << "\n";
  return 0;
}

int cmd_verify(const Config& cfg) {
  const auto d = load(cfg);
  json out = json::array();
  for (bool reduced : {false, true}) {
    KhOptions o = kh_options(cfg);
    o.reduced = reduced;
    const auto k = build_khovanov(d, o);
    k.check_d_squared();
    k.check_bidegree();
    out.push_back({{"reduced", reduced}, {"generators", k.num_generators()}, {"d_squared", "zero"}, {"bidegree", "(1,0)"}});
  }
  if (cfg.format == "csv") {
    std::cout << "reduced,generators,d_squared,bidegree\n";
    for (const auto& r : out)
      std::cout << r["reduced"].get<bool>() << "," << r["generators"].get<size_t>() << ",zero,(1;0)\n";
    return 0;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_selftest(const Config& cfg) {
  const auto& ids = cfg.criteria.empty() ? acceptance::criteria() : cfg.criteria;
  int failures = 0;
  for (const auto& id : ids) {
    const auto r = acceptance::run(id);
    std::cout << acceptance::format(r) << std::endl;
    if (!r.pass) ++failures;
  }
  std::cout << (ids.size() - failures) << "/" << ids.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology, cube of resolutions and spectral sequences"};
  app.require_subcommand(1);
  Config cfg;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "PD file, or inline PD[...] / JSON text")->required();
    sub->add_flag("--mirror", cfg.mirror, "swap over and under at every crossing");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_kh = [&](CLI::App* sub, bool reduced_flag) {
    sub->add_flag("--trust-pseudo", cfg.trust_pseudo, "accept resolutions the unlink check cannot verify");
    CLI::Option* red = nullptr;
    if (reduced_flag) red = sub->add_flag("--reduced", cfg.reduced, "reduced complex at the basepoint");
    auto* shift = sub->add_option("--reduced-shift", cfg.reduced_shift, "q shift of the reduced complex");
    if (red) shift->needs(red);
  };

  auto* parse = app.add_subcommand("parse", "validate a diagram and print its data");
  add_input(parse);
  auto* cube = app.add_subcommand("cube", "dump the graded cube of resolutions");
  add_input(cube);
  cube->add_flag("--trust-pseudo", cfg.trust_pseudo, "accept resolutions the unlink check cannot verify");
  auto* hom = app.add_subcommand("homology", "bigraded Khovanov homology");
  add_input(hom);
  add_kh(hom, true);
  hom->add_option("--coeffs", cfg.coeffs, "z for integral groups, q for rational ranks")
      ->check(CLI::IsMember({"z", "q"}));
  auto* ss = app.add_subcommand("ss", "spectral sequence of the filtration a h + b q");
  add_input(ss);
  add_kh(ss, true);
  ss->add_option("--weight", cfg.weight, "a,b");
  ss->add_option("--perturb", cfg.seed, "conjugate the differential with a seeded sandbox perturbation")
      ->check(CLI::NonNegativeNumber);
  auto* alex = app.add_subcommand("alexander", "Alexander polynomial");
  add_input(alex);
  auto* analyze = app.add_subcommand("analyze", "differential placements for a target rank");
  add_input(analyze);
  add_kh(analyze, false);
  analyze->add_option("--target-rank", cfg.target_rank, "rank of the abutment")->required()->check(CLI::NonNegativeNumber);
  analyze->add_option("--filtration", cfg.filtration, "h or q")->check(CLI::IsMember({"h", "q"}));
  auto* verify = app.add_subcommand("verify", "check d^2 = 0 and the bidegree of d");
  add_input(verify);
  verify->add_flag("--trust-pseudo", cfg.trust_pseudo, "accept resolutions the unlink check cannot verify");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--criterion", cfg.criteria, "criterion ids to run")
      ->check(CLI::IsMember(acceptance::criteria()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*parse) return cmd_parse(cfg);
    if (*cube) return cmd_cube(cfg);
    if (*hom) return cmd_homology(cfg);
    if (*ss) return cmd_ss(cfg);
    if (*alex) return cmd_alexander(cfg);
    if (*analyze) return cmd_analyze(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*selftest) return cmd_selftest(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_internal(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
