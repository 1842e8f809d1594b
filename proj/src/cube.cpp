#include "khcube/cube.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

#include "khcube/errors.hpp"
#include "khcube/parallel.hpp"

namespace khcube {

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Merge: return "Merge";
    case EdgeKind::Split: return "Split";
    case EdgeKind::NonorientableBand: return "NonorientableBand";
  }
  return "?";
}

std::vector<int> mask_to_vector(uint32_t mask, int dim) {
  std::vector<int> v(dim);
  for (int i = 0; i < dim; ++i) v[i] = static_cast<int>((mask >> i) & 1u);
  return v;
}

uint32_t vector_to_mask(const std::vector<int>& v) {
  uint32_t m = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0 && v[i] != 1) throw Error(ErrorCode::InvalidArgument, "entries must be 0 or 1");
    if (v[i]) m |= (1u << i);
  }
  return m;
}

namespace {

int half(int s) {
  if (s % 2 != 0) throw Error(ErrorCode::InternalInvariant, "odd self-intersection " + std::to_string(s));
  return s / 2;
}

int mod3(int x) { return ((x % 3) + 3) % 3; }

}  // namespace

GradedCube build_cube(const PlanarDiagram& d, BuildOptions options) {
  GradedCube cube;
  cube.diagram_ = d;
  const auto marked = d.marked();
  cube.dim_ = static_cast<int>(marked.size());
  if (cube.dim_ > 30) throw Error(ErrorCode::InvalidArgument, "too many marked crossings");
  const uint32_t nv = 1u << cube.dim_;

  for (size_t k = 0; k < marked.size(); ++k) {
    const int s = d.sign(marked[k]);
    if (s > 0) {
      ++cube.n_plus_;
    } else {
      ++cube.n_minus_;
      cube.o_ |= (1u << k);
    }
  }

  const bool genuine = cube.dim_ == d.num_crossings();
  cube.vertices_.resize(nv);
  parallel_for(nv, [&](size_t idx) {
    const uint32_t v = static_cast<uint32_t>(idx);
    CubeVertex& x = cube.vertices_[v];
    x.v = v;
    x.state = resolve_mask(d, v);
    x.p = x.state.num_circles;
    if (genuine) {
      x.unlink_status = UnlinkStatus::Verified;
      x.writhe = 0;
      return;
    }
    const PlanarDiagram dv = resolved_diagram(d, mask_to_vector(v, cube.dim_));
    x.unlink_status = simplify_count(dv) == 0 ? UnlinkStatus::Verified : UnlinkStatus::Unverified;
    if (x.unlink_status == UnlinkStatus::Unverified && !options.trust_pseudo) return;
    x.writhe = writhe_unlink(dv);
  });
  if (!options.trust_pseudo) {
    for (const auto& x : cube.vertices_) {
      if (x.unlink_status == UnlinkStatus::Unverified) {
        std::string vs;
        for (int i = 0; i < cube.dim_; ++i) vs += ((x.v >> i) & 1u) ? '1' : '0';
        throw Error(ErrorCode::NotAPseudoDiagram,
                    "resolution v=" + vs + " does not simplify to an unlink diagram");
      }
    }
  }

  for (uint32_t v = 0; v < nv; ++v) {
    for (int k = 0; k < cube.dim_; ++k) {
      if (!((v >> k) & 1u)) continue;
      CubeEdge e;
      e.v = v;
      e.u = v & ~(1u << k);
      e.position = k;
      const int pv = cube.vertices_[e.v].p;
      const int pu = cube.vertices_[e.u].p;
      if (pu == pv - 1) e.kind = EdgeKind::Merge;
      else if (pu == pv + 1) e.kind = EdgeKind::Split;
      else if (pu == pv) e.kind = EdgeKind::NonorientableBand;
      else throw Error(ErrorCode::InternalInvariant, "circle count jumps by more than one");
      e.sigma = cube.vertices_[e.v].writhe - cube.vertices_[e.u].writhe;
      if (e.kind == EdgeKind::NonorientableBand) {
        if (e.sigma != 2 && e.sigma != -2)
          throw Error(ErrorCode::InternalInvariant,
                      "band with self-intersection " + std::to_string(e.sigma));
      } else if (e.sigma != 0) {
        throw Error(ErrorCode::InternalInvariant,
                    "orientable saddle with self-intersection " + std::to_string(e.sigma));
      }
      cube.edges_.push_back(e);
    }
  }

  cube.h_offset_.resize(nv);
  cube.q_offset_.resize(nv);
  for (uint32_t v = 0; v < nv; ++v) {
    const int sum = __builtin_popcount(v);
    const int s = cube.sigma_mask(v, cube.o_);
    cube.h_offset_[v] = -sum + half(s) + cube.n_minus_;
    cube.q_offset_[v] = -sum + 3 * half(s) - cube.n_plus_ + 2 * cube.n_minus_;
  }
  return cube;
}

int GradedCube::sigma_mask(uint32_t v, uint32_t u) const {
  return vertices_[v].writhe - vertices_[u].writhe;
}

int GradedCube::sigma(const std::vector<int>& v, const std::vector<int>& u) const {
  if (static_cast<int>(v.size()) != dim_ || static_cast<int>(u.size()) != dim_)
    throw Error(ErrorCode::InvalidArgument, "vector length must equal |N|");
  uint32_t rv = 0;
  uint32_t ru = 0;
  int extra = 0;
  for (int i = 0; i < dim_; ++i) {
    const int a = mod3(v[i]);
    const int b = mod3(u[i]);
    if (a == 2 || b == 2)
      throw Error(ErrorCode::OutOfDomain, "entry at position " + std::to_string(i) + " is 2 mod 3");
    if (a) rv |= 1u << i;
    if (b) ru |= 1u << i;
    extra += (v[i] - a) - (u[i] - b);
  }
  return sigma_mask(rv, ru) + 2 * (extra / 3);
}

int GradedCube::h_grading(const std::vector<int>& v) const {
  const int s = sigma(v, mask_to_vector(o_, dim_));
  int sum = 0;
  for (int x : v) sum += x;
  return -sum + half(s) + n_minus_;
}

int GradedCube::q_grading(const std::vector<int>& v, int labeling_q) const {
  const int s = sigma(v, mask_to_vector(o_, dim_));
  int sum = 0;
  for (int x : v) sum += x;
  return labeling_q - sum + 3 * half(s) - n_plus_ + 2 * n_minus_;
}

int GradedCube::max_self_intersection() const {
  const uint32_t nv = static_cast<uint32_t>(vertices_.size());
  std::vector<int> lowest(nv);
  for (uint32_t v = 0; v < nv; ++v) lowest[v] = vertices_[v].writhe;
  for (int k = 0; k < dim_; ++k)
    for (uint32_t v = 0; v < nv; ++v)
      if ((v >> k) & 1u) lowest[v] = std::min(lowest[v], lowest[v & ~(1u << k)]);
  int best = std::numeric_limits<int>::min();
  for (uint32_t v = 0; v < nv; ++v) best = std::max(best, vertices_[v].writhe - lowest[v]);
  return best;
}

std::string GradedCube::dump_json() const {
  nlohmann::json j;
  auto bits = [&](uint32_t v) {
    std::vector<int> out;
    for (int i = 0; i < dim_; ++i) out.push_back(static_cast<int>((v >> i) & 1u));
    return out;
  };
  j["n_plus"] = n_plus_;
  j["n_minus"] = n_minus_;
  j["oriented_resolution"] = bits(o_);
  j["max_self_intersection"] = max_self_intersection();
  j["vertices"] = nlohmann::json::array();
  for (const auto& x : vertices_) {
    j["vertices"].push_back({{"v", bits(x.v)},
                             {"circles", x.p},
                             {"h_offset", h_offset_[x.v]},
                             {"q_offset", q_offset_[x.v]},
                             {"writhe", x.writhe},
                             {"unlink_status", x.unlink_status == UnlinkStatus::Verified
                                                   ? "Verified"
                                                   : "Unverified"}});
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) {
    j["edges"].push_back({{"v", bits(e.v)},
                          {"u", bits(e.u)},
                          {"kind", edge_kind_name(e.kind)},
                          {"sigma", e.sigma},
                          {"chi", e.chi}});
  }
  return j.dump(2);
}

bool edge_parity_admissible(int sigma, int chi) {
  if (sigma % 2 != 0) throw Error(ErrorCode::OddSelfIntersection, std::to_string(sigma));
  return ((sigma / 2 + chi) % 2 + 2) % 2 == 1;
}

bool edge_parity_admissible(const CubeEdge& e) { return edge_parity_admissible(e.sigma, e.chi); }

DropShift grading_shift_on_drop(int eps) {
  if (eps != 1 && eps != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  DropShift s;
  s.sigma_shift = 1 + eps;
  s.parity_term = 1 - eps;
  s.dh = -2 + s.sigma_shift / 2 + s.parity_term / 2;
  s.dq = -2 + 3 * s.sigma_shift / 2 + 3 * s.parity_term / 2 - 1;
  return s;
}

}  // namespace khcube
