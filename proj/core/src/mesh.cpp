#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "planvec/reconstruct.hpp"

namespace planvec::recon {

namespace {

// Point on a wall face: u along the wall, z up.
struct FacePoint {
  double u;
  double z;
};

double cross(const FacePoint& o, const FacePoint& a, const FacePoint& b) {
  return (a.u - o.u) * (b.z - o.z) - (a.z - o.z) * (b.u - o.u);
}

bool in_triangle_closed(const FacePoint& p, const FacePoint& a, const FacePoint& b,
                        const FacePoint& c, double eps) {
  return cross(a, b, p) >= -eps && cross(b, c, p) >= -eps && cross(c, a, p) >= -eps;
}

bool same_point(const FacePoint& a, const FacePoint& b) {
  return std::abs(a.u - b.u) < 1e-12 && std::abs(a.z - b.z) < 1e-12;
}

// Ear clipping of a simple counter-clockwise polygon given as indices into
// `pts`. Vertices touching a candidate ear (even on its boundary) block it,
// so no triangle edge passes through another vertex.
void ear_clip(const std::vector<FacePoint>& pts, std::vector<int> poly,
              std::vector<std::array<int, 3>>& out) {
  double span = 1.0;
  for (int i : poly) span = std::max({span, std::abs(pts[i].u), std::abs(pts[i].z)});
  const double eps = 1e-12 * span * span;
  while (poly.size() > 3) {
    const std::size_t n = poly.size();
    bool clipped = false;
    for (std::size_t k = 0; k < n && !clipped; ++k) {
      const int ia = poly[(k + n - 1) % n], ib = poly[k], ic = poly[(k + 1) % n];
      const FacePoint &a = pts[ia], &b = pts[ib], &c = pts[ic];
      if (cross(a, b, c) <= eps) continue;  // reflex or collinear
      bool blocked = false;
      for (int j : poly) {
        if (j == ia || j == ib || j == ic) continue;
        if (same_point(pts[j], a) || same_point(pts[j], b) || same_point(pts[j], c)) continue;
        if (in_triangle_closed(pts[j], a, b, c, eps)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back({ia, ib, ic});
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
    }
    if (!clipped) throw std::logic_error("wall face triangulation failed");
  }
  if (poly.size() == 3 && cross(pts[poly[0]], pts[poly[1]], pts[poly[2]]) > eps) {
    out.push_back({poly[0], poly[1], poly[2]});
  }
}

struct Hole {
  double a, b, s, t;
};

Vec3 sub(const Vec3& p, const Vec3& q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
Vec3 cross3(const Vec3& p, const Vec3& q) {
  return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}
double dot3(const Vec3& p, const Vec3& q) { return p.x * q.x + p.y * q.y + p.z * q.z; }

}  // namespace

Mesh wall_mesh(const SceneWall& wall) {
  const double L = wall.length_m();
  const double T = wall.thickness_m();
  const double H = wall.height_m;
  const Vec2 o = wall.footprint[0];
  const Vec3 eu{(wall.footprint[1].x - o.x) / L, (wall.footprint[1].y - o.y) / L, 0.0};
  const Vec3 ev{(wall.footprint[3].x - o.x) / T, (wall.footprint[3].y - o.y) / T, 0.0};
  const Vec3 ez{0.0, 0.0, 1.0};

  std::vector<Hole> holes;
  for (const auto& op : wall.openings) {
    holes.push_back({op.along_offset_m, op.along_offset_m + op.width_m, op.sill_m, op.sill_m + op.height_m});
  }
  std::sort(holes.begin(), holes.end(), [](const Hole& p, const Hole& q) { return p.a < q.a; });

  // Face vertex order: P0 (0,0), P1 (L,0), P2 (L,H), P3 (0,H), then for each
  // hole A (a,s), B (b,s), C (b,t), D (a,t). Back-face copies follow the
  // front face with the same order.
  std::vector<FacePoint> face = {{0, 0}, {L, 0}, {L, H}, {0, H}};
  for (const auto& h : holes) {
    face.push_back({h.a, h.s});
    face.push_back({h.b, h.s});
    face.push_back({h.b, h.t});
    face.push_back({h.a, h.t});
  }
  const int n_face = static_cast<int>(face.size());
  const int P0 = 0, P1 = 1, P2 = 2, P3 = 3;
  auto A = [](int k) { return 4 + 4 * k; };
  auto B = [](int k) { return 5 + 4 * k; };
  auto C = [](int k) { return 6 + 4 * k; };
  auto D = [](int k) { return 7 + 4 * k; };

  Mesh mesh;
  for (int side = 0; side < 2; ++side) {
    const double v = side == 0 ? 0.0 : T;
    for (const auto& p : face) {
      mesh.vertices.push_back({o.x + p.u * eu.x + v * ev.x, o.y + p.u * eu.y + v * ev.y, p.z});
    }
  }
  auto emit = [&](int i, int j, int k, const Vec3& outward) {
    const Vec3 n = cross3(sub(mesh.vertices[j], mesh.vertices[i]), sub(mesh.vertices[k], mesh.vertices[i]));
    if (dot3(n, outward) < 0) std::swap(j, k);
    mesh.triangles.push_back({i, j, k});
  };
  auto quad = [&](int q0, int q1, int q2, int q3, const Vec3& outward) {
    emit(q0, q1, q2, outward);
    emit(q0, q2, q3, outward);
  };
  const Vec3 minus_u{-eu.x, -eu.y, 0}, minus_v{-ev.x, -ev.y, 0}, minus_z{0, 0, -1};

  // Long faces: the region above the bottom chain, plus pockets under
  // windows between consecutive ground points.
  std::vector<std::array<int, 3>> face_tris;
  std::vector<int> upper{P0};
  for (int k = 0; k < static_cast<int>(holes.size()); ++k) {
    upper.insert(upper.end(), {A(k), D(k), C(k), B(k)});
  }
  upper.insert(upper.end(), {P1, P2, P3});
  ear_clip(face, upper, face_tris);

  std::vector<std::pair<int, int>> ground;  // bottom segments between doors
  int ground_start = P0;
  std::vector<int> pending_windows;
  auto close_ground = [&](int ground_end) {
    ground.emplace_back(ground_start, ground_end);
    if (!pending_windows.empty()) {
      std::vector<int> pocket{ground_start, ground_end};
      for (auto it = pending_windows.rbegin(); it != pending_windows.rend(); ++it) {
        pocket.push_back(B(*it));
        pocket.push_back(A(*it));
      }
      ear_clip(face, pocket, face_tris);
    }
    pending_windows.clear();
  };
  for (int k = 0; k < static_cast<int>(holes.size()); ++k) {
    if (holes[k].s <= 0.0) {
      close_ground(A(k));
      ground_start = B(k);
    } else {
      pending_windows.push_back(k);
    }
  }
  close_ground(P1);

  for (const auto& t : face_tris) {
    emit(t[0], t[1], t[2], minus_v);
    emit(t[0] + n_face, t[1] + n_face, t[2] + n_face, ev);
  }

  const int bk = n_face;  // back offset
  quad(P3, P2, P2 + bk, P3 + bk, ez);        // top
  quad(P0, P3, P3 + bk, P0 + bk, minus_u);   // start end
  quad(P1, P2, P2 + bk, P1 + bk, eu);        // far end
  for (const auto& [g0, g1] : ground) quad(g0, g1, g1 + bk, g0 + bk, minus_z);
  for (int k = 0; k < static_cast<int>(holes.size()); ++k) {
    quad(A(k), D(k), D(k) + bk, A(k) + bk, eu);        // left jamb faces into the hole
    quad(B(k), C(k), C(k) + bk, B(k) + bk, minus_u);   // right jamb
    quad(D(k), C(k), C(k) + bk, D(k) + bk, minus_z);   // lintel
    if (holes[k].s > 0.0) quad(A(k), B(k), B(k) + bk, A(k) + bk, ez);  // sill
  }
  return mesh;
}

namespace {

void append_number(std::string& out, double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  out += buf;
}

}  // namespace

std::string export_obj(const Scene3D& scene, std::string_view config_hash) {
  std::string out = "# planvec " PLANVEC_VERSION "\n";
  out += "# config ";
  out += config_hash.empty() ? std::string_view("unknown") : config_hash;
  out += "\n";

  std::vector<const SceneWall*> walls;
  for (const auto& w : scene.walls) walls.push_back(&w);
  std::stable_sort(walls.begin(), walls.end(), [](const SceneWall* a, const SceneWall* b) { return a->id < b->id; });

  std::size_t base = 1;
  for (const SceneWall* w : walls) {
    const Mesh mesh = wall_mesh(*w);
    out += "g wall_" + std::to_string(w->id) + "\n";
    for (const auto& v : mesh.vertices) {
      out += "v ";
      append_number(out, v.x);
      out += ' ';
      append_number(out, v.y);
      out += ' ';
      append_number(out, v.z);
      out += '\n';
    }
    for (const auto& t : mesh.triangles) {
      out += "f " + std::to_string(base + t[0]) + ' ' + std::to_string(base + t[1]) + ' ' +
             std::to_string(base + t[2]) + '\n';
    }
    base += mesh.vertices.size();
  }
  return out;
}

}  // namespace planvec::recon
