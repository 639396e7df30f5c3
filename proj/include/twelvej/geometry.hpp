#pragma once

#include <array>
#include <cmath>
#include <string>

#include "twelvej/errors.hpp"
#include "twelvej/spin.hpp"

namespace twelvej {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// V_ijk = J_i . (J_j x J_k); six times the volume of the spanned tetrahedron.
inline double triple_product(Vec3 a, Vec3 b, Vec3 c) { return dot(a, cross(b, c)); }

// Unsigned angle between two vectors, in [0, pi].
inline double angle_between(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

// Six edge lengths of a tetrahedron keyed by vertex pairs (vertices 0..3).
struct TetraEdges {
  double d01 = 0, d02 = 0, d03 = 0, d12 = 0, d13 = 0, d23 = 0;

  std::array<double, 6> as_array() const { return {d01, d02, d03, d12, d13, d23}; }
};

// Configurations closer to flat than this dimensionless margin are treated as
// sitting on the caustic.
inline constexpr double kFlatTolerance = 1e-9;

// Cayley-Menger determinant of the four vertices; 288 * volume^2 when the
// edges embed, negative when they do not.
inline double cayley_menger(const TetraEdges& e) {
  const double a = e.d01 * e.d01, b = e.d02 * e.d02, c = e.d03 * e.d03;
  const double d = e.d12 * e.d12, f = e.d13 * e.d13, g = e.d23 * e.d23;
  const double m[5][5] = {{0, 1, 1, 1, 1},
                          {1, 0, a, b, c},
                          {1, a, 0, d, f},
                          {1, b, d, 0, g},
                          {1, c, f, g, 0}};
  // direct LU with partial pivoting on the 5x5
  double lu[5][5];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) lu[i][j] = m[i][j];
  double det = 1.0;
  for (int k = 0; k < 5; ++k) {
    int piv = k;
    for (int i = k + 1; i < 5; ++i)
      if (std::fabs(lu[i][k]) > std::fabs(lu[piv][k])) piv = i;
    if (piv != k) {
      for (int j = 0; j < 5; ++j) std::swap(lu[k][j], lu[piv][j]);
      det = -det;
    }
    if (lu[k][k] == 0.0) return 0.0;
    det *= lu[k][k];
    for (int i = k + 1; i < 5; ++i) {
      double r = lu[i][k] / lu[k][k];
      for (int j = k; j < 5; ++j) lu[i][j] -= r * lu[k][j];
    }
  }
  return det;
}

// Dimensionless, scale-invariant caustic margin: the Cayley-Menger
// determinant over the product of the six edge lengths.
inline double cayley_menger_margin(const TetraEdges& e) {
  return cayley_menger(e) / (e.d01 * e.d02 * e.d03 * e.d12 * e.d13 * e.d23);
}

inline bool faces_ok(const TetraEdges& e) {
  auto tri = [](double a, double b, double c) {
    return a + b > c && b + c > a && c + a > b;
  };
  return tri(e.d01, e.d02, e.d12) && tri(e.d01, e.d03, e.d13) && tri(e.d02, e.d03, e.d23) &&
         tri(e.d12, e.d13, e.d23);
}

// One embedded tetrahedron: vertex 0 at the origin, the three vertex-edge
// vectors, the signed triple product (6 x volume, positive in the canonical
// frame), and the caustic diagnostics.
struct TetraGeometry {
  TetraEdges edges;
  Vec3 v1, v2, v3;  // vertex positions; v0 is the origin
  double triple = 0.0;
  double cm_det = 0.0;
  double margin = 0.0;
  bool caustic = false;
};

// Builds vertex coordinates from the six edge lengths. Canonical frame: v1
// on +z, v2 in the xz half-plane with x > 0, v3 with y >= 0, so the triple
// product of the returned vertex-edge vectors is nonnegative.
inline TetraGeometry embed_tetrahedron(const TetraEdges& e) {
  for (double d : e.as_array())
    if (!(d > 0)) throw ArgumentError("embed_tetrahedron: edge lengths must be positive");
  double cm = cayley_menger(e);
  double margin = cayley_menger_margin(e);
  if (!faces_ok(e) || margin < -kFlatTolerance)
    throw RegionError("embed_tetrahedron: geometrically forbidden edge set (Cayley-Menger " +
                          std::to_string(cm) + ")",
                      margin, margin);

  TetraGeometry t;
  t.edges = e;
  t.cm_det = cm;
  t.margin = margin;
  t.caustic = margin <= kFlatTolerance;

  t.v1 = {0, 0, e.d01};
  double z2 = (e.d01 * e.d01 + e.d02 * e.d02 - e.d12 * e.d12) / (2 * e.d01);
  double x2sq = e.d02 * e.d02 - z2 * z2;
  double x2 = std::sqrt(std::max(0.0, x2sq));
  t.v2 = {x2, 0, z2};
  double z3 = (e.d01 * e.d01 + e.d03 * e.d03 - e.d13 * e.d13) / (2 * e.d01);
  double x3 = (0.5 * (e.d02 * e.d02 + e.d03 * e.d03 - e.d23 * e.d23) - z2 * z3) / x2;
  double y3sq = e.d03 * e.d03 - x3 * x3 - z3 * z3;
  double y3 = std::sqrt(std::max(0.0, y3sq));
  t.v3 = {x3, y3, z3};
  t.triple = triple_product(t.v1, t.v2, t.v3);
  return t;
}

// Pairwise distances of the embedded vertices, for reconstruction checks.
inline TetraEdges reconstructed_edges(const TetraGeometry& t) {
  TetraEdges e;
  e.d01 = norm(t.v1);
  e.d02 = norm(t.v2);
  e.d03 = norm(t.v3);
  e.d12 = norm(t.v2 - t.v1);
  e.d13 = norm(t.v3 - t.v1);
  e.d23 = norm(t.v3 - t.v2);
  return e;
}

// Exterior dihedral angles psi = pi - interior, keyed like the edges:
// (01, 02, 03, 12, 13, 23). Undefined on flat tetrahedra.
inline std::array<double, 6> exterior_dihedrals(const TetraGeometry& t) {
  if (t.caustic)
    throw RegionError("exterior_dihedrals: undefined on a flat (caustic) tetrahedron",
                      t.margin, t.margin);
  const Vec3 v[4] = {{0, 0, 0}, t.v1, t.v2, t.v3};
  static constexpr int edge[6][4] = {// i, j, k, l: edge (i,j), opposite vertices (k,l)
                                     {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                     {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
  std::array<double, 6> psi{};
  for (int n = 0; n < 6; ++n) {
    Vec3 u = v[edge[n][1]] - v[edge[n][0]];
    double uu = dot(u, u);
    Vec3 p = v[edge[n][2]] - v[edge[n][0]];
    Vec3 q = v[edge[n][3]] - v[edge[n][0]];
    p = p - (dot(p, u) / uu) * u;
    q = q - (dot(q, u) / uu) * u;
    psi[n] = M_PI - std::atan2(norm(cross(p, q)), dot(p, q));
  }
  return psi;
}

// The nine semiclassical edge lengths of the butterfly: the five spins plus
// the four intermediates. Note |J1 + J5| = J346 (the "15" edge).
struct EdgeSet {
  double l1 = 0, l3 = 0, l4 = 0, l5 = 0, l6 = 0;
  double l34 = 0, l346 = 0, l13 = 0, l135 = 0;
};

// Tetrahedron 1, the (J4, J6, J34) wing: edges J3, J34, J346, J4, J135, J6.
inline TetraEdges tetra1_edges(const EdgeSet& s) {
  return TetraEdges{s.l3, s.l34, s.l346, s.l4, s.l135, s.l6};
}

// Tetrahedron 2, the (J1, J5, J13) wing: edges J3, J346, J1, J135, J13, J5.
inline TetraEdges tetra2_edges(const EdgeSet& s) {
  return TetraEdges{s.l3, s.l346, s.l1, s.l135, s.l13, s.l5};
}

struct AllowedRegion {
  bool allowed = false;
  double margin1 = 0.0;  // tetrahedron 1 (the 3-4-34 wing)
  double margin2 = 0.0;  // tetrahedron 2 (the 1-5-13 wing)
};

// Classically allowed iff both tetrahedra embed with positive Cayley-Menger
// determinant; the margins quantify the distance from the caustic.
inline AllowedRegion classically_allowed(const EdgeSet& s) {
  AllowedRegion r;
  TetraEdges t1 = tetra1_edges(s), t2 = tetra2_edges(s);
  r.margin1 = cayley_menger_margin(t1);
  r.margin2 = cayley_menger_margin(t2);
  r.allowed = r.margin1 > 0 && r.margin2 > 0 && faces_ok(t1) && faces_ok(t2);
  return r;
}

enum class Orientation { Opposite, Same };  // tetrahedra on opposite/same side of the shared face

struct J4Solutions {
  Vec3 plus, minus;  // the two mirror-image solutions (gamma = +/-)
  bool caustic = false;
};

// Solves the three conditions J4.J4 = J4^2, J4.J3 = (J34^2-J4^2-J3^2)/2,
// J4.J135 = (J4^2+J135^2-J6^2)/2 by expanding J4 in the basis
// (J3, J135, J3 x J135). Here j135 is the shared-face edge vector running
// along J4 + J6, i.e. opposite to the quantum J1+J3+J5 direction.
inline J4Solutions solve_J4(Vec3 j3, Vec3 j135, double J4, double J34, double J6) {
  const double g11 = dot(j3, j3), g12 = dot(j3, j135), g22 = dot(j135, j135);
  Vec3 n = cross(j3, j135);
  const double nn = dot(n, n);
  if (nn < 1e-24 * g11 * g22)
    throw ArgumentError("solve_J4: J3 and J135 are linearly dependent");

  const double c1 = 0.5 * (J34 * J34 - J4 * J4 - g11);
  const double c2 = 0.5 * (J4 * J4 + g22 - J6 * J6);
  const double det = g11 * g22 - g12 * g12;
  const double alpha = (c1 * g22 - c2 * g12) / det;
  const double beta = (g11 * c2 - g12 * c1) / det;
  Vec3 w = alpha * j3 + beta * j135;
  double gamma_sq = (J4 * J4 - dot(w, w)) / nn;
  double rel = gamma_sq * nn / (J4 * J4);  // out-of-plane fraction of J4^2
  if (rel < -kFlatTolerance)
    throw RegionError("solve_J4: no real solution (classically forbidden)", rel, rel);

  J4Solutions out;
  out.caustic = rel <= kFlatTolerance;
  double gamma = std::sqrt(std::max(0.0, gamma_sq));
  out.plus = w + gamma * n;
  out.minus = w - gamma * n;
  return out;
}

// The five vectors of a butterfly configuration (closure J1+J3+J4+J5+J6 = 0),
// in one orientation class.
struct VectorConfig {
  Vec3 J1, J3, J4, J5, J6;
  Orientation orientation = Orientation::Opposite;

  Vec3 J13() const { return J1 + J3; }
  Vec3 J34() const { return J3 + J4; }
  Vec3 J346() const { return J3 + J4 + J6; }
  Vec3 J135() const { return J1 + J3 + J5; }
  Vec3 closure() const { return J1 + J3 + J4 + J5 + J6; }
};

// Builds the vector configuration: embeds tetrahedron 2 in the canonical
// frame (J3 on +z, the shared face in the xz-plane), solves for J4, and
// derives J6 so that closure holds by construction.
inline VectorConfig butterfly_config(const EdgeSet& s, Orientation orientation) {
  TetraGeometry t2 = embed_tetrahedron(tetra2_edges(s));
  Vec3 j3 = t2.v1;
  Vec3 e135 = t2.v2 - t2.v1;  // shared-face edge of length J135, along J4+J6
  J4Solutions sols = solve_J4(j3, e135, s.l4, s.l34, s.l6);

  Vec3 nshared = cross(j3, t2.v2);
  double side2 = dot(nshared, t2.v3);  // tetrahedron 2 apex side of the face
  double side_plus = dot(nshared, sols.plus);
  bool plus_is_same = (side_plus > 0) == (side2 > 0);
  Vec3 j4 = (orientation == Orientation::Same) == plus_is_same ? sols.plus : sols.minus;

  VectorConfig cfg;
  cfg.orientation = orientation;
  cfg.J3 = j3;
  cfg.J4 = j4;
  cfg.J1 = -t2.v3;
  cfg.J5 = t2.v3 - t2.v2;
  cfg.J6 = e135 - j4;
  return cfg;
}

struct ThetaPhi {
  double theta = 0, phi1 = 0, phi4 = 0;
};

// theta between J1 and J4 (defined whenever both are nonzero).
inline double theta_of(const VectorConfig& c) { return angle_between(c.J1, c.J4); }

// theta = angle(J1, J4); phi1 = pi - angle between the (J1,J4) and (J1,J5)
// planes; phi4 = pi - angle between the (J4,J1) and (J4,J6) planes.
inline ThetaPhi angles_theta_phi(const VectorConfig& c) {
  auto plane_normal = [](Vec3 a, Vec3 b, const char* name) {
    Vec3 n = cross(a, b);
    if (dot(n, n) < 1e-24 * dot(a, a) * dot(b, b))
      throw ArgumentError(std::string("angles_theta_phi: collinear pair ") + name);
    return n;
  };
  ThetaPhi r;
  r.theta = theta_of(c);
  r.phi1 = M_PI - angle_between(plane_normal(c.J1, c.J4, "(J1, J4)"),
                                plane_normal(c.J1, c.J5, "(J1, J5)"));
  r.phi4 = M_PI - angle_between(plane_normal(c.J4, c.J1, "(J4, J1)"),
                                plane_normal(c.J4, c.J6, "(J4, J6)"));
  return r;
}

}  // namespace twelvej
