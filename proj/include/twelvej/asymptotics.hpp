#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "twelvej/dmatrix.hpp"
#include "twelvej/geometry.hpp"
#include "twelvej/wigner.hpp"

namespace twelvej {

inline EdgeSet edge_set(const Symbol12Args& a) {
  EdgeSet s;
  s.l1 = semiclassical_length(a.j1).value;
  s.l3 = semiclassical_length(a.j3).value;
  s.l4 = semiclassical_length(a.j4).value;
  s.l5 = semiclassical_length(a.j5).value;
  s.l6 = semiclassical_length(a.j6).value;
  s.l34 = semiclassical_length(a.j34).value;
  s.l346 = semiclassical_length(a.j346).value;
  s.l13 = semiclassical_length(a.j13).value;
  s.l135 = semiclassical_length(a.j135).value;
  return s;
}

// A Ponzano-Regge phase S = sum over the six edges of (j_e + 1/2) psi_e.
struct PRPhase {
  double S = 0.0;
  std::array<std::pair<double, double>, 6> terms{};  // (edge length, exterior dihedral)
};

// edge_spins keyed like TetraEdges: (01, 02, 03, 12, 13, 23). The spin of
// each edge must reproduce its length as j + 1/2.
inline PRPhase pr_phase(const TetraGeometry& t, const std::array<Spin, 6>& edge_spins) {
  auto lengths = t.edges.as_array();
  for (int i = 0; i < 6; ++i) {
    double expect = semiclassical_length(edge_spins[i]).value;
    if (std::fabs(lengths[i] - expect) > 1e-9 * std::max(1.0, expect))
      throw ArgumentError("pr_phase: edge length does not equal j + 1/2 for mapped spin");
  }
  auto psi = exterior_dihedrals(t);  // throws on caustic
  PRPhase out;
  for (int i = 0; i < 6; ++i) {
    out.terms[i] = {lengths[i], psi[i]};
    out.S += lengths[i] * psi[i];
  }
  return out;
}

// Tetrahedron of the 6j symbol {a b c; d e f}: the four triads are its faces
// and (a,d), (b,e), (c,f) are opposite edge pairs.
inline TetraEdges tetra_edges_for_6j(const std::array<Spin, 6>& j) {
  auto L = [](Spin s) { return semiclassical_length(s).value; };
  return TetraEdges{L(j[0]), L(j[1]), L(j[5]), L(j[2]), L(j[4]), L(j[3])};
}

// Ponzano-Regge approximation of a single 6j symbol,
//   {6j} ~ cos(S + pi/4) / sqrt(2 pi |V|),
// with V the triple product (six times the volume) of its tetrahedron.
inline double pr_6j(const std::array<Spin, 6>& j) {
  TetraGeometry t = embed_tetrahedron(tetra_edges_for_6j(j));
  PRPhase p = pr_phase(t, {j[0], j[1], j[5], j[2], j[4], j[3]});
  return std::cos(p.S + M_PI / 4) / std::sqrt(2 * M_PI * std::fabs(t.triple));
}

// Everything the asymptotic 12j evaluation produces, kept for diagnostics:
// value = prefactor * (term1 + (-1)^{2s} term2).
struct Asym12jResult {
  double value = 0.0;
  double term1 = 0.0, term2 = 0.0;
  double prefactor = 0.0;
  double theta1 = 0.0, theta2 = 0.0;
  double phi1_1 = 0.0, phi1_2 = 0.0;
  double phi4_1 = 0.0, phi4_2 = 0.0;
  double S1 = 0.0, S2 = 0.0;
  double margin1 = 0.0, margin2 = 0.0;
  bool near_caustic = false;
};

// Asymptotic 12j symbol with one small spin s2:
//
//   (-1)^{j1+2j3+j4+j346+j135+j5+j6+3s+mu} / (4 pi sqrt([j12][j24]) sqrt|V135 V346|)
//     * { d^s_{nu mu}(theta^(1)) cos[S1+S2-mu phi1^(1)+nu phi4^(1)+pi/2]
//         + (-1)^{2s} d^s_{nu mu}(theta^(2)) cos[S1-S2-mu phi1^(2)+nu phi4^(2)] }
//
// with mu = j12-j1, nu = j24-j4. Superscript (1) quantities come from the
// opposite-side vector configuration, (2) from the same-side one. The phase,
// the dimension factor sqrt([j12][j24]) and the sign of the mu phi1 terms are
// pinned against the exact engine: at s = 0 the formula must reduce exactly
// to the zero-argument identity times the Ponzano-Regge product, and for
// s > 0 the remaining binary choices are fixed by agreement with exact
// sweeps at both integer and half-integer spins (see the validation suite).
inline Asym12jResult asym12j(const Symbol12Args& a, double near_caustic_margin = 1e-3) {
  const int ts = a.s2.twice, tmu = a.twice_mu(), tnu = a.twice_nu();
  if (std::abs(tmu) > ts)
    throw ArgumentError("asym12j: |mu| = |j12 - j1| exceeds s");
  if (std::abs(tnu) > ts)
    throw ArgumentError("asym12j: |nu| = |j24 - j4| exceeds s");

  EdgeSet es = edge_set(a);
  AllowedRegion reg = classically_allowed(es);
  if (!reg.allowed)
    throw RegionError("asym12j: classically forbidden configuration", reg.margin1, reg.margin2);

  TetraGeometry t1 = embed_tetrahedron(tetra1_edges(es));
  TetraGeometry t2 = embed_tetrahedron(tetra2_edges(es));
  PRPhase p1 = pr_phase(t1, {a.j3, a.j34, a.j346, a.j4, a.j135, a.j6});
  PRPhase p2 = pr_phase(t2, {a.j3, a.j346, a.j1, a.j135, a.j13, a.j5});

  VectorConfig opp = butterfly_config(es, Orientation::Opposite);
  VectorConfig same = butterfly_config(es, Orientation::Same);
  ThetaPhi ang1 = angles_theta_phi(opp);
  ThetaPhi ang2 = angles_theta_phi(same);

  const double mu = 0.5 * tmu, nu = 0.5 * tnu;
  const double d1 = little_d(DIndex(a.s2, tnu, tmu), ang1.theta);
  const double d2 = little_d(DIndex(a.s2, tnu, tmu), ang2.theta);

  long texp = a.j1.twice + 2L * a.j3.twice + a.j4.twice + a.j346.twice + a.j135.twice +
              a.j5.twice + a.j6.twice + 2L * (ts / 2);
  if (texp % 2 != 0) throw SelectionRuleError("asym12j: non-integer phase exponent");
  const double sign = (((texp / 2) % 2 + 2) % 2 == 0) ? 1.0 : -1.0;
  const double dims = static_cast<double>(a.j12.twice + 1) * static_cast<double>(a.j24.twice + 1);

  Asym12jResult r;
  r.S1 = p1.S;
  r.S2 = p2.S;
  r.theta1 = ang1.theta;
  r.theta2 = ang2.theta;
  r.phi1_1 = ang1.phi1;
  r.phi1_2 = ang2.phi1;
  r.phi4_1 = ang1.phi4;
  r.phi4_2 = ang2.phi4;
  r.margin1 = reg.margin1;
  r.margin2 = reg.margin2;
  r.near_caustic = std::min(reg.margin1, reg.margin2) < near_caustic_margin;
  r.prefactor =
      sign / (4 * M_PI * std::sqrt(dims) * std::sqrt(std::fabs(t2.triple * t1.triple)));
  r.term1 = d1 * std::cos(r.S1 + r.S2 - mu * r.phi1_1 + nu * r.phi4_1 + M_PI / 2);
  r.term2 = d2 * std::cos(r.S1 - r.S2 - mu * r.phi1_2 + nu * r.phi4_2);
  const double relsign = (ts % 2 == 0) ? 1.0 : -1.0;  // (-1)^{2s}
  r.value = r.prefactor * (r.term1 + relsign * r.term2);
  return r;
}

}  // namespace twelvej
