#pragma once
// The four hypersurface examples with their actions, singular points and
// smoothing terms, written out directly (independent of the manifest reader).

#include <vector>

#include "qsmooth/pipeline.hpp"

namespace qsmooth::testing {

inline std::vector<geom::VerificationManifest> hypersurface_examples() {
  using geom::ActionSpec;
  using geom::AmbientSpace;
  std::vector<geom::VerificationManifest> ms(4);
  ms[0].name = "quintic";
  ms[0].ambient = AmbientSpace::projective(4);
  ms[0].variables = {"X0", "X1", "X2", "X3", "X4"};
  ms[0].equation = "X0^3*X1*X2 + X1^5 + X2^5 + X3^5 + X4^5";
  ms[0].action = ActionSpec{5, {0, 2, 3, 0, 1}};
  ms[0].claimed_singular_points = {{1, 0, 0, 0, 0}};
  ms[0].perturbation = "X0^5";
  ms[0].stated_quotient_points = 0;

  ms[1].name = "p1xp3";
  ms[1].ambient = AmbientSpace::product({1, 3});
  ms[1].variables = {"X0", "X1", "Y0", "Y1", "Y2", "Y3"};
  ms[1].equation = "(Y0*Y1^3 + Y2*(2*Y2^3 + Y3^3))*X0^2 + (Y0^4 + Y1^4 + Y2^4 + Y3^4)*X1^2";
  ms[1].action = ActionSpec{2, {0, 1, 0, 0, 1, 1}};
  ms[1].claimed_singular_points = {{1, 0, 1, 0, 0, 0}};
  ms[1].perturbation = "X0^2*Y0^4";
  ms[1].stated_quotient_points = 13;

  ms[2].name = "p2xp2";
  ms[2].ambient = AmbientSpace::product({2, 2});
  ms[2].variables = {"X0", "X1", "X2", "Y0", "Y1", "Y2"};
  ms[2].equation = "(Y0*Y1^2 + Y2^3)*X0^3 + (Y0^3 + 2*Y1^3 + Y2^3)*X1^3 + (Y0^3 + Y1^3 + 2*Y2^3)*X2^3";
  ms[2].action = ActionSpec{3, {0, 2, 1, 0, 0, 1}};
  ms[2].claimed_singular_points = {{1, 0, 0, 1, 0, 0}};
  ms[2].perturbation = "X0^3*Y0^3";
  ms[2].stated_quotient_points = 7;

  ms[3].name = "weighted";
  ms[3].ambient = AmbientSpace::weighted({1, 1, 1, 1, 2});
  ms[3].variables = {"X0", "X1", "X2", "X3", "X4"};
  ms[3].equation = "X0^2*X2*X3 + X1^4 + X2^4 + X3^4 + X4^2";
  ms[3].action = ActionSpec{2, {0, 0, 1, 1, 1}};
  ms[3].claimed_singular_points = {{1, 0, 0, 0, 0}};
  ms[3].perturbation = "X0^4";
  ms[3].stated_quotient_points = 4;
  return ms;
}

inline geom::HypersurfaceScheme scheme_of(const geom::VerificationManifest& m) {
  return geom::HypersurfaceScheme(*m.ambient, poly::parse(*m.equation, m.variables), m.variables);
}

}  // namespace qsmooth::testing
