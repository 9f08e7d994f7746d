// Whitney-blend two random functions across an annulus of a gasket graph and
// print the energy ledger: per-term contributions and the final ratio C_WB.
#include <iostream>
#include <random>

#include "pdlab/pdlab.hpp"

int main() {
  pdlab::FamilySpec spec;
  spec.family = "gasket";
  spec.level = 3;
  const pdlab::Fixture fx = pdlab::generate_fixture(spec);
  const pdlab::WeightedGraph& g = fx.graph;
  for (const std::string& w : fx.warnings) std::cerr << "warning: " << w << "\n";

  std::mt19937_64 rng(0x5eedull);
  std::normal_distribution<double> nd(0.0, 1.0);
  pdlab::VertexFunction f(g.n()), h(g.n());
  for (int x = 0; x < g.n(); ++x) {
    f[x] = nd(rng);
    h[x] = nd(rng);
  }

  const pdlab::Ball b0{0, 0.25};
  pdlab::BlendResult blend = pdlab::whitney_blend(g, f, h, b0, 0.5, 1.5);
  const pdlab::BlendEnergyReport rep =
      pdlab::blend_energy_report(g, blend, pdlab::ScaleFunction::power(2.0));
  std::cout << pdlab::blend_to_json(blend, rep).dump(2) << "\n";
  return 0;
}
