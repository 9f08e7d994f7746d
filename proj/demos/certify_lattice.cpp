// Certify a small lattice end to end: doubling, capacity, Poincare and
// cutoff-stability constants for three concentric balls, printed as the
// report JSON.
#include <iostream>

#include "pdlab/pdlab.hpp"

int main() {
  pdlab::FamilySpec spec;
  spec.family = "lattice_box";
  spec.level = 12;
  const pdlab::Fixture fx = pdlab::generate_fixture(spec);

  pdlab::CertifyOptions opt;
  opt.p = 2.0;
  opt.beta = 2.0;
  const int center = 6 + 12 * 6;  // vertex (6, 6)
  for (double r : {2.0, 3.0, 4.0}) opt.balls.push_back({center, r});

  pdlab::CertReport rep = pdlab::certify_graph(fx.graph, opt);
  rep.family = spec.family;
  rep.level = spec.level;
  std::cout << pdlab::cert_report_to_json(rep).dump(2) << "\n";
  return 0;
}
