// Walks n = 41 from a rational point to a reflecting witness.
#include <iostream>

#include "reflectum/descent.hpp"
#include "reflectum/reflect.hpp"

using namespace reflectum;

int main() {
  const Integer n = 41;
  auto sel = descent::selmer_group(n);
  std::cout << "S2(E_41) has dimension " << sel.dim << "\n";

  auto pts = ecurve::search_points(ecurve::CurveId::En(n), 100);
  auto bounds = descent::rank_bounds(n, pts, sel);
  std::cout << pts.size() << " points up to height 100, rank in [" << bounds.lower << ", " << bounds.upper << "]\n";
  for (const auto& p : pts) {
    if (p.y() > 0) std::cout << "  " << p.to_string() << " -> kappa " << descent::kappa(n, p).to_string() << "\n";
  }

  auto v = reflect::classify_22(n);
  std::cout << "verdict: " << reflect::to_string(v.status) << " (" << reflect::to_string(v.certificate->kind) << ")\n";
  if (const auto* w = v.witness()) {
    std::cout << "t = " << to_string(w->t) << ": 41 - t^2 = (" << to_string(w->u) << ")^2, 41 + t^2 = ("
              << to_string(w->v) << ")^2\n";
    std::cout << "z(t) = " << to_string(ecurve::zmap(n, w->t)) << "\n";
  }
}
