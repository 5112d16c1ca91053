// (3,1)-reflecting numbers from points on x^3 + y^3 = N.
#include <iostream>

#include "reflectum/reflect.hpp"

using namespace reflectum;

int main() {
  for (long n = 1; n <= 20; ++n) {
    auto v = reflect::classify_31(n);
    std::cout << n << ": " << reflect::to_string(v.status);
    if (const auto* w = v.witness())
      std::cout << "  t = " << to_string(w->t) << ", u = " << to_string(w->u) << ", v = " << to_string(w->v);
    else if (v.obstruction)
      std::cout << "  " << reflect::to_string(v.obstruction->kind);
    else if (v.certificate)
      std::cout << "  " << reflect::to_string(v.certificate->kind);
    std::cout << "\n";
  }
}
