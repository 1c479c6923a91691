// Decides whether functions on the plane factor through the symmetric map
// (x, y) -> (x + y, x*y), and prints the factorization when they do.

#include <polymap/fixtures.hpp>
#include <polymap/interpolation.hpp>
#include <polymap/parse.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace polymap;
  Morphism phi = fixture("sym2").morphism();
  std::vector<std::string> inputs(argv + 1, argv + argc);
  if (inputs.empty()) inputs = {"x^2 + y^2", "x^3*y^3 - x - y", "x - y", "(x - y)^2"};
  for (const auto& text : inputs) {
    Poly g = parse(text, phi.source().ambient());
    auto r = interpolate(phi, g, true);
    std::cout << text << ": ";
    if (r.ok())
      std::cout << *r.interpolant << "\n";
    else
      std::cout << to_string(r.status) << "\n";
  }
}
