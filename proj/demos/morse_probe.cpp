// Classifies the origin for f(x) = x^3 and shows that every small linear
// perturbation f + t*x on the 1/k grid has only Morse critical points.

#include <iostream>

#include <jetcheck/jetcheck.hpp>

using namespace jetcheck;

int main() {
    PolynomialMap f(1, 1, 3);
    f.set_coeff(1, {3}, Rational(1));

    const std::vector<Rational> origin{Rational(0)};
    std::cout << "origin of x^3 is " << to_string(morse_classify(f, origin)) << "\n";

    const auto probe = morse_perturbation_probe(f, origin, {Rational(1)}, 12);
    std::cout << "probed " << probe.grid.size() << " perturbations, "
              << probe.degenerate_count << " kept a degenerate critical point\n";
    for (const Rational& t : probe.degenerate_ts)
        std::cout << "  degenerate at t = " << to_string(t) << "\n";
    return probe.degenerate_count == 0 ? 0 : 1;
}
