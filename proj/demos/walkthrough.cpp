// Builds the canonical degenerate instance for n = 2, q = 1, p = 1 with corank 1,
// runs the full verification, and prints the pieces one by one.

#include <iostream>

#include <jetcheck/jetcheck.hpp>

using namespace jetcheck;

static void print_matrix(const RationalMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j)
            std::cout << (j ? " " : "  ") << to_string(m.at(i, j));
        std::cout << "\n";
    }
}

int main() {
    const auto inst = degenerate_witness(2, 1, 1, 1);
    const auto d = jet_dims(2, 1, 1);
    std::cout << "jet space dimension: " << d.dim_jet << "\n";
    std::cout << "top fiber dimension: " << d.dim_fiber[1] << "\n\n";

    const auto m = assemble_matrix(inst.a, inst.V, inst.z0);
    std::cout << "assembled matrix (" << m.rows() << " x " << m.cols() << "):\n";
    print_matrix(m);

    const auto rep = verify_core(inst);
    std::cout << "\nrank " << rep.rank << ", corank " << rep.c << ", theta " << rep.theta
              << "\n";
    std::cout << "minimal submatrix rows:";
    for (int r : rep.mstar.rows) std::cout << " " << r;
    std::cout << "\nminimal submatrix cols:";
    for (int c : rep.mstar.cols) std::cout << " " << c;
    std::cout << "\nstaircase path:";
    for (const auto& [r, c] : rep.path) std::cout << " (" << r << "," << c << ")";
    std::cout << "\ndet of the minimal submatrix: " << to_string(rep.det_mstar) << "\n";
    std::cout << "verdict: " << (rep.pass ? "pass" : "fail") << "\n";
    return rep.pass ? 0 : 1;
}
