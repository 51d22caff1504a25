// Prints the harmonic representatives of positive H1(g-, W) for the small modules.
#include "sl3ext/cochain/cochain.hpp"

#include <iostream>

using namespace sl3ext;

int main() {
    for (auto w : {cochain::module_R(), cochain::module_S(), cochain::module_adjoint(), cochain::module_so()}) {
        cochain::Complex cx(w);
        auto hs = cochain::harmonic_h1(cx);
        std::cout << w.name() << ": dim " << cochain::total_dim(hs) << "\n";
        for (auto& h : hs)
            for (auto& v : h.basis) {
                std::cout << "  degree " << h.degree << ":";
                for (auto& x : v) std::cout << " " << x.str();
                std::cout << "\n";
            }
    }
}
