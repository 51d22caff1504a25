// Usage: sample_case_dossier [CASE]   (default II0)
#include "sl3ext/casebook/casebook.hpp"

#include <iostream>

using namespace sl3ext;

int main(int argc, char** argv) {
    std::string name = argc > 1 ? argv[1] : "II0";
    auto id = casebook::parse_case(name);
    if (!id) {
        std::cerr << "unknown case " << name << "\n";
        return 2;
    }
    std::cout << casebook::dossier(*id, {}, false).dump(2) << "\n";
}
