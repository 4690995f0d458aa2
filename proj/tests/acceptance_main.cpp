// Acceptance runner: executes the verification suite and prints one pass/fail
// line per criterion. With numeric arguments it runs only those criteria
// (used by ctest to report them individually).

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "dynavg/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 10) {
            std::cerr << "usage: " << argv[0] << " [criterion-id...]  (ids 1..10)\n";
            return 2;
        }
        only.push_back(id);
    }

    const auto results = dynavg::run_acceptance_suite(only);
    for (const auto& r : results) std::cout << dynavg::format_criterion_line(r) << "\n";
    return dynavg::all_passed(results) ? 0 : 1;
}
