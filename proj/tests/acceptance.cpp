// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <nilcdga/nilcdga.hpp>

#include <chrono>
#include <iostream>

int main() {
    auto start = std::chrono::steady_clock::now();
    auto results = nilcdga::acceptance_suite();
    int failed = 0;
    for (const auto& c : results) {
        std::cout << (c.pass() ? "PASS" : "FAIL") << ' ' << c.number << ' ' << c.name;
        if (!c.pass()) {
            ++failed;
            std::cout << " -- " << c.witness();
        }
        std::cout << '\n';
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << results.size() - static_cast<std::size_t>(failed) << '/' << results.size() << " criteria passed in "
              << ms << " ms\n";
    return failed == 0 ? 0 : 1;
}
