#include "clv/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <thread>

int main() {
    int threads = int(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* e = std::getenv("CLV_THREADS")) threads = std::max(1, std::atoi(e));
    int failed = 0;
    for (const auto& c : clv::acceptance::run_all(threads)) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << c.detail << "\n";
        if (!c.pass) ++failed;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all 11 criteria pass") << "\n";
    return failed ? 1 : 0;
}
