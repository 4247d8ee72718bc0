#include <omp.h>

#include <chrono>
#include <iostream>

#include "iqk/sweep.hpp"

using namespace iqk;
using h_clock = std::chrono::high_resolution_clock;

// Times the serial reference sweep against the OpenMP one on the same range
// and checks that the rows match byte for byte.
int main(int argc, char** argv) {
    long dmin = -300, dmax = -3, p = 3;
    int jobs = omp_get_max_threads();
    if (argc > 1) dmin = std::stol(argv[1]);
    if (argc > 2) dmax = std::stol(argv[2]);
    if (argc > 3) p = std::stol(argv[3]);
    if (argc > 4) jobs = std::stoi(argv[4]);

    Options opts;
    std::vector<Int> discs = fundamental_discs_in(Int(dmin), Int(dmax));
    std::cout << "sweep range [" << dmin << ", " << dmax << "), p = " << p << ": " << discs.size()
              << " fields, " << jobs << " threads\n";

    auto t0 = h_clock::now();
    auto serial = run_sweep_serial(discs, Int(p), opts);
    auto t1 = h_clock::now();
    auto parallel = run_sweep_parallel(discs, Int(p), opts, jobs);
    auto t2 = h_clock::now();

    double ts = std::chrono::duration<double>(t1 - t0).count();
    double tp = std::chrono::duration<double>(t2 - t1).count();
    std::cout << "serial reference: " << ts << " s\n";
    std::cout << "openmp (" << jobs << " threads): " << tp << " s\n";
    std::cout << "speedup: " << (tp > 0 ? ts / tp : 0.0) << "x\n";

    if (serial != parallel) {
        std::cerr << "MISMATCH: parallel rows differ from the serial reference\n";
        return 1;
    }
    std::cout << "rows identical: yes\n";
    return 0;
}
