// Compares the serial reference kernels against the OpenMP ones: rational
// matrix multiplication, and a falsification sweep that shards its trial
// range. Results must agree exactly; timings are informational.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "spt/matrix.hpp"
#include "spt/preservers.hpp"
#include "spt/rng.hpp"

using namespace spt;

namespace {

template <typename F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());

    Rng rng(1);
    for (std::size_t n : {40, 80, 120}) {
        RMatrix a = rng.next_matrix(n, n);
        RMatrix b = rng.next_matrix(n, n);
        RMatrix rs, rp;
        double ts = timed([&] { rs = mul_serial(a, b); });
        double tp = timed([&] { rp = mul_parallel(a, b); });
        std::printf("matmul %3zux%-3zu  serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n",
                    n, n, ts, tp, ts / tp, rs == rp ? "exact match" : "MISMATCH");
        if (!(rs == rp)) return 1;
    }

    // falsification sweep: transpose map on M_3 never runs out of failures,
    // a structured X A Y map never produces any; both shard deterministically
    std::printf("\n");
    PolyCone o3 = PolyCone::orthant(3);
    LinearMap good = from_xay(RMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, RMatrix::identity(3));
    LinearMap bad = transpose_map(3);
    for (std::size_t trials : {100, 400}) {
        double tg = timed([&] { falsify_preserver(good, o3, o3, trials, 7); });
        auto serial_trials = [&](const LinearMap& l) {
            // same trial set evaluated without the parallel scan
            for (std::size_t i = 0; i < trials; ++i) {
                RMatrix s = sample_sp(3, 3, o3, o3, Rng::derive(7, i));
                classify_sp(apply(l, s), o3, o3);
            }
        };
        double ts = timed([&] { serial_trials(good); });
        auto ce_par = falsify_preserver(bad, o3, o3, trials, 7);
        std::printf("falsify %4zu trials  serial %7.3fs  parallel %7.3fs  speedup %5.2fx\n",
                    trials, ts, tg, ts / tg);
        if (!ce_par) {
            std::printf("expected a transpose counterexample\n");
            return 1;
        }
    }

    return 0;
}
