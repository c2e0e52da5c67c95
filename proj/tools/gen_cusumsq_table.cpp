// Regenerates the frozen critical-value table in src/stability.cpp for the
// CUSUM-of-squares band. For each table index q = m/2 - 1 this simulates the
// null distribution of  D = max_r |S_r - r/m|  where S_r is the normalized
// cumulated sum of squares of m iid standard normals, and records the 95th
// and 99th percentiles of D. Output is the C++ initializer for the table.
//
// Usage: gen_cusumsq_table [reps_small] [reps_large] > table.inc

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <random>
#include <thread>
#include <vector>

#include "goodwin/random.hpp"

namespace {

struct Row {
    double index;  // m/2 - 1
    double c95;
    double c99;
};

double percentile(std::vector<double>& v, double q) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (idx > 0) --idx;
    if (idx >= n) idx = n - 1;
    return v[idx];
}

Row simulate(std::size_t m, std::size_t reps, std::uint64_t seed, std::uint64_t task) {
    auto rng = goodwin::task_rng(seed, task);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> dmax(reps);
    std::vector<double> sq(m);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double w = normal(rng);
            sq[i] = w * w;
            total += sq[i];
        }
        double cum = 0.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            cum += sq[i];
            const double dev = std::fabs(cum / total -
                                         static_cast<double>(i + 1) / static_cast<double>(m));
            worst = std::max(worst, dev);
        }
        dmax[rep] = worst;
    }
    Row row;
    row.index = static_cast<double>(m) / 2.0 - 1.0;
    row.c95 = percentile(dmax, 0.95);
    row.c99 = percentile(dmax, 0.99);
    return row;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t reps_small = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 500000;
    const std::size_t reps_large = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200000;
    const std::uint64_t seed = 20260824ULL;

    std::vector<std::size_t> grid;  // values of q = m/2 - 1, so m = 2(q + 1)
    for (std::size_t q = 1; q <= 60; ++q) grid.push_back(q);
    for (std::size_t q = 65; q <= 100; q += 5) grid.push_back(q);
    for (std::size_t q = 110; q <= 150; q += 10) grid.push_back(q);
    grid.push_back(175);
    grid.push_back(200);
    grid.push_back(250);

    std::vector<std::future<Row>> jobs;
    jobs.reserve(grid.size());
    for (std::size_t t = 0; t < grid.size(); ++t) {
        const std::size_t q = grid[t];
        const std::size_t m = 2 * (q + 1);
        const std::size_t reps = q <= 60 ? reps_small : reps_large;
        jobs.push_back(std::async(std::launch::async, simulate, m, reps, seed, t));
    }

    std::printf("// q = m/2 - 1, then the 95%% and 99%% two-sided crossing values.\n");
    std::printf("// Generated by tools/gen_cusumsq_table.cpp (seed %llu).\n",
                static_cast<unsigned long long>(seed));
    for (std::size_t t = 0; t < grid.size(); ++t) {
        const Row row = jobs[t].get();
        std::printf("    {%.1f, %.5f, %.5f},\n", row.index, row.c95, row.c99);
    }
    return 0;
}
