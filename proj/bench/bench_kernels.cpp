// Serial reference against the OpenMP path for the three parallel kernels.

#include <benchmark/benchmark.h>

#include "tors5/classify.hpp"
#include "tors5/data_io.hpp"
#include "tors5/families.hpp"
#include "tors5/gl2.hpp"

using namespace tors5;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_aux_genus1(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(auxiliary_point_search(AuxCurve::C_genus1, 60, exec_of(st)));
}
BENCHMARK(BM_aux_genus1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_aux_cprime(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(auxiliary_point_search(AuxCurve::C_prime, 3000, exec_of(st)));
}
BENCHMARK(BM_aux_cprime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_lift_enumeration(benchmark::State& st) {
    MatGroup H = MatGroup::generate(5, {MatZn(5, 1, 0, 0, 2), MatZn(5, 1, 1, 0, 1)});
    for (auto _ : st) benchmark::DoNotOptimize(preimage_search(H, 2, SearchFilter{}, exec_of(st)));
}
BENCHMARK(BM_lift_enumeration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_database_scan(benchmark::State& st) {
    static const auto db = ingest_curves(std::string(TORS5_DATA_DIR) + "/curves.csv");
    for (auto _ : st) benchmark::DoNotOptimize(scan_database(db, exec_of(st), 40));
}
BENCHMARK(BM_database_scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
