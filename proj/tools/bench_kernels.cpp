// OpenMP kernels (argument = thread count) against their serial references.
// verlinde_serial is the plain triple-sum formula, so it also differs algorithmically.
#include "mtc/pointed.hpp"
#include "mtc/simple_current.hpp"
#include "mtc/ty.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace mtc;

namespace {

QuadraticForm form_of(const char* d) { return form_from_descriptors(parse_descriptors(d)).q; }

const ModularData& weil_12()
{
    static const ModularData md = weil(form_of("2^2_1,3^1_+"));
    return md;
}

const ModularData& double_5()
{
    static const ModularData md = [] {
        auto G = FinAbGroup::parse("5");
        auto p = standard_pairing(G);
        return ty_double(ty_data(p, 1), forms_for_pairing(p).front());
    }();
    return md;
}

const FSymbols& assoc_2x2()
{
    static const FSymbols F = ty_associator(ty_data(standard_pairing(FinAbGroup::parse("2x2")), 1));
    return F;
}

const std::vector<QuadraticForm>& forms_4x2()
{
    static const std::vector<QuadraticForm> fs = [] {
        std::vector<QuadraticForm> out;
        for (auto& p : symmetric_pairings(FinAbGroup::parse("4x2")))
            if (p.is_nondegenerate())
                for (auto& q : forms_for_pairing(p)) out.push_back(q);
        return out;
    }();
    return fs;
}

void BM_oracle(benchmark::State& st)
{
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(brute_force_invariants(weil_12()));
}
void BM_oracle_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(brute_force_invariants_serial(weil_12()));
}

void BM_verlinde(benchmark::State& st)
{
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(verlinde(double_5()));
}
void BM_verlinde_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(verlinde_serial(double_5()));
}

void BM_pentagon(benchmark::State& st)
{
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(pentagon_check(assoc_2x2()));
}
void BM_pentagon_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(pentagon_check_serial(assoc_2x2()));
}

void BM_form_classes(benchmark::State& st)
{
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(form_classes(forms_4x2()));
}
void BM_form_classes_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(form_classes_serial(forms_4x2()));
}

void BM_enumerate_sc(benchmark::State& st)
{
    omp_set_num_threads(static_cast<int>(st.range(0)));
    auto sc = simple_currents(weil_12());
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_sc(weil_12(), sc));
}
void BM_enumerate_sc_serial(benchmark::State& st)
{
    auto sc = simple_currents(weil_12());
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_sc_serial(weil_12(), sc));
}

void BM_enum_dpm(benchmark::State& st)
{
    omp_set_num_threads(static_cast<int>(st.range(0)));
    auto q = form_of("2^2_1,3^1_+");
    for (auto _ : st) benchmark::DoNotOptimize(enum_dpm(q));
}
void BM_enum_dpm_serial(benchmark::State& st)
{
    auto q = form_of("2^2_1,3^1_+");
    for (auto _ : st) benchmark::DoNotOptimize(enum_dpm_serial(q));
}

}  // namespace

BENCHMARK(BM_oracle)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verlinde)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verlinde_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pentagon)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pentagon_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_form_classes)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_form_classes_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_sc)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_sc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enum_dpm)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enum_dpm_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
