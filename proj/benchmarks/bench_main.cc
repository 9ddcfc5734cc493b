#include <benchmark/benchmark.h>

#include "grpdb/character_table.hpp"
#include "grpdb/families.hpp"
#include "grpdb/iso_hash.hpp"
#include "grpdb/pc_presentation.hpp"
#include "grpdb/pipeline.hpp"
#include "grpdb/query.hpp"
#include "grpdb/store.hpp"
#include "grpdb/subgroup_lattice.hpp"

using namespace grpdb;

namespace {

PermGroup named(const std::string& name) {
  for (const auto& g : families::standard_corpus())
    if (g.name == name) return PermGroup::generate(g.generators);
  throw std::out_of_range(name);
}

void BM_Enumerate(benchmark::State& state) {
  const auto gens = families::symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(PermGroup::generate(gens).order());
}
BENCHMARK(BM_Enumerate)->Arg(4)->Arg(5)->Arg(6);

void BM_SubgroupLattice(benchmark::State& state, const std::string& name) {
  const PermGroup g = named(name);
  for (auto _ : state) {
    const SubgroupEnumeration subs = all_subgroups(g);
    benchmark::DoNotOptimize(conjugacy_classes_of_subgroups(g, subs).classes.size());
  }
}
BENCHMARK_CAPTURE(BM_SubgroupLattice, S4, std::string("S4"));
BENCHMARK_CAPTURE(BM_SubgroupLattice, C2_5, std::string("C2^5"));
BENCHMARK_CAPTURE(BM_SubgroupLattice, S5, std::string("S5"));

void BM_CharacterTable(benchmark::State& state, const std::string& name) {
  const PermGroup g = named(name);
  const ClassPartition classes = conjugacy_classes(g);
  for (auto _ : state) benchmark::DoNotOptimize(character_table(g, classes).degrees.size());
}
BENCHMARK_CAPTURE(BM_CharacterTable, SL23, std::string("SL(2,3)"));
BENCHMARK_CAPTURE(BM_CharacterTable, C2_3_C7, std::string("C2^3:C7"));
BENCHMARK_CAPTURE(BM_CharacterTable, PSL27, std::string("PSL(2,7)"));

void BM_GroupHash(benchmark::State& state, const std::string& name) {
  const PermGroup g = named(name);
  for (auto _ : state) benchmark::DoNotOptimize(group_hash(g).value);
}
BENCHMARK_CAPTURE(BM_GroupHash, GL23, std::string("GL(2,3)"));
BENCHMARK_CAPTURE(BM_GroupHash, C2_6, std::string("C2^6"));

void BM_IsIsomorphicRegular(benchmark::State& state) {
  const PermGroup g = named("SL(2,3)");
  const PermGroup r = PermGroup::generate(families::regular(g));
  for (auto _ : state) benchmark::DoNotOptimize(is_isomorphic(g, r).status);
}
BENCHMARK(BM_IsIsomorphicRegular);

void BM_Presentation(benchmark::State& state, const std::string& name) {
  const PermGroup g = named(name);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_presentation(g).size());
}
BENCHMARK_CAPTURE(BM_Presentation, C60, std::string("C60"));
BENCHMARK_CAPTURE(BM_Presentation, GL23, std::string("GL(2,3)"));

void BM_ComputeAll(benchmark::State& state) {
  const PermGroup g = named("S4");
  for (auto _ : state) benchmark::DoNotOptimize(compute_all(make_stub("24.12", "S4", g)).computed);
}
BENCHMARK(BM_ComputeAll)->Unit(benchmark::kMillisecond);

void BM_Query(benchmark::State& state) {
  Store store;
  for (const auto& g : families::standard_corpus()) {
    const PermGroup p = PermGroup::generate(g.generators);
    if (p.order() <= 64) store.ingest(g.id, g.name, p);
  }
  store.compute(store.labels());
  const QueryAST q = parse_query("order:<=64 solvable:true has_subgroup(iso=C2^2,normal=true)");
  for (auto _ : state) benchmark::DoNotOptimize(run_query(store, q).labels.size());
}
BENCHMARK(BM_Query)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
