#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "grpdb/element_set.hpp"
#include "grpdb/perm_group.hpp"

namespace grpdb {

inline constexpr std::size_t kChainSearchBudget = 100000;

/// G = terms[0] >= terms[1] >= ... >= terms[n] = 1, each term normal in the one above
/// with cyclic quotient of order relative_orders[i].
struct SubnormalChain {
  std::vector<ElementSet> terms;
  std::vector<std::uint64_t> relative_orders;

  std::size_t length() const noexcept { return relative_orders.size(); }
};

/// Exponent vector over the generators; every element has the unique normal form
/// g_1^e_1 ... g_n^e_n with 0 <= e_i < r_i.
using PcWord = std::vector<std::uint32_t>;

/// A polycyclic presentation. g_1 generates the top quotient and terms[i] of the
/// underlying chain is <g_{i+1}, ..., g_n> (0-based), so a bottom-up numbering H_i
/// corresponds to terms[n - i].
struct PcPresentation {
  std::vector<Elt> generators;
  std::vector<std::uint64_t> relative_orders;
  /// power_relations[i] = g_i^{r_i}, supported on generators after i.
  std::vector<PcWord> power_relations;
  /// conjugation_relations[i][j] = g_j^{g_i} = g_i^-1 g_j g_i for j > i; entries with j <= i are empty.
  std::vector<std::vector<PcWord>> conjugation_relations;
  /// Element orders of the generators in G.
  std::vector<std::uint64_t> generator_orders;
  /// "minimal", "greedy" or "derived".
  std::string method;

  std::size_t size() const noexcept { return generators.size(); }
  std::uint64_t order() const;
  /// `⟨a, b | a^2, b^3, b^a = b^2⟩`; commuting pairs are left implicit.
  std::string str() const;
};

struct PresentationScore {
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  std::size_t c3 = 0;
  std::size_t c4 = 0;

  /// Positive when this score is better.
  int compare(const PresentationScore& other) const;
  friend bool operator==(const PresentationScore&, const PresentationScore&) = default;
};

bool is_solvable(const PermGroup& group);

/// Subgroups K normal in H with H/K cyclic and K != H, sorted by element set.
/// Throws BudgetExceeded when H/H' has more than `budget` subgroups.
std::vector<ElementSet> cyclic_quotient_kernels(const PermGroup& group, const ElementSet& h,
                                                std::size_t budget = 4096);

/// Every chain of minimal length, in a deterministic order. Empty when the search
/// visits more than `budget` partial chains. Throws DomainError for non-solvable G.
std::vector<SubnormalChain> minimal_chains(const PermGroup& group, std::size_t budget = kChainSearchBudget);

/// Normal form of `x` relative to generators of a chain (first element peeled first).
PcWord decompose(const PermGroup& group, const std::vector<Elt>& generators,
                 const std::vector<std::uint64_t>& relative_orders, const std::vector<ElementSet>& terms, Elt x);

PcPresentation presentation_from_chain(const PermGroup& group, const SubnormalChain& chain);

PresentationScore score(const PcPresentation& p);

/// Best presentation over all minimal chains, else a greedy descent, else a refinement
/// of the derived series. Throws DomainError for non-solvable G.
PcPresentation optimize_presentation(const PermGroup& group, std::size_t budget = kChainSearchBudget);

/// Chain of a presentation: terms[i] = <g_{i+1}, ..., g_n>.
SubnormalChain chain_of(const PermGroup& group, const PcPresentation& p);

/// Collector: normal form of `word` * g_j.
PcWord collect_generator(const PcPresentation& p, PcWord word, std::size_t j);
PcWord collect(const PcPresentation& p, PcWord a, const PcWord& b);

/// Regular permutation representation of the presented group, built by collection.
PermGroup reconstruct(const PcPresentation& p);

/// Reconstructs the presented group and checks that g_i -> generators[i] is an
/// isomorphism onto `group`.
bool verify_presentation(const PermGroup& group, const PcPresentation& p);

}  // namespace grpdb
