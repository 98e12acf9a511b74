#pragma once

/**
 * @file constants.hpp
 * @brief Zero-sum constants by exhaustive extremal search.
 *
 * The search enumerates multisets over G in nondecreasing element order and
 * extends a prefix only while it still lacks the criterion; since lacking is
 * hereditary, every lacking multiset is reached exactly once. The constant is
 * the maximal depth reached plus one.
 *
 * Symmetry pruning keeps only prefixes that are least in their orbit under a
 * group of bijections of G preserving the criterion. Because the i-th smallest
 * term of a superset never exceeds the i-th smallest term of a subset, a
 * sequence that is least in its orbit has all of its prefixes least in theirs,
 * so the pruning never loses an orbit.
 */

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"
#include "zsum/zerosum.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace zsum {

/// m + mn - 1, 2m + mn - 2, m + 2mn - 2, 2m + 2mn - 3 for D, eta, s_{exp N}, s.
int formula_value(const Group& group, Criterion c);

enum class Symmetry {
    None,
    Automorphisms,  ///< Aut(G)
    Affine,         ///< g -> alpha(g) + h; only for criteria invariant under shifts
    Auto,           ///< Automorphisms when |G| <= kAutomorphismOrderBound and |Aut(G)| <= 1000, else None
};

/// Shift-invariant criteria (zero-sum length a multiple of exp).
bool shift_invariant(Criterion c) noexcept;

struct SearchProgress {
    std::uint64_t nodes = 0;
    int best_depth = 0;
};

struct SearchOptions {
    Symmetry symmetry = Symmetry::Auto;
    bool collect_all = false;
    int workers = 1;
    /// 0 means unlimited.
    std::uint64_t node_budget = 0;
    /// Only sequences of exactly this length are collected; the search still
    /// runs to exhaustion. Empty means the maximal depth found.
    std::optional<int> collect_length;
    std::function<void(const SearchProgress&)> progress;
};

struct SearchReport {
    Group group;
    Criterion criterion;
    int computed_constant = 0;
    int formula_constant = 0;
    std::vector<Sequence> extremal_examples;
    std::uint64_t nodes_visited = 0;
    double elapsed_ms = 0.0;
    bool complete = true;

    bool matches_formula() const noexcept { return complete && computed_constant == formula_constant; }
};

/// {"group","criterion","computed","formula","extremals","nodes","ms"} plus "complete".
void to_json(nlohmann::json& j, const SearchReport& report);

/// Sorted symmetry maps as permutation tables, identity first; empty when None.
std::vector<std::vector<int>> symmetry_maps(const Group& group, Criterion c, Symmetry symmetry);

SearchReport longest_lacking(const Group& group, Criterion c, const SearchOptions& options = {});

struct DirectCheck {
    bool all_match = true;
    std::vector<SearchReport> reports;  ///< in kAllCriteria order
    std::vector<Criterion> mismatches;
};

DirectCheck check_direct_formulas(const Group& group, const SearchOptions& options = {});

}  // namespace zsum
