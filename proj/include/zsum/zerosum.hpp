#pragma once

/**
 * @file zerosum.hpp
 * @brief Zero-sum subsequence decisions for the four length constraints.
 *
 * All decisions run a bounded-knapsack reachability DP over G. A row of the
 * DP is a subset of G packed as n1 machine words, word a holding the n2-bit
 * cyclic mask of the coset {(a, b)}. Adding g = (ga, gb) to a row rotates each
 * word by gb and moves it to slot a + ga, so exp(G) is limited to 64.
 */

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace zsum {

enum class Criterion {
    Any,          ///< forbids |T| >= 1          (Davenport constant D)
    Short,        ///< forbids 1 <= |T| <= exp   (eta)
    ExactExp,     ///< forbids |T| == exp        (s, Erdos-Ginzburg-Ziv)
    ExpMultiple,  ///< forbids |T| == k * exp    (s_{exp N})
};

inline constexpr Criterion kAllCriteria[] = {Criterion::Any, Criterion::Short, Criterion::ExpMultiple,
                                             Criterion::ExactExp};

/// "D", "eta", "s", "s_exp_mult".
std::string_view criterion_name(Criterion c) noexcept;
std::optional<Criterion> parse_criterion(std::string_view name) noexcept;

/// Whether a zero-sum subsequence of the given length is forbidden by c.
bool forbids_length(const Group& group, Criterion c, int length) noexcept;

inline constexpr int kMaxExponent = 64;

/// Packed subset of G, one word per coset of the second factor.
class GroupMask {
public:
    GroupMask() = default;
    explicit GroupMask(const Group& group) : words_(static_cast<std::size_t>(group.n1()), 0) {}

    bool test(Element g) const noexcept { return (words_[static_cast<std::size_t>(g.a)] >> g.b) & 1U; }
    void set(Element g) noexcept { words_[static_cast<std::size_t>(g.a)] |= std::uint64_t{1} << g.b; }
    bool any() const noexcept;
    int count() const noexcept;

    /// this |= (src + g).
    void or_shifted(const GroupMask& src, Element g, int n2) noexcept;

    friend bool operator==(const GroupMask&, const GroupMask&) = default;

private:
    std::vector<std::uint64_t> words_;
};

/// Table "some subsequence of length l sums to g" for l in [0, max_length].
class SumProfile {
public:
    SumProfile(const Group& group, int max_length);

    const Group& group() const noexcept { return group_; }
    int max_length() const noexcept { return static_cast<int>(rows_.size()) - 1; }

    bool reachable(int length, Element g) const noexcept
    {
        return length >= 0 && length <= max_length() && rows_[static_cast<std::size_t>(length)].test(g);
    }
    const GroupMask& row(int length) const { return rows_.at(static_cast<std::size_t>(length)); }

    /// Incorporates one more term.
    void append(Element g) noexcept;

    friend bool operator==(const SumProfile&, const SumProfile&) = default;

private:
    Group group_;
    std::vector<GroupMask> rows_;
};

/// Exact reachability table over rows [0, max_length]; one copy added at a time.
SumProfile build_profile(const Sequence& seq, int max_length);

/// True iff S has no zero-sum subsequence whose length c forbids.
bool lacks(const Sequence& seq, Criterion c);

/// S has a zero-sum subsequence of exactly this length.
bool has_zero_sum_of_length(const Sequence& seq, int length);

/// A zero-sum subsequence of the forbidden shape, or nullopt iff lacks(seq, c).
std::optional<Sequence> witness(const Sequence& seq, Criterion c);

/**
 * Incremental lacks-decision for one criterion, used by the searches.
 * Keeps only the rows the criterion needs: one row of all nonempty subset
 * sums for Any, rows 1..exp for Short / ExactExp, and rows indexed by length
 * modulo exp for ExpMultiple. Copyable; search stacks copy on push.
 */
class LacksTracker {
public:
    LacksTracker(const Group& group, Criterion c);

    /// Appends g; returns whether the extended sequence still lacks c.
    bool push(Element g) noexcept;
    bool lacking() const noexcept { return lacking_; }

private:
    std::uint64_t* row(int r) noexcept { return words_.data() + static_cast<std::size_t>(r * n1_); }

    Criterion criterion_;
    int n1_;
    int n2_;
    int rows_;
    std::vector<std::uint64_t> words_;  // rows_ + 1 rows; the last one is scratch
    bool lacking_ = true;
};

enum class ShiftLemmaCase { LengthMultiple = 1, PaddedShift = 2, LargeShortFree = 3 };

/**
 * Checks one of three shift facts on a concrete instance:
 *   LengthMultiple: S has a zero-sum subsequence of length `length` (exp | length)
 *                   iff g + S does; returns whether both decisions agree.
 *   PaddedShift:    S lacks Short; every g^v (g + S), v in [0, exp - 1], lacks ExactExp.
 *   LargeShortFree: v_g(S) >= floor((exp - 1) / 2) and S lacks ExactExp; some T | S with
 *                   |T| >= |S| - exp + 1 has (-g) + T lacking Short.
 * Throws std::invalid_argument naming the hypothesis when a precondition fails.
 */
bool verify_shift_lemma(const Sequence& seq, Element g, ShiftLemmaCase which, int length = 0);

}  // namespace zsum
