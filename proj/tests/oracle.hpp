#pragma once

// Brute-force reference implementations. Nothing here touches the DP tables,
// the search engine or the classifier; these only use group arithmetic and
// explicit enumeration.

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"
#include "zsum/zerosum.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace zsum::oracle {

/// Every (length, sum) pair reached by some subset of the terms (2^|S| subsets).
inline std::set<std::pair<int, int>> subset_table(const Group& group, const std::vector<Element>& terms)
{
    std::set<std::pair<int, int>> out;
    const std::size_t size = terms.size();
    for (std::uint32_t mask = 0; mask < (1U << size); ++mask) {
        Element sum = group.zero();
        int length = 0;
        for (std::size_t i = 0; i < size; ++i) {
            if (mask & (1U << i)) {
                sum = group.add(sum, terms[i]);
                ++length;
            }
        }
        out.emplace(length, group.index(sum));
    }
    return out;
}

inline bool length_forbidden(const Group& group, Criterion c, int length)
{
    const int e = group.exponent();
    if (length == 0)
        return false;
    switch (c) {
    case Criterion::Any:
        return true;
    case Criterion::Short:
        return length <= e;
    case Criterion::ExactExp:
        return length == e;
    case Criterion::ExpMultiple:
        return length % e == 0;
    }
    return false;
}

inline bool lacks(const Sequence& seq, Criterion c)
{
    const Group& group = seq.group();
    for (const auto& [length, sum] : subset_table(group, seq.terms()))
        if (sum == 0 && length_forbidden(group, c, length))
            return false;
    return true;
}

/// m1 g1 + m2 g2 = 0 implies m1 g1 = m2 g2 = 0, checked over all coefficients.
inline bool independent(const Group& group, Element g1, Element g2)
{
    for (int m1 = 0; m1 < group.exponent(); ++m1) {
        for (int m2 = 0; m2 < group.exponent(); ++m2) {
            const Element a = group.scale(m1, g1);
            const Element b = group.scale(m2, g2);
            if (group.add(a, b) == group.zero() && (a != group.zero() || b != group.zero()))
                return false;
        }
    }
    return true;
}

/// Counts bijections of G that preserve addition, by trying every permutation.
inline std::size_t automorphism_count(const Group& group)
{
    std::vector<int> perm(static_cast<std::size_t>(group.order()));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    const auto elements = group.elements();
    do {
        if (perm[0] != 0)
            continue;
        bool hom = true;
        for (std::size_t i = 0; i < elements.size() && hom; ++i) {
            for (std::size_t j = 0; j < elements.size() && hom; ++j) {
                const int sum = group.index(group.add(elements[i], elements[j]));
                const Element image = group.add(group.at(perm[i]), group.at(perm[j]));
                hom = group.index(image) == perm[static_cast<std::size_t>(sum)];
            }
        }
        if (hom)
            ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

/// All multisets of the given length over G, as sequences.
template <class Visit>
void for_each_multiset(const Group& group, int length, Visit&& visit)
{
    std::vector<int> idx(static_cast<std::size_t>(length), 0);
    const int order = group.order();
    while (true) {
        Sequence seq(group);
        for (int i : idx)
            seq.add(group.at(i));
        visit(seq);
        int pos = length - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == order - 1)
            --pos;
        if (pos < 0)
            return;
        const int value = idx[static_cast<std::size_t>(pos)] + 1;
        for (int p = pos; p < length; ++p)
            idx[static_cast<std::size_t>(p)] = value;
    }
}

/// All length-L sequences lacking c, by full multiset enumeration.
inline std::vector<Sequence> lacking_of_length(const Group& group, Criterion c, int length)
{
    std::vector<Sequence> out;
    for_each_multiset(group, length, [&](const Sequence& seq) {
        if (oracle::lacks(seq, c))
            out.push_back(seq);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Smallest L such that every length-L sequence contains a forbidden zero-sum.
inline int constant(const Group& group, Criterion c)
{
    for (int length = 0;; ++length)
        if (lacking_of_length(group, c, length).empty())
            return length;
}

inline Sequence random_sequence(const Group& group, int max_length, std::mt19937& rng)
{
    std::uniform_int_distribution<int> len(0, max_length);
    std::uniform_int_distribution<int> elem(0, group.order() - 1);
    Sequence seq(group);
    for (int k = len(rng); k > 0; --k)
        seq.add(group.at(elem(rng)));
    return seq;
}

inline Group random_group(int max_order, std::mt19937& rng)
{
    while (true) {
        std::uniform_int_distribution<int> d(1, max_order);
        const int n1 = d(rng);
        const int n2 = n1 * d(rng);
        if (n1 * n2 <= max_order)
            return Group(n1, n2);
    }
}

}  // namespace zsum::oracle
