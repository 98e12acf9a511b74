#include "zsum/zerosum.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace zsum {

namespace {

inline std::uint64_t low_mask(int n2) noexcept
{
    return n2 == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n2) - 1;
}

inline std::uint64_t rotate(std::uint64_t x, int k, int n2) noexcept
{
    if (k == 0)
        return x;
    return ((x << k) | (x >> (n2 - k))) & low_mask(n2);
}

/// dst |= src + g, both rows of n1 words.
inline void or_shifted_words(std::uint64_t* dst, const std::uint64_t* src, Element g, int n1, int n2) noexcept
{
    for (int a = 0, to = g.a; a < n1; ++a, ++to) {
        if (to == n1)
            to = 0;
        if (src[a] != 0)
            dst[to] |= rotate(src[a], g.b, n2);
    }
}

void require_supported(const Group& group)
{
    if (group.exponent() > kMaxExponent)
        throw std::domain_error("exponent " + std::to_string(group.exponent()) + " exceeds the supported maximum "
                                + std::to_string(kMaxExponent));
}

}  // namespace

std::string_view criterion_name(Criterion c) noexcept
{
    switch (c) {
    case Criterion::Any:
        return "D";
    case Criterion::Short:
        return "eta";
    case Criterion::ExactExp:
        return "s";
    case Criterion::ExpMultiple:
        return "s_exp_mult";
    }
    return "?";
}

std::optional<Criterion> parse_criterion(std::string_view name) noexcept
{
    for (Criterion c : kAllCriteria)
        if (criterion_name(c) == name)
            return c;
    return std::nullopt;
}

bool forbids_length(const Group& group, Criterion c, int length) noexcept
{
    if (length < 1)
        return false;
    const int e = group.exponent();
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

bool GroupMask::any() const noexcept
{
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

int GroupMask::count() const noexcept
{
    int total = 0;
    for (std::uint64_t w : words_)
        total += std::popcount(w);
    return total;
}

void GroupMask::or_shifted(const GroupMask& src, Element g, int n2) noexcept
{
    or_shifted_words(words_.data(), src.words_.data(), g, static_cast<int>(words_.size()), n2);
}

SumProfile::SumProfile(const Group& group, int max_length)
    : group_(group), rows_(static_cast<std::size_t>(std::max(max_length, 0)) + 1, GroupMask(group))
{
    require_supported(group);
    rows_[0].set(group.zero());
}

void SumProfile::append(Element g) noexcept
{
    for (int l = max_length(); l >= 1; --l)
        rows_[static_cast<std::size_t>(l)].or_shifted(rows_[static_cast<std::size_t>(l - 1)], g, group_.n2());
}

SumProfile build_profile(const Sequence& seq, int max_length)
{
    const Group& group = seq.group();
    SumProfile profile(group, max_length);
    for (int i = 0; i < group.order(); ++i) {
        const Element g = group.at(i);
        for (int k = seq.multiplicity_at(i); k > 0; --k)
            profile.append(g);
    }
    return profile;
}

namespace {

int profile_bound(const Sequence& seq, Criterion c)
{
    const int e = seq.group().exponent();
    switch (c) {
    case Criterion::Short:
    case Criterion::ExactExp:
        return std::min(seq.length(), e);
    case Criterion::Any:
    case Criterion::ExpMultiple:
        return seq.length();
    }
    return seq.length();
}

std::optional<int> forbidden_zero_length(const SumProfile& profile, Criterion c)
{
    const Group& group = profile.group();
    for (int l = 1; l <= profile.max_length(); ++l)
        if (forbids_length(group, c, l) && profile.reachable(l, group.zero()))
            return l;
    return std::nullopt;
}

}  // namespace

bool lacks(const Sequence& seq, Criterion c)
{
    if (c == Criterion::ExactExp && seq.length() < seq.group().exponent())
        return true;
    return !forbidden_zero_length(build_profile(seq, profile_bound(seq, c)), c).has_value();
}

bool has_zero_sum_of_length(const Sequence& seq, int length)
{
    if (length < 0 || length > seq.length())
        return false;
    return build_profile(seq, length).reachable(length, seq.group().zero());
}

std::optional<Sequence> witness(const Sequence& seq, Criterion c)
{
    const Group& group = seq.group();
    const int bound = profile_bound(seq, c);
    const auto terms = seq.terms();

    // prefixes[k] covers the first k terms.
    std::vector<SumProfile> prefixes;
    prefixes.reserve(terms.size() + 1);
    prefixes.emplace_back(group, bound);
    for (Element g : terms) {
        prefixes.push_back(prefixes.back());
        prefixes.back().append(g);
    }
    const auto length = forbidden_zero_length(prefixes.back(), c);
    if (!length)
        return std::nullopt;

    Sequence out(group);
    int l = *length;
    Element target = group.zero();
    for (std::size_t k = terms.size(); k > 0 && l > 0; --k) {
        if (prefixes[k - 1].reachable(l, target))
            continue;
        out.add(terms[k - 1]);
        target = group.sub(target, terms[k - 1]);
        --l;
    }
    return out;
}

LacksTracker::LacksTracker(const Group& group, Criterion c)
    : criterion_(c), n1_(group.n1()), n2_(group.n2())
{
    require_supported(group);
    switch (c) {
    case Criterion::Any:
        rows_ = 1;
        break;
    case Criterion::Short:
    case Criterion::ExactExp:
        rows_ = group.exponent();
        break;
    case Criterion::ExpMultiple:
        rows_ = group.exponent();
        break;
    }
    words_.assign(static_cast<std::size_t>((rows_ + 1) * n1_), 0);
}

bool LacksTracker::push(Element g) noexcept
{
    const std::uint64_t bit = std::uint64_t{1} << g.b;
    switch (criterion_) {
    case Criterion::Any: {
        // row 0: sums of nonempty subsequences
        std::uint64_t* sums = row(0);
        std::uint64_t* scratch = row(1);
        std::copy(sums, sums + n1_, scratch);
        or_shifted_words(sums, scratch, g, n1_, n2_);
        sums[g.a] |= bit;
        lacking_ = (sums[0] & 1U) == 0;
        break;
    }
    case Criterion::Short:
    case Criterion::ExactExp: {
        // row r - 1 holds sums of length r, for r in [1, exp]
        for (int r = rows_ - 1; r >= 1; --r)
            or_shifted_words(row(r), row(r - 1), g, n1_, n2_);
        row(0)[g.a] |= bit;
        if (criterion_ == Criterion::ExactExp) {
            lacking_ = (row(rows_ - 1)[0] & 1U) == 0;
        } else {
            for (int r = 0; r < rows_ && lacking_; ++r)
                lacking_ = (row(r)[0] & 1U) == 0;
        }
        break;
    }
    case Criterion::ExpMultiple: {
        // row r holds sums of nonempty subsequences with length = r (mod exp)
        std::uint64_t* scratch = row(rows_);
        std::uint64_t* last = row(rows_ - 1);
        std::copy(last, last + n1_, scratch);
        for (int r = rows_ - 1; r >= 1; --r)
            or_shifted_words(row(r), row(r - 1), g, n1_, n2_);
        or_shifted_words(row(0), scratch, g, n1_, n2_);
        row(rows_ == 1 ? 0 : 1)[g.a] |= bit;
        lacking_ = (row(0)[0] & 1U) == 0;
        break;
    }
    }
    return lacking_;
}

namespace {

struct ShortFreeSubsearch {
    const Group& group;
    std::vector<Element> support;
    std::vector<int> available;
    int target = 0;

    bool run(std::size_t index, int size, const LacksTracker& tracker) const
    {
        if (size >= target)
            return true;
        if (index == support.size())
            return false;
        int remaining = 0;
        for (std::size_t j = index; j < support.size(); ++j)
            remaining += available[j];
        if (size + remaining < target)
            return false;
        // Take copies of support[index] greedily first, then fewer.
        std::vector<LacksTracker> chain{tracker};
        int taken = 0;
        while (taken < available[index] && size + taken < target) {
            LacksTracker next = chain.back();
            if (!next.push(support[index]))
                break;
            chain.push_back(std::move(next));
            ++taken;
        }
        for (int k = taken; k >= 0; --k)
            if (run(index + 1, size + k, chain[static_cast<std::size_t>(k)]))
                return true;
        return false;
    }
};

}  // namespace

bool verify_shift_lemma(const Sequence& seq, Element g, ShiftLemmaCase which, int length)
{
    const Group& group = seq.group();
    const int e = group.exponent();
    switch (which) {
    case ShiftLemmaCase::LengthMultiple:
        if (length < 1 || length % e != 0)
            throw std::invalid_argument("hypothesis failed: exp(G) must divide the length");
        return has_zero_sum_of_length(seq, length) == has_zero_sum_of_length(shift(g, seq), length);
    case ShiftLemmaCase::PaddedShift: {
        if (!lacks(seq, Criterion::Short))
            throw std::invalid_argument("hypothesis failed: S has a short zero-sum subsequence");
        Sequence padded = shift(g, seq);
        for (int v = 0; v <= e - 1; ++v) {
            if (!lacks(padded, Criterion::ExactExp))
                return false;
            padded.add(g);
        }
        return true;
    }
    case ShiftLemmaCase::LargeShortFree: {
        if (seq.multiplicity(g) < (e - 1) / 2)
            throw std::invalid_argument("hypothesis failed: v_g(S) < floor((exp(G) - 1) / 2)");
        if (!lacks(seq, Criterion::ExactExp))
            throw std::invalid_argument("hypothesis failed: S has a zero-sum subsequence of length exp(G)");
        // Search over T | S on the shifted side: (-g) + T | (-g) + S.
        const Sequence shifted = shift(group.neg(g), seq);
        ShortFreeSubsearch search{group, shifted.support(), {}, std::max(0, seq.length() - e + 1)};
        for (Element x : search.support)
            search.available.push_back(shifted.multiplicity(x));
        return search.run(0, 0, LacksTracker(group, Criterion::Short));
    }
    }
    return false;
}

}  // namespace zsum
