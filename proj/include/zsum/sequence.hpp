#pragma once

/**
 * @file sequence.hpp
 * @brief Sequences over G: finite multisets of group elements.
 *
 * The ordering of terms is irrelevant; a Sequence is its multiplicity map,
 * stored densely by element index. Sequences of equal group compare by the
 * lexicographic order of their sorted term lists, which for equal lengths is
 * the same as comparing multiplicity vectors with larger counts first.
 */

#include "zsum/group.hpp"

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zsum {

class Sequence {
public:
    explicit Sequence(Group group);
    Sequence(Group group, std::span<const Element> terms);

    const Group& group() const noexcept { return group_; }

    int multiplicity(Element g) const noexcept { return mult_[static_cast<std::size_t>(group_.index(g))]; }
    int multiplicity_at(int index) const noexcept { return mult_[static_cast<std::size_t>(index)]; }
    const std::vector<int>& multiplicities() const noexcept { return mult_; }

    int length() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }
    int max_multiplicity() const noexcept;

    std::vector<Element> support() const;
    /// Terms with repetition, in the fixed element order.
    std::vector<Element> terms() const;

    /// Adds k copies of g (reduced into the group). k must be non-negative.
    Sequence& add(Element g, int k = 1);

    /// T | S in the free abelian monoid.
    bool divides(const Sequence& other) const noexcept;

    /// Text form "(a,b)^k (c,d) ..." in element order; empty sequence is "".
    std::string to_string() const;

    friend bool operator==(const Sequence& lhs, const Sequence& rhs) noexcept
    {
        return lhs.group_ == rhs.group_ && lhs.mult_ == rhs.mult_;
    }
    friend bool operator<(const Sequence& lhs, const Sequence& rhs) noexcept;

private:
    Group group_;
    std::vector<int> mult_;
    int length_ = 0;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Whitespace-separated terms "(a,b)^k" or "(a,b)"; repeated terms accumulate.
Sequence parse_sequence(const Group& group, std::string_view text);

/// sigma(S); the empty sequence sums to 0.
Element sum_of(const Sequence& seq);

/// h + S.
Sequence shift(Element h, const Sequence& seq);

/// Termwise image under a map into target; multiplicities accumulate.
Sequence apply_hom(const Group& target, const std::function<Element(Element)>& map, const Sequence& seq);

/// Image under an automorphism of the sequence's own group.
Sequence apply_automorphism(const Automorphism& alpha, const Sequence& seq);

/// Least element of the Aut(G)-orbit of seq.
Sequence canonical_form(const Sequence& seq);
Sequence canonical_form(const Sequence& seq, std::span<const Automorphism> autos);

/// {"group":[n1,n2],"terms":[{"elem":[a,b],"mult":k},...]}.
void to_json(nlohmann::json& j, const Sequence& seq);
Sequence sequence_from_json(const nlohmann::json& j);

}  // namespace zsum
