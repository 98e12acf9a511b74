#pragma once

/**
 * @file group.hpp
 * @brief Finite abelian groups of rank at most two.
 *
 * Every group is held in invariant-factor form C_{n1} (+) C_{n2} with n1 | n2.
 * For rank two we also write G = C_m (+) C_{mn}, so m = n1, n = n2 / n1 and
 * exp(G) = n2. Cyclic groups carry n1 = 1.
 *
 * Elements are coordinate pairs (a, b) with 0 <= a < n1, 0 <= b < n2, always
 * stored reduced. The fixed total order on G is lexicographic on (a, b); the
 * dense index of (a, b) is a * n2 + b, which respects that order.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zsum {

struct Element {
    int a = 0;
    int b = 0;

    friend constexpr bool operator==(Element, Element) = default;
    friend constexpr auto operator<=>(Element, Element) = default;
};

std::string to_string(Element g);

class Group {
public:
    /// C_{p} (+) C_{q} for arbitrary positive p, q; normalized to n1 = gcd, n2 = lcm.
    Group(long p, long q);

    static Group cyclic(long n) { return Group(1, n); }

    /// Text form "m,mn" (two factors, normalized) or "n" (cyclic).
    static Group parse(std::string_view text);

    int n1() const noexcept { return n1_; }
    int n2() const noexcept { return n2_; }
    int m() const noexcept { return n1_; }
    int n() const noexcept { return n2_ / n1_; }
    int exponent() const noexcept { return n2_; }
    int order() const noexcept { return n1_ * n2_; }
    int rank() const noexcept { return n2_ == 1 ? 0 : (n1_ == 1 ? 1 : 2); }

    Element element(long a, long b) const noexcept;
    Element zero() const noexcept { return {}; }

    int index(Element g) const noexcept { return g.a * n2_ + g.b; }
    Element at(int index) const noexcept { return {index / n2_, index % n2_}; }

    /// All elements in the fixed order.
    std::vector<Element> elements() const;

    Element add(Element g, Element h) const noexcept;
    Element sub(Element g, Element h) const noexcept;
    Element neg(Element g) const noexcept;
    Element scale(long k, Element g) const noexcept;

    std::string to_string() const;

    friend bool operator==(const Group&, const Group&) = default;

private:
    int n1_;
    int n2_;
};

/// Smallest k >= 1 with k * g = 0.
int order_of(const Group& group, Element g);

/// {g1, g2} generates the group (closure enumeration).
bool is_generating_pair(const Group& group, Element g1, Element g2);

/// {g1, g2} is a basis: it generates and the two elements are independent.
/// Throws std::domain_error unless rank(group) == 2.
bool is_basis_pair(const Group& group, Element g1, Element g2);

/// The endomorphism (a, b) -> a * image1 + b * image2.
struct Automorphism {
    Element image1;
    Element image2;

    Element apply(const Group& group, Element g) const noexcept
    {
        return group.add(group.scale(g.a, image1), group.scale(g.b, image2));
    }

    /// Dense permutation table: perm[index(g)] = index(apply(g)).
    std::vector<int> permutation(const Group& group) const;

    friend bool operator==(const Automorphism&, const Automorphism&) = default;
    friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

inline constexpr int kAutomorphismOrderBound = 256;

/// Complete automorphism group, ordered lexicographically by (image1, image2).
/// Throws std::length_error when |G| exceeds kAutomorphismOrderBound.
std::vector<Automorphism> automorphisms(const Group& group);

/// The canonical map G = C_m (+) C_{mn} -> G / {m g : g in G} = C_m (+) C_m.
class Projection {
public:
    explicit Projection(const Group& source);

    const Group& source() const noexcept { return source_; }
    const Group& target() const noexcept { return target_; }
    Element operator()(Element g) const noexcept { return target_.element(g.a, g.b); }

    /// The kernel {m g : g in G}, in the fixed order.
    std::vector<Element> kernel() const;

private:
    Group source_;
    Group target_;
};

}  // namespace zsum
