#include "zsum/group.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace zsum {

namespace {

long reduce(long value, long modulus) noexcept
{
    const long r = value % modulus;
    return r < 0 ? r + modulus : r;
}

std::vector<char> span_of(const Group& group, Element g1, Element g2)
{
    std::vector<char> seen(static_cast<std::size_t>(group.order()), 0);
    const int o1 = order_of(group, g1);
    const int o2 = order_of(group, g2);
    Element row = group.zero();
    for (int i = 0; i < o1; ++i) {
        Element x = row;
        for (int j = 0; j < o2; ++j) {
            seen[static_cast<std::size_t>(group.index(x))] = 1;
            x = group.add(x, g2);
        }
        row = group.add(row, g1);
    }
    return seen;
}

}  // namespace

std::string to_string(Element g)
{
    return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
}

Group::Group(long p, long q)
{
    if (p < 1 || q < 1)
        throw std::invalid_argument("group factors must be positive");
    const long g = std::gcd(p, q);
    const long l = p / g * q;
    if (l > (1L << 20) || g * l > (1L << 20))
        throw std::invalid_argument("group too large");
    n1_ = static_cast<int>(g);
    n2_ = static_cast<int>(l);
}

Group Group::parse(std::string_view text)
{
    auto parse_int = [&](std::string_view part) {
        while (!part.empty() && part.front() == ' ')
            part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ')
            part.remove_suffix(1);
        long value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw std::invalid_argument("malformed group '" + std::string(text) + "'");
        return value;
    };
    const auto comma = text.find(',');
    if (comma == std::string_view::npos)
        return Group(1, parse_int(text));
    return Group(parse_int(text.substr(0, comma)), parse_int(text.substr(comma + 1)));
}

Element Group::element(long a, long b) const noexcept
{
    return {static_cast<int>(reduce(a, n1_)), static_cast<int>(reduce(b, n2_))};
}

std::vector<Element> Group::elements() const
{
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(order()));
    for (int i = 0; i < order(); ++i)
        out.push_back(at(i));
    return out;
}

Element Group::add(Element g, Element h) const noexcept
{
    int a = g.a + h.a;
    int b = g.b + h.b;
    if (a >= n1_)
        a -= n1_;
    if (b >= n2_)
        b -= n2_;
    return {a, b};
}

Element Group::sub(Element g, Element h) const noexcept
{
    return add(g, neg(h));
}

Element Group::neg(Element g) const noexcept
{
    return {g.a == 0 ? 0 : n1_ - g.a, g.b == 0 ? 0 : n2_ - g.b};
}

Element Group::scale(long k, Element g) const noexcept
{
    return element(reduce(k, n1_) * g.a, reduce(k, n2_) * g.b);
}

std::string Group::to_string() const
{
    std::ostringstream out;
    if (n1_ == 1)
        out << n2_;
    else
        out << n1_ << ',' << n2_;
    return out.str();
}

int order_of(const Group& group, Element g)
{
    const int oa = group.n1() / std::gcd(group.n1(), g.a);
    const int ob = group.n2() / std::gcd(group.n2(), g.b);
    return std::lcm(oa, ob);
}

bool is_generating_pair(const Group& group, Element g1, Element g2)
{
    const auto seen = span_of(group, g1, g2);
    return std::accumulate(seen.begin(), seen.end(), 0) == group.order();
}

bool is_basis_pair(const Group& group, Element g1, Element g2)
{
    if (group.rank() != 2)
        throw std::domain_error("basis query on group of rank != 2");
    if (g1 == group.zero() || g2 == group.zero())
        return false;
    if (!is_generating_pair(group, g1, g2))
        return false;
    // Generating and |<g1>| * |<g2>| = |G| is equivalent to <g1> and <g2>
    // meeting trivially, i.e. independence.
    return static_cast<long>(order_of(group, g1)) * order_of(group, g2) == group.order();
}

std::vector<int> Automorphism::permutation(const Group& group) const
{
    std::vector<int> perm(static_cast<std::size_t>(group.order()));
    for (int i = 0; i < group.order(); ++i)
        perm[static_cast<std::size_t>(i)] = group.index(apply(group, group.at(i)));
    return perm;
}

std::vector<Automorphism> automorphisms(const Group& group)
{
    if (group.order() > kAutomorphismOrderBound)
        throw std::length_error("group too large for automorphism enumeration");
    std::vector<Automorphism> out;
    const auto elements = group.elements();
    for (Element x : elements) {
        if (group.n1() % order_of(group, x) != 0)
            continue;
        for (Element y : elements) {
            if (group.n2() % order_of(group, y) != 0)
                continue;
            if (is_generating_pair(group, x, y))
                out.push_back({x, y});
        }
    }
    return out;
}

Projection::Projection(const Group& source)
    : source_(source), target_(source.m(), source.m())
{
    if (source.rank() != 2)
        throw std::domain_error("natural projection requires a group of rank 2");
}

std::vector<Element> Projection::kernel() const
{
    std::vector<Element> out;
    for (int b = 0; b < source_.n2(); b += source_.m())
        out.push_back({0, b});
    return out;
}

}  // namespace zsum
