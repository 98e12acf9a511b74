#include "oracle.hpp"

#include "zsum/group.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace zsum;

TEST(Group, NormalizesToInvariantFactors)
{
    const Group g(6, 4);
    EXPECT_EQ(g.n1(), 2);
    EXPECT_EQ(g.n2(), 12);
    EXPECT_EQ(Group(5, 3), Group(1, 15));
    EXPECT_THROW(Group(0, 3), std::invalid_argument);
}

TEST(Group, DerivedAccessors)
{
    const Group g(3, 6);
    EXPECT_EQ(g.m(), 3);
    EXPECT_EQ(g.n(), 2);
    EXPECT_EQ(g.exponent(), 6);
    EXPECT_EQ(g.order(), 18);
    EXPECT_EQ(g.rank(), 2);
    EXPECT_EQ(Group::cyclic(7).rank(), 1);
    EXPECT_EQ(Group::cyclic(1).rank(), 0);
    // exp is the largest element order
    for (const Group& h : {Group(2, 4), Group(3, 3), Group(1, 7), Group(2, 6)}) {
        int largest = 1;
        for (Element x : h.elements())
            largest = std::max(largest, order_of(h, x));
        EXPECT_EQ(largest, h.exponent());
    }
}

TEST(Group, ParseTextForms)
{
    EXPECT_EQ(Group::parse("2,6"), Group(2, 6));
    EXPECT_EQ(Group::parse("7"), Group(1, 7));
    EXPECT_EQ(Group::parse("2,6").to_string(), "2,6");
    EXPECT_EQ(Group::parse("7").to_string(), "7");
    EXPECT_THROW(Group::parse("2,x"), std::invalid_argument);
    EXPECT_THROW(Group::parse(""), std::invalid_argument);
}

TEST(Group, ElementsReduceEagerly)
{
    const Group g(2, 4);
    EXPECT_EQ(g.element(3, 5), (Element{1, 1}));
    EXPECT_EQ(g.element(-1, -1), (Element{1, 3}));
    EXPECT_EQ(g.neg({1, 1}), (Element{1, 3}));
    EXPECT_EQ(g.scale(-3, {1, 1}), (Element{1, 1}));
    EXPECT_EQ(to_string(Element{1, 3}), "(1,3)");
}

TEST(OrderOf, Examples)
{
    EXPECT_EQ(order_of(Group(2, 4), {1, 2}), 2);
    EXPECT_EQ(order_of(Group(3, 6), {0, 1}), 6);
    EXPECT_EQ(order_of(Group(3, 6), {0, 0}), 1);
}

TEST(OrderOf, MatchesSmallestAnnihilatingMultiple)
{
    for (const Group& g : {Group(2, 4), Group(3, 6), Group(4, 4), Group(1, 9)}) {
        for (Element x : g.elements()) {
            int k = 1;
            while (g.scale(k, x) != g.zero())
                ++k;
            EXPECT_EQ(order_of(g, x), k);
        }
    }
}

TEST(OrderOf, SumOrderDividesLcm)
{
    const Group g(2, 6);
    for (Element x : g.elements())
        for (Element y : g.elements())
            EXPECT_EQ(std::lcm(order_of(g, x), order_of(g, y)) % order_of(g, g.add(x, y)), 0);
}

TEST(BasisPair, Examples)
{
    EXPECT_TRUE(is_basis_pair(Group(2, 4), {1, 0}, {0, 1}));
    EXPECT_FALSE(is_basis_pair(Group(2, 4), {1, 1}, {0, 1}));
    EXPECT_FALSE(is_basis_pair(Group(2, 2), {1, 0}, {1, 0}));
    EXPECT_THROW(is_basis_pair(Group(1, 6), {0, 1}, {0, 2}), std::domain_error);
}

TEST(BasisPair, AgreesWithCoefficientOracle)
{
    for (const Group& g : {Group(2, 2), Group(2, 4), Group(3, 6), Group(4, 4)}) {
        for (Element x : g.elements()) {
            for (Element y : g.elements()) {
                const bool expected = x != g.zero() && y != g.zero() && is_generating_pair(g, x, y)
                                      && oracle::independent(g, x, y);
                EXPECT_EQ(is_basis_pair(g, x, y), expected) << to_string(x) << to_string(y);
            }
        }
    }
}

TEST(GeneratingPair, Examples)
{
    EXPECT_TRUE(is_generating_pair(Group(2, 4), {1, 1}, {0, 1}));
    EXPECT_TRUE(is_generating_pair(Group(2, 2), {1, 0}, {0, 1}));
    EXPECT_FALSE(is_generating_pair(Group(2, 4), {0, 1}, {0, 3}));
}

TEST(GeneratingPair, BasisImpliesGeneratingAndConverseFailsWhenNAboveOne)
{
    for (const Group& g : {Group(2, 4), Group(2, 6), Group(3, 6), Group(2, 2), Group(3, 3)}) {
        bool converse_fails = false;
        for (Element x : g.elements()) {
            for (Element y : g.elements()) {
                const bool basis = is_basis_pair(g, x, y);
                const bool gen = is_generating_pair(g, x, y);
                if (basis)
                    EXPECT_TRUE(gen);
                converse_fails = converse_fails || (gen && !basis);
            }
        }
        EXPECT_EQ(converse_fails, g.n() > 1) << g.to_string();
    }
}

TEST(Automorphisms, CountsMatchPermutationOracle)
{
    // Frozen from oracle::automorphism_count (brute force over all bijections).
    EXPECT_EQ(oracle::automorphism_count(Group(2, 2)), 6U);
    EXPECT_EQ(oracle::automorphism_count(Group(1, 5)), 4U);
    EXPECT_EQ(automorphisms(Group(2, 2)).size(), 6U);
    EXPECT_EQ(automorphisms(Group(3, 3)).size(), 48U);
    EXPECT_EQ(automorphisms(Group(1, 5)).size(), 4U);
    EXPECT_EQ(automorphisms(Group(2, 4)).size(), oracle::automorphism_count(Group(2, 4)));
}

TEST(Automorphisms, SortedAndBounded)
{
    const auto autos = automorphisms(Group(2, 4));
    EXPECT_TRUE(std::is_sorted(autos.begin(), autos.end()));
    EXPECT_EQ(autos.front(), (Automorphism{{1, 0}, {0, 1}}));
    EXPECT_THROW(automorphisms(Group(1, kAutomorphismOrderBound + 1)), std::length_error);
}

TEST(Automorphisms, PreserveOrderAndFormAGroup)
{
    for (const Group& g : {Group(2, 2), Group(2, 4), Group(4, 4), Group(1, 12)}) {
        const auto autos = automorphisms(g);
        std::vector<std::vector<int>> perms;
        for (const auto& alpha : autos) {
            for (Element x : g.elements())
                EXPECT_EQ(order_of(g, alpha.apply(g, x)), order_of(g, x));
            perms.push_back(alpha.permutation(g));
        }
        std::sort(perms.begin(), perms.end());
        for (const auto& p : perms) {
            std::vector<int> inverse(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                inverse[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
            EXPECT_TRUE(std::binary_search(perms.begin(), perms.end(), inverse));
            for (const auto& q : perms) {
                std::vector<int> composed(p.size());
                for (std::size_t i = 0; i < p.size(); ++i)
                    composed[i] = q[static_cast<std::size_t>(p[i])];
                EXPECT_TRUE(std::binary_search(perms.begin(), perms.end(), composed));
            }
        }
    }
}

TEST(Projection, Examples)
{
    const Projection phi(Group(2, 6));
    EXPECT_EQ(phi.target(), Group(2, 2));
    EXPECT_EQ(phi({1, 3}), (Element{1, 1}));
    EXPECT_EQ(Projection(Group(3, 6)).kernel(), (std::vector<Element>{{0, 0}, {0, 3}}));
    const Projection id(Group(2, 2));
    EXPECT_EQ(id.kernel(), (std::vector<Element>{{0, 0}}));
    for (Element x : Group(2, 2).elements())
        EXPECT_EQ(id(x), x);
    EXPECT_THROW(Projection(Group(1, 6)), std::domain_error);
}

TEST(Projection, SurjectiveHomomorphismWithKernelOfSizeN)
{
    for (const Group& g : {Group(2, 6), Group(3, 6), Group(2, 8), Group(3, 9)}) {
        const Projection phi(g);
        const Group& q = phi.target();
        std::set<int> image;
        std::size_t kernel = 0;
        for (Element x : g.elements()) {
            image.insert(q.index(phi(x)));
            if (phi(x) == q.zero())
                ++kernel;
            for (Element y : g.elements())
                EXPECT_EQ(phi(g.add(x, y)), q.add(phi(x), phi(y)));
        }
        EXPECT_EQ(image.size(), static_cast<std::size_t>(q.order()));
        EXPECT_EQ(kernel, static_cast<std::size_t>(g.n()));
        // kernel is {m g : g in G}
        std::set<int> multiples;
        for (Element x : g.elements())
            multiples.insert(g.index(g.scale(g.m(), x)));
        std::set<int> listed;
        for (Element k : phi.kernel())
            listed.insert(g.index(k));
        EXPECT_EQ(listed, multiples);
    }
}
