// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracle.hpp"

#include "zsum/constants.hpp"
#include "zsum/inverse.hpp"
#include "zsum/zerosum.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace zsum;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<Group> direct_groups()
{
    std::vector<Group> groups = {Group(2, 2), Group(3, 3), Group(2, 4), Group(2, 6), Group(3, 6), Group(4, 4)};
    for (int n = 1; n <= 7; ++n)
        groups.push_back(Group::cyclic(n));
    return groups;
}

// 1 ----------------------------------------------------------------------------

Outcome direct_constants()
{
    Outcome o;
    int checked = 0;
    for (const Group& g : direct_groups()) {
        const DirectCheck check = check_direct_formulas(g);
        for (const auto& r : check.reports) {
            ++checked;
            if (!r.matches_formula()) {
                o.pass = false;
                o.detail += " mismatch " + g.to_string() + " " + std::string(criterion_name(r.criterion)) + " computed "
                            + std::to_string(r.computed_constant) + " formula " + std::to_string(r.formula_constant)
                            + ";";
            }
        }
    }
    o.detail = std::to_string(checked) + " (group, constant) pairs exact" + o.detail;
    return o;
}

// 2 ----------------------------------------------------------------------------

std::vector<Sequence> all_lacking_extremals(const Group& g, Criterion c)
{
    SearchOptions options;
    options.symmetry = Symmetry::None;
    options.collect_all = true;
    return longest_lacking(g, c, options).extremal_examples;
}

Outcome cyclic_inverse()
{
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        const Group g = Group::cyclic(n);
        std::vector<Sequence> any_expected;
        std::vector<Sequence> exact_expected;
        for (int e = 0; e < n; ++e) {
            if (std::gcd(e, n) != 1)
                continue;
            any_expected.push_back(Sequence(g).add({0, e}, n - 1));
            for (int h = 0; h < n; ++h)
                exact_expected.push_back(Sequence(g).add({0, h}, n - 1).add(g.element(0, h + e), n - 1));
        }
        for (auto* v : {&any_expected, &exact_expected}) {
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }
        const auto any = all_lacking_extremals(g, Criterion::Any);
        const auto exact = all_lacking_extremals(g, Criterion::ExactExp);
        const int phi = static_cast<int>(any_expected.size());
        if (any != any_expected || exact != exact_expected) {
            o.pass = false;
            o.detail += " n=" + std::to_string(n) + " differs;";
        } else {
            o.detail += " n=" + std::to_string(n) + ":" + std::to_string(phi) + "/" + std::to_string(exact.size());
        }
    }
    o.detail = "extremal sets (D/s counts)" + o.detail;
    return o;
}

// 3 ----------------------------------------------------------------------------

Outcome properties_c_d()
{
    Outcome o;
    o.detail = "orbits examined:";
    for (int m : {2, 3, 4}) {
        for (PropertyName which : {PropertyName::C, PropertyName::D}) {
            const PropertyReport r = check_property(m, which);
            o.detail += std::string(" ") + (which == PropertyName::C ? "C" : "D") + "(m=" + std::to_string(m)
                        + ")=" + std::to_string(r.orbits) + ":" + std::string(status_name(r.status));
            if (r.status != CheckStatus::Verified)
                o.pass = false;
        }
    }
    return o;
}

// 4 ----------------------------------------------------------------------------

constexpr FormTag kAllTags[] = {FormTag::EtaA, FormTag::EtaB, FormTag::SA, FormTag::SB};

std::vector<Group> main_groups() { return {Group(2, 4), Group(2, 6), Group(3, 6)}; }

Outcome direct_forms()
{
    Outcome o;
    std::size_t total = 0;
    std::size_t failures = 0;
    for (const Group& g : main_groups()) {
        const int eta = formula_value(g, Criterion::Short);
        const int s = formula_value(g, Criterion::ExactExp);
        for (const ExtremalForm& f : all_forms(g, kAllTags)) {
            ++total;
            const bool is_eta = f.tag == FormTag::EtaA || f.tag == FormTag::EtaB;
            try {
                const Sequence seq = construct(g, f);
                const bool ok = is_eta ? seq.length() == eta - 1 && lacks(seq, Criterion::Short)
                                       : seq.length() == s - 1 && lacks(seq, Criterion::ExactExp);
                if (!ok)
                    ++failures;
            } catch (const std::exception&) {
                ++failures;
            }
        }
    }
    o.pass = failures == 0;
    o.detail = std::to_string(total) + " parameterizations, " + std::to_string(failures) + " failures";
    return o;
}

// 5 ----------------------------------------------------------------------------

Outcome converse()
{
    Outcome o;
    std::size_t total = 0;
    std::size_t unclassified = 0;
    for (const Group& g : main_groups()) {
        const Classifier classifier(g);
        for (ExtremalKind kind : {ExtremalKind::Eta, ExtremalKind::S}) {
            const Enumeration e = enumerate_extremal(g, kind, false);
            if (!e.complete || e.sequences.empty())
                o.pass = false;
            o.detail += " " + g.to_string() + (kind == ExtremalKind::Eta ? " eta:" : " s:")
                        + std::to_string(e.sequences.size()) + "/" + std::to_string(e.orbits);
            for (const Sequence& seq : e.sequences) {
                ++total;
                if (classifier.classify(seq).empty())
                    ++unclassified;
            }
        }
    }
    if (unclassified > 0)
        o.pass = false;
    o.detail = std::to_string(total) + " extremals, " + std::to_string(unclassified)
               + " unclassified (sequences/orbits)" + o.detail;
    return o;
}

// 6 ----------------------------------------------------------------------------

Outcome exp_minus_one()
{
    const ExpMinusOneReport r = reproduce_exp_minus_1(2, 3);
    Outcome o;
    o.pass = r.group == Group(2, 6) && r.sequence.length() == 12 && lacks(r.sequence, Criterion::ExactExp)
             && r.max_multiplicity == 3 && r.max_multiplicity < r.group.exponent() - 1 && r.holds();
    o.detail = r.sequence.to_string() + " over " + r.group.to_string() + ", length "
               + std::to_string(r.sequence.length()) + ", max multiplicity " + std::to_string(r.max_multiplicity)
               + " < " + std::to_string(r.group.exponent() - 1);
    return o;
}

// 7 ----------------------------------------------------------------------------

constexpr int kShiftTrials = 10000;

Element random_element(const Group& g, std::mt19937& rng)
{
    return g.at(std::uniform_int_distribution<int>(0, g.order() - 1)(rng));
}

/// Random growth of `seq` that keeps it lacking c, up to `target` terms.
Sequence grow_lacking(Sequence seq, Criterion c, int target, std::mt19937& rng)
{
    int attempts = 0;
    while (seq.length() < target && attempts < 8 * target) {
        ++attempts;
        Sequence next = seq;
        next.add(random_element(seq.group(), rng));
        if (lacks(next, c))
            seq = std::move(next);
    }
    return seq;
}

Outcome lemma_suite()
{
    Outcome o;
    for (int m : {2, 3, 4, 5}) {
        const LemmaReport r = verify_lemma(LemmaName::NoShort, m);
        if (r.status != CheckStatus::Verified)
            o.pass = false;
        o.detail += " noshort(" + std::to_string(m) + ")=" + std::to_string(r.instances);
    }
    for (int m : {2, 3, 4}) {
        const LemmaReport r = verify_lemma(LemmaName::TwoM, m);
        if (r.status != CheckStatus::Verified)
            o.pass = false;
        o.detail += " two-m(" + std::to_string(m) + ")=" + std::to_string(r.instances);
    }

    std::mt19937 rng(0x5eed);
    std::array<int, 3> failures{};
    int nontrivial = 0;  // case 3 instances that need a nonempty T
    for (int trial = 0; trial < kShiftTrials; ++trial) {
        const Group g = oracle::random_group(36, rng);
        const int e = g.exponent();
        const Element h = random_element(g, rng);

        const Sequence s1 = oracle::random_sequence(g, 14, rng);
        const int k = std::uniform_int_distribution<int>(1, 2)(rng);
        if (!verify_shift_lemma(s1, h, ShiftLemmaCase::LengthMultiple, k * e))
            ++failures[0];

        const int short_target = std::uniform_int_distribution<int>(0, formula_value(g, Criterion::Short) - 1)(rng);
        const Sequence s2 = grow_lacking(Sequence(g), Criterion::Short, short_target, rng);
        if (!verify_shift_lemma(s2, h, ShiftLemmaCase::PaddedShift))
            ++failures[1];

        const int v = (e - 1) / 2 + std::uniform_int_distribution<int>(0, (e - 1) - (e - 1) / 2)(rng);
        const int exact_target =
            std::uniform_int_distribution<int>(v, formula_value(g, Criterion::ExactExp) - 1)(rng);
        const Sequence s3 = grow_lacking(Sequence(g).add(h, v), Criterion::ExactExp, exact_target, rng);
        if (s3.length() >= e)
            ++nontrivial;
        if (!verify_shift_lemma(s3, h, ShiftLemmaCase::LargeShortFree))
            ++failures[2];
    }
    for (int i = 0; i < 3; ++i) {
        if (failures[static_cast<std::size_t>(i)] != 0)
            o.pass = false;
        o.detail += " shift case " + std::to_string(i + 1) + ": " + std::to_string(kShiftTrials) + " instances, "
                    + std::to_string(failures[static_cast<std::size_t>(i)]) + " failures;";
    }
    o.detail = "instances:" + o.detail + " case 3 with |S| >= exp: " + std::to_string(nontrivial);
    return o;
}

// 8 ----------------------------------------------------------------------------

Outcome oracle_equivalence()
{
    std::mt19937 rng(0xacce97);
    std::size_t disagreements = 0;
    std::size_t decisions = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Group g = oracle::random_group(16, rng);
        const Sequence s = oracle::random_sequence(g, 12, rng);
        for (Criterion c : kAllCriteria) {
            ++decisions;
            if (lacks(s, c) != oracle::lacks(s, c))
                ++disagreements;
        }
    }
    const Group g(2, 4);
    std::size_t exhaustive = 0;
    for (int len = 0; len <= 5; ++len) {
        oracle::for_each_multiset(g, len, [&](const Sequence& s) {
            ++exhaustive;
            for (Criterion c : kAllCriteria) {
                ++decisions;
                if (lacks(s, c) != oracle::lacks(s, c))
                    ++disagreements;
            }
        });
    }
    Outcome o;
    o.pass = disagreements == 0;
    o.detail = std::to_string(decisions) + " decisions (10000 random + " + std::to_string(exhaustive)
               + " exhaustive sequences over 2,4), " + std::to_string(disagreements) + " disagreements";
    return o;
}

// 9 ----------------------------------------------------------------------------

std::string report_json(const SearchReport& r, bool keep_nodes)
{
    nlohmann::json j = r;
    j.erase("ms");
    if (!keep_nodes)
        j.erase("nodes");
    return j.dump();
}

Outcome determinism()
{
    Outcome o;
    std::size_t comparisons = 0;
    auto compare = [&](const std::string& a, const std::string& b, const std::string& what) {
        ++comparisons;
        if (a != b) {
            o.pass = false;
            o.detail += " differs: " + what + ";";
        }
    };
    for (const Group& g : direct_groups()) {
        for (Criterion c : kAllCriteria) {
            const std::string tag = g.to_string() + " " + std::string(criterion_name(c));
            SearchOptions one;
            SearchOptions four;
            four.workers = 4;
            SearchOptions unpruned;
            unpruned.symmetry = Symmetry::None;
            const auto base = longest_lacking(g, c, one);
            compare(report_json(base, true), report_json(longest_lacking(g, c, four), true), tag + " workers");
            compare(report_json(base, false), report_json(longest_lacking(g, c, unpruned), false), tag + " pruning");
        }
    }
    for (int n = 1; n <= 8; ++n) {
        const Group g = Group::cyclic(n);
        for (Criterion c : {Criterion::Any, Criterion::ExactExp}) {
            const std::string tag = g.to_string() + " " + std::string(criterion_name(c)) + " all";
            SearchOptions one;
            one.symmetry = Symmetry::None;
            one.collect_all = true;
            SearchOptions four = one;
            four.workers = 4;
            compare(report_json(longest_lacking(g, c, one), true), report_json(longest_lacking(g, c, four), true),
                    tag + " workers");
            SearchOptions pruned = one;
            pruned.symmetry = Symmetry::Automorphisms;
            pruned.collect_all = false;
            one.collect_all = false;
            compare(report_json(longest_lacking(g, c, one), false), report_json(longest_lacking(g, c, pruned), false),
                    tag + " pruning");
        }
    }
    o.detail = std::to_string(comparisons) + " byte comparisons of report JSON" + o.detail;
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"direct constants equal the closed formulas", direct_constants},
        {"cyclic extremal sets", cyclic_inverse},
        {"properties C and D for m in {2,3,4}", properties_c_d},
        {"every extremal form is extremal", direct_forms},
        {"every extremal sequence classifies", converse},
        {"exp-1 multiplicity construction", exp_minus_one},
        {"lemma suite and shift lemma", lemma_suite},
        {"lacks agrees with subset enumeration", oracle_equivalence},
        {"determinism across workers and pruning", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " -- "
                  << o.detail << " [" << timing << "]" << std::endl;
        if (!o.pass)
            ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
