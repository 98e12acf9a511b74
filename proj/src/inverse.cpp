#include "zsum/inverse.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <numeric>

namespace zsum {

std::string_view form_name(FormTag tag) noexcept
{
    switch (tag) {
    case FormTag::EtaA:
        return "eta_a";
    case FormTag::EtaB:
        return "eta_b";
    case FormTag::SA:
        return "s_a";
    case FormTag::SB:
        return "s_b";
    }
    return "?";
}

Criterion criterion_of(ExtremalKind kind) noexcept
{
    return kind == ExtremalKind::Eta ? Criterion::Short : Criterion::ExactExp;
}

void to_json(nlohmann::json& j, const ClassifyMatch& match)
{
    const ExtremalForm& f = match.form;
    j = nlohmann::json{{"form", form_name(f.tag)},
                       {"e1", {f.first.a, f.first.b}},
                       {"e2", {f.second.a, f.second.b}}};
    if (f.uses_basis()) {
        j["x"] = f.x;
        j["s"] = f.s;
    }
    if (f.tag == FormTag::SA)
        j["t"] = f.t;
    if (f.uses_shift())
        j["g"] = {f.g.a, f.g.b};
}

namespace {

struct FormTerm {
    Element element;
    int count;
};

/// Up to four (element, multiplicity) pairs; elements may repeat for invalid forms.
struct FormTerms {
    std::array<FormTerm, 4> terms{};
    int size = 0;

    void push(Element g, int count) { terms[static_cast<std::size_t>(size++)] = {g, count}; }
};

FormTerms form_terms(const Group& group, const ExtremalForm& f)
{
    const int m = group.m();
    const int n = group.n();
    const int mn = group.exponent();
    // -x * first + second
    const Element third = group.add(group.scale(-static_cast<long>(f.x), f.first), f.second);
    FormTerms out;
    switch (f.tag) {
    case FormTag::EtaA:
        out.push(f.first, m - 1);
        out.push(f.second, f.s * m - 1);
        out.push(third, (n + 1 - f.s) * m - 1);
        break;
    case FormTag::EtaB:
        out.push(f.first, m - 1);
        out.push(f.second, mn - 1);
        out.push(group.sub(f.second, f.first), m - 1);
        break;
    case FormTag::SA:
        out.push(f.g, f.t * m - 1);
        out.push(group.add(f.first, f.g), (n + 1 - f.t) * m - 1);
        out.push(group.add(f.second, f.g), f.s * m - 1);
        out.push(group.add(third, f.g), (n + 1 - f.s) * m - 1);
        break;
    case FormTag::SB:
        out.push(f.g, mn - 1);
        out.push(group.add(f.first, f.g), m - 1);
        out.push(group.add(f.second, f.g), mn - 1);
        out.push(group.add(group.sub(f.second, f.first), f.g), m - 1);
        break;
    }
    return out;
}

bool matches(const Sequence& seq, const FormTerms& candidate)
{
    std::array<FormTerm, 4> merged{};
    int size = 0;
    int total = 0;
    for (int i = 0; i < candidate.size; ++i) {
        const FormTerm& term = candidate.terms[static_cast<std::size_t>(i)];
        total += term.count;
        auto* end = merged.begin() + size;
        auto* it = std::find_if(merged.begin(), end, [&](const FormTerm& x) { return x.element == term.element; });
        if (it == end)
            merged[static_cast<std::size_t>(size++)] = term;
        else
            it->count += term.count;
    }
    if (total != seq.length())
        return false;
    for (int i = 0; i < size; ++i)
        if (seq.multiplicity(merged[static_cast<std::size_t>(i)].element) != merged[static_cast<std::size_t>(i)].count)
            return false;
    return true;
}

Sequence form_sequence(const Group& group, const ExtremalForm& f)
{
    const FormTerms terms = form_terms(group, f);
    Sequence seq(group);
    for (int i = 0; i < terms.size; ++i)
        seq.add(terms.terms[static_cast<std::size_t>(i)].element, terms.terms[static_cast<std::size_t>(i)].count);
    return seq;
}

void require_rank_two(const Group& group)
{
    if (group.rank() != 2)
        throw std::domain_error("extremal forms require a group of rank 2");
}

std::vector<int> units_mod(int m)
{
    std::vector<int> out;
    for (int x = 1; x < m; ++x)
        if (std::gcd(x, m) == 1)
            out.push_back(x);
    return out;
}

bool x_at_most_half(const Group& group, const ExtremalForm& f)
{
    return f.uses_basis() && 2 * f.x <= group.m();
}

}  // namespace

void validate_form(const Group& group, const ExtremalForm& f)
{
    require_rank_two(group);
    const int mn = group.exponent();
    if (f.uses_basis()) {
        if (!is_basis_pair(group, f.first, f.second))
            throw std::invalid_argument("e1, e2 do not form a basis");
        if (order_of(group, f.second) != mn)
            throw std::invalid_argument("ord e2 != mn");
        if (f.x < 1 || std::gcd(f.x, group.m()) != 1)
            throw std::invalid_argument("x must be positive with gcd(x, m) = 1");
        if (f.s < 1 || f.s > group.n())
            throw std::invalid_argument("s must lie in [1, n]");
        if (f.tag == FormTag::SA && (f.t < 1 || f.t > group.n()))
            throw std::invalid_argument("t must lie in [1, n]");
    } else {
        if (!is_generating_pair(group, f.first, f.second))
            throw std::invalid_argument("g1, g2 do not generate the group");
        if (order_of(group, f.second) != mn)
            throw std::invalid_argument("ord g2 != mn");
    }
}

Sequence construct(const Group& group, const ExtremalForm& form)
{
    validate_form(group, form);
    Sequence seq = form_sequence(group, form);
    const bool eta = form.tag == FormTag::EtaA || form.tag == FormTag::EtaB;
    const Criterion c = eta ? Criterion::Short : Criterion::ExactExp;
    if (seq.length() != formula_value(group, c) - 1 || !lacks(seq, c))
        throw std::logic_error("constructed " + std::string(form_name(form.tag)) + " sequence is not extremal: "
                               + seq.to_string());
    return seq;
}

std::vector<ExtremalForm> all_forms(const Group& group, std::span<const FormTag> tags)
{
    const Classifier classifier(group);
    const auto units = units_mod(group.m());
    const auto elements = group.elements();
    const int n = group.n();
    std::vector<ExtremalForm> out;
    for (FormTag tag : tags) {
        const bool basis = tag == FormTag::EtaA || tag == FormTag::SA;
        const auto& pairs = basis ? classifier.basis_pairs() : classifier.generating_pairs();
        for (const auto& [first, second] : pairs) {
            ExtremalForm f{tag, first, second, 0, 0, 0, {}};
            switch (tag) {
            case FormTag::EtaA:
                for (int x : units)
                    for (int s = 1; s <= n; ++s)
                        out.push_back({tag, first, second, x, s, 0, {}});
                break;
            case FormTag::EtaB:
                out.push_back(f);
                break;
            case FormTag::SA:
                for (int x : units)
                    for (int s = 1; s <= n; ++s)
                        for (int t = 1; t <= n; ++t)
                            for (Element g : elements)
                                out.push_back({tag, first, second, x, s, t, g});
                break;
            case FormTag::SB:
                for (Element g : elements)
                    out.push_back({tag, first, second, 0, 0, 0, g});
                break;
            }
        }
    }
    return out;
}

Classifier::Classifier(const Group& group)
    : group_(group)
{
    require_rank_two(group);
    units_ = units_mod(group.m());
    const auto elements = group.elements();
    for (Element first : elements) {
        for (Element second : elements) {
            if (order_of(group, second) != group.exponent())
                continue;
            if (!is_generating_pair(group, first, second))
                continue;
            generators_.emplace_back(first, second);
            if (is_basis_pair(group, first, second))
                bases_.emplace_back(first, second);
        }
    }
}

std::vector<ClassifyMatch> Classifier::classify(const Sequence& seq) const
{
    if (!(seq.group() == group_))
        throw std::invalid_argument("sequence is over a different group");
    const int eta_length = formula_value(group_, Criterion::Short) - 1;
    const int s_length = formula_value(group_, Criterion::ExactExp) - 1;
    if (seq.length() != eta_length && seq.length() != s_length)
        throw std::invalid_argument("not an extremal-length sequence");
    const bool eta = seq.length() == eta_length;
    const int n = group_.n();
    const auto elements = group_.elements();

    std::vector<ClassifyMatch> out;
    auto consider = [&](const ExtremalForm& f) {
        if (matches(seq, form_terms(group_, f)))
            out.push_back({f, x_at_most_half(group_, f)});
    };
    for (const auto& [e1, e2] : bases_) {
        for (int x : units_) {
            for (int s = 1; s <= n; ++s) {
                if (eta) {
                    consider({FormTag::EtaA, e1, e2, x, s, 0, {}});
                    continue;
                }
                for (int t = 1; t <= n; ++t)
                    for (Element g : elements)
                        consider({FormTag::SA, e1, e2, x, s, t, g});
            }
        }
    }
    for (const auto& [g1, g2] : generators_) {
        if (eta) {
            consider({FormTag::EtaB, g1, g2, 0, 0, 0, {}});
            continue;
        }
        for (Element g : elements)
            consider({FormTag::SB, g1, g2, 0, 0, 0, g});
    }
    std::sort(out.begin(), out.end(), [](const ClassifyMatch& a, const ClassifyMatch& b) { return a.form < b.form; });
    return out;
}

std::vector<ClassifyMatch> classify(const Sequence& seq)
{
    return Classifier(seq.group()).classify(seq);
}

namespace {

void sort_unique(std::vector<Sequence>& seqs)
{
    std::sort(seqs.begin(), seqs.end());
    seqs.erase(std::unique(seqs.begin(), seqs.end()), seqs.end());
}

}  // namespace

Enumeration enumerate_extremal(const Group& group, ExtremalKind kind, bool up_to_aut, const SearchOptions& options)
{
    const Criterion c = criterion_of(kind);
    SearchOptions search = options;
    search.collect_all = true;
    search.collect_length = formula_value(group, c) - 1;
    search.symmetry = Symmetry::Automorphisms;
    SearchReport report = longest_lacking(group, c, search);

    Enumeration out;
    out.orbits = report.extremal_examples.size();
    out.nodes = report.nodes_visited;
    out.complete = report.complete;
    if (up_to_aut) {
        out.sequences = std::move(report.extremal_examples);
        return out;
    }
    const auto autos = automorphisms(group);
    for (const Sequence& rep : report.extremal_examples)
        for (const Automorphism& alpha : autos)
            out.sequences.push_back(apply_automorphism(alpha, rep));
    sort_unique(out.sequences);
    return out;
}

std::string_view status_name(CheckStatus status) noexcept
{
    switch (status) {
    case CheckStatus::Verified:
        return "verified";
    case CheckStatus::Counterexample:
        return "counterexample";
    case CheckStatus::Unverified:
        return "unverified";
    }
    return "?";
}

int exit_code(CheckStatus status) noexcept
{
    switch (status) {
    case CheckStatus::Verified:
        return 0;
    case CheckStatus::Counterexample:
        return 1;
    case CheckStatus::Unverified:
        return 3;
    }
    return 3;
}

bool is_power_shape(const Sequence& seq, int k)
{
    if (k < 1)
        throw std::invalid_argument("power must be positive");
    return std::all_of(seq.multiplicities().begin(), seq.multiplicities().end(), [k](int v) { return v % k == 0; });
}

PropertyReport check_property(int m, PropertyName which, const SearchOptions& options)
{
    if (m < 2)
        throw std::invalid_argument("property check requires m >= 2");
    const Group group(m, m);
    const ExtremalKind kind = which == PropertyName::C ? ExtremalKind::Eta : ExtremalKind::S;
    // T^{m-1} shape is preserved by automorphisms, so orbit representatives suffice.
    const Enumeration reps = enumerate_extremal(group, kind, true, options);

    PropertyReport report;
    report.m = m;
    report.which = which;
    report.orbits = reps.orbits;
    report.nodes = reps.nodes;
    for (const Sequence& seq : reps.sequences)
        if (!is_power_shape(seq, m - 1))
            report.counterexamples.push_back(seq);
    if (!report.counterexamples.empty())
        report.status = CheckStatus::Counterexample;
    else if (!reps.complete)
        report.status = CheckStatus::Unverified;
    return report;
}

namespace {

/// All k-multisets of group elements, as index lists in nondecreasing order.
template <class Visit>
void for_each_multiset(int order, int k, Visit&& visit)
{
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        visit(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == order - 1)
            --pos;
        if (pos < 0)
            return;
        const int value = idx[static_cast<std::size_t>(pos)] + 1;
        for (int p = pos; p < k; ++p)
            idx[static_cast<std::size_t>(p)] = value;
    }
}

Sequence power(const Group& group, const std::vector<int>& idx, int k)
{
    Sequence seq(group);
    for (int i : idx)
        seq.add(group.at(i), k);
    return seq;
}

/// (f^{-1} T)^k for the term f of T.
Sequence power_without(const Group& group, const std::vector<int>& idx, int f, int k)
{
    std::vector<int> rest = idx;
    rest.erase(std::find(rest.begin(), rest.end(), f));
    return power(group, rest, k);
}

LemmaReport verify_no_short(int m)
{
    if (m < 2)
        throw std::invalid_argument("lemma requires m >= 2");
    const Group group(m, m);
    const auto units = units_mod(m);
    LemmaReport report{LemmaName::NoShort, m, CheckStatus::Verified, 0, {}, 0, 0, {}};
    for_each_multiset(group.order(), 3, [&](const std::vector<int>& idx) {
        const Sequence seq = power(group, idx, m - 1);
        if (!lacks(seq, Criterion::Short))
            return;
        ++report.instances;
        const Sequence t = power(group, idx, 1);
        const auto support = t.support();
        bool found = false;
        for (Element f1 : support) {
            for (Element f2 : support) {
                if (f1 == f2 || !is_basis_pair(group, f1, f2))
                    continue;
                for (int x : units) {
                    if (2 * x > m)
                        continue;
                    const Element third = group.add(group.scale(-static_cast<long>(x), f1), f2);
                    const Element candidate[] = {f1, f2, third};
                    if (Sequence(group, candidate) == t) {
                        found = true;
                        report.x_values.insert(x);
                    }
                }
            }
        }
        bool zero_sum_free = true;
        for (int f : idx)
            zero_sum_free = zero_sum_free && lacks(power_without(group, idx, f, m - 1), Criterion::Any);
        if (!found || !zero_sum_free)
            report.failures.push_back(seq);
    });
    if (!report.failures.empty())
        report.status = CheckStatus::Counterexample;
    return report;
}

LemmaReport verify_two_m(int m)
{
    if (m < 2)
        throw std::invalid_argument("lemma requires m >= 2");
    const Group group(m, m);
    LemmaReport report{LemmaName::TwoM, m, CheckStatus::Verified, 0, {}, 0, 0, {}};
    for_each_multiset(group.order(), 4, [&](const std::vector<int>& idx) {
        const Sequence seq = power(group, idx, m - 1);
        if (!lacks(seq, Criterion::ExactExp))
            return;
        ++report.instances;
        for (int f : idx) {
            if (has_zero_sum_of_length(power_without(group, idx, f, m - 1), 2 * m)) {
                report.failures.push_back(seq);
                return;
            }
        }
    });
    if (!report.failures.empty())
        report.status = CheckStatus::Counterexample;
    return report;
}

LemmaReport verify_inverse_cyclic(int n, const SearchOptions& options)
{
    if (n < 1)
        throw std::invalid_argument("lemma requires n >= 1");
    const Group group = Group::cyclic(n);
    LemmaReport report{LemmaName::InvCyc, n, CheckStatus::Verified, 0, {}, 0, 0, {}};

    std::vector<Element> generators;
    for (Element e : group.elements())
        if (order_of(group, e) == n)
            generators.push_back(e);

    std::vector<Sequence> expected_any;
    std::vector<Sequence> expected_exact;
    for (Element e : generators) {
        expected_any.push_back(Sequence(group).add(e, n - 1));
        for (Element g : group.elements())
            expected_exact.push_back(Sequence(group).add(g, n - 1).add(group.add(g, e), n - 1));
    }
    sort_unique(expected_any);
    sort_unique(expected_exact);

    bool complete = true;
    auto run = [&](Criterion c, const std::vector<Sequence>& expected, std::size_t& count) {
        SearchOptions search = options;
        search.collect_all = true;
        search.collect_length = formula_value(group, c) - 1;
        search.symmetry = Symmetry::None;
        SearchReport found = longest_lacking(group, c, search);
        complete = complete && found.complete;
        count = found.extremal_examples.size();
        report.instances += count;
        if (found.extremal_examples != expected) {
            std::vector<Sequence> diff;
            std::set_symmetric_difference(found.extremal_examples.begin(), found.extremal_examples.end(),
                                          expected.begin(), expected.end(), std::back_inserter(diff));
            report.failures.insert(report.failures.end(), diff.begin(), diff.end());
        }
    };
    run(Criterion::Any, expected_any, report.any_extremals);
    run(Criterion::ExactExp, expected_exact, report.exact_extremals);
    if (!complete)
        report.status = CheckStatus::Unverified;
    else if (!report.failures.empty())
        report.status = CheckStatus::Counterexample;
    return report;
}

}  // namespace

LemmaReport verify_lemma(LemmaName lemma, int parameter, const SearchOptions& options)
{
    switch (lemma) {
    case LemmaName::NoShort:
        return verify_no_short(parameter);
    case LemmaName::TwoM:
        return verify_two_m(parameter);
    case LemmaName::InvCyc:
        return verify_inverse_cyclic(parameter, options);
    }
    throw std::invalid_argument("unknown lemma");
}

ExpMinusOneReport reproduce_exp_minus_1(int m, int n)
{
    if (m < 2 || n < 3)
        throw std::invalid_argument("requires m >= 2 and n >= 3");
    const Group group(m, static_cast<long>(m) * n);
    const ExtremalForm form{FormTag::SA, {1, 0}, {0, 1}, 1, 2, 2, group.zero()};
    validate_form(group, form);
    Sequence seq = form_sequence(group, form);

    ExpMinusOneReport report{group, seq};
    report.length_is_s_minus_1 = seq.length() == formula_value(group, Criterion::ExactExp) - 1;
    report.lacks_exact_exp = lacks(seq, Criterion::ExactExp);
    report.max_multiplicity = seq.max_multiplicity();
    report.multiplicities_below_exp_minus_1 = report.max_multiplicity < group.exponent() - 1;
    return report;
}

}  // namespace zsum
