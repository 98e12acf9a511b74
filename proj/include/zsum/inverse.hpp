#pragma once

/**
 * @file inverse.hpp
 * @brief Extremal sequences for eta and s over C_m (+) C_{mn}, m >= 2.
 *
 * Four parameterized families, written with a basis {e1, e2} (ord e2 = mn,
 * gcd(x, m) = 1, s, t in [1, n]) or a generating pair {g1, g2} (ord g2 = mn):
 *
 *   EtaA:  e1^{m-1} e2^{sm-1} (-x e1 + e2)^{(n+1-s)m-1}
 *   EtaB:  g1^{m-1} g2^{mn-1} (-g1 + g2)^{m-1}
 *   SA:    g^{tm-1} (e1+g)^{(n+1-t)m-1} (e2+g)^{sm-1} (-x e1 + e2 + g)^{(n+1-s)m-1}
 *   SB:    g^{mn-1} (g1+g)^{m-1} (g2+g)^{mn-1} (-g1 + g2 + g)^{m-1}
 *
 * Eta forms have length eta(G) - 1 and no short zero-sum subsequence; S forms
 * have length s(G) - 1 and no zero-sum subsequence of length exp(G). The
 * families overlap, so a sequence may classify under several parameterizations.
 */

#include "zsum/constants.hpp"
#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace zsum {

enum class FormTag { EtaA, EtaB, SA, SB };

std::string_view form_name(FormTag tag) noexcept;  // "eta_a", ...

enum class ExtremalKind { Eta, S };

Criterion criterion_of(ExtremalKind kind) noexcept;

struct ExtremalForm {
    FormTag tag = FormTag::EtaA;
    Element first;   ///< e1 or g1
    Element second;  ///< e2 or g2
    int x = 0;       ///< EtaA / SA
    int s = 0;       ///< EtaA / SA
    int t = 0;       ///< SA
    Element g;       ///< SA / SB

    bool uses_basis() const noexcept { return tag == FormTag::EtaA || tag == FormTag::SA; }
    bool uses_shift() const noexcept { return tag == FormTag::SA || tag == FormTag::SB; }

    friend bool operator==(const ExtremalForm&, const ExtremalForm&) = default;
    friend auto operator<=>(const ExtremalForm&, const ExtremalForm&) = default;
};

struct ClassifyMatch {
    ExtremalForm form;
    bool x_at_most_half_m = false;  ///< optional normalization x <= m/2 (EtaA / SA)

    friend bool operator==(const ClassifyMatch&, const ClassifyMatch&) = default;
};

/// {"form":"eta_a|eta_b|s_a|s_b","e1":[a,b],"e2":[a,b],"x":..,"s":..,"t":..,"g":[a,b]}, absent fields omitted.
void to_json(nlohmann::json& j, const ClassifyMatch& match);

/// Throws std::invalid_argument naming the violated parameter condition.
void validate_form(const Group& group, const ExtremalForm& form);

/// The literal sequence of the form; asserts its length and zero-sum property.
Sequence construct(const Group& group, const ExtremalForm& form);

/// Every parameterization over the group, for the given tags.
std::vector<ExtremalForm> all_forms(const Group& group, std::span<const FormTag> tags);

/**
 * Brute-force classifier. Precomputes the basis pairs and generating pairs
 * with ord(second) = mn, then scans all parameters for each query.
 */
class Classifier {
public:
    explicit Classifier(const Group& group);

    const Group& group() const noexcept { return group_; }

    /// Every matching parameterization, sorted by (tag, parameters).
    /// Throws std::invalid_argument if |S| is neither eta(G) - 1 nor s(G) - 1.
    std::vector<ClassifyMatch> classify(const Sequence& seq) const;

    const std::vector<std::pair<Element, Element>>& basis_pairs() const noexcept { return bases_; }
    const std::vector<std::pair<Element, Element>>& generating_pairs() const noexcept { return generators_; }

private:
    Group group_;
    std::vector<std::pair<Element, Element>> bases_;
    std::vector<std::pair<Element, Element>> generators_;
    std::vector<int> units_;  ///< x in [1, m-1] with gcd(x, m) = 1
};

std::vector<ClassifyMatch> classify(const Sequence& seq);

struct Enumeration {
    std::vector<Sequence> sequences;
    std::size_t orbits = 0;
    std::uint64_t nodes = 0;
    bool complete = true;
};

/// All sequences of length eta - 1 lacking Short (Eta) or length s - 1 lacking
/// ExactExp (S); with up_to_aut only the least member of each Aut(G)-orbit.
/// Sorted. Uses `options` for workers and node budget.
Enumeration enumerate_extremal(const Group& group, ExtremalKind kind, bool up_to_aut,
                               const SearchOptions& options = {});

enum class CheckStatus { Verified, Counterexample, Unverified };

std::string_view status_name(CheckStatus status) noexcept;

/// Exit code convention: 0 verified, 1 counterexample, 3 unverified.
int exit_code(CheckStatus status) noexcept;

enum class PropertyName { C, D };

struct PropertyReport {
    int m = 0;
    PropertyName which = PropertyName::C;
    CheckStatus status = CheckStatus::Verified;
    std::size_t orbits = 0;  ///< extremal Aut-orbits examined
    std::uint64_t nodes = 0;
    std::vector<Sequence> counterexamples;
};

/// Whether seq = T^k for some T.
bool is_power_shape(const Sequence& seq, int k);

/// Every extremal sequence of C_m (+) C_m (for eta or s) equals T^{m-1}.
PropertyReport check_property(int m, PropertyName which, const SearchOptions& options = {});

enum class LemmaName { NoShort, TwoM, InvCyc };

struct LemmaReport {
    LemmaName lemma = LemmaName::NoShort;
    int parameter = 0;  ///< m, or n for InvCyc
    CheckStatus status = CheckStatus::Verified;
    std::size_t instances = 0;
    std::set<int> x_values;  ///< NoShort: every x appearing in a witness
    std::size_t any_extremals = 0;    ///< InvCyc
    std::size_t exact_extremals = 0;  ///< InvCyc
    std::vector<Sequence> failures;
};

/// NoShort / TwoM take m >= 2; InvCyc takes n >= 1.
LemmaReport verify_lemma(LemmaName lemma, int parameter, const SearchOptions& options = {});

struct ExpMinusOneReport {
    Group group;
    Sequence sequence;
    bool length_is_s_minus_1 = false;
    bool lacks_exact_exp = false;
    int max_multiplicity = 0;
    bool multiplicities_below_exp_minus_1 = false;

    bool holds() const noexcept
    {
        return length_is_s_minus_1 && lacks_exact_exp && multiplicities_below_exp_minus_1;
    }
};

/// SA with e1 = (1,0), e2 = (0,1), x = 1, s = t = 2, g = 0 over C_m (+) C_{mn};
/// requires m >= 2 and n >= 3.
ExpMinusOneReport reproduce_exp_minus_1(int m, int n);

}  // namespace zsum
