#include "zsum/sequence.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace zsum {

Sequence::Sequence(Group group)
    : group_(group), mult_(static_cast<std::size_t>(group.order()), 0)
{
}

Sequence::Sequence(Group group, std::span<const Element> terms)
    : Sequence(group)
{
    for (Element g : terms)
        add(g);
}

int Sequence::max_multiplicity() const noexcept
{
    return mult_.empty() ? 0 : *std::max_element(mult_.begin(), mult_.end());
}

std::vector<Element> Sequence::support() const
{
    std::vector<Element> out;
    for (int i = 0; i < group_.order(); ++i)
        if (mult_[static_cast<std::size_t>(i)] > 0)
            out.push_back(group_.at(i));
    return out;
}

std::vector<Element> Sequence::terms() const
{
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(length_));
    for (int i = 0; i < group_.order(); ++i)
        out.insert(out.end(), static_cast<std::size_t>(mult_[static_cast<std::size_t>(i)]), group_.at(i));
    return out;
}

Sequence& Sequence::add(Element g, int k)
{
    if (k < 0)
        throw std::invalid_argument("negative multiplicity");
    mult_[static_cast<std::size_t>(group_.index(group_.element(g.a, g.b)))] += k;
    length_ += k;
    return *this;
}

bool Sequence::divides(const Sequence& other) const noexcept
{
    if (!(group_ == other.group_))
        return false;
    for (std::size_t i = 0; i < mult_.size(); ++i)
        if (mult_[i] > other.mult_[i])
            return false;
    return true;
}

std::string Sequence::to_string() const
{
    std::string out;
    for (int i = 0; i < group_.order(); ++i) {
        const int k = mult_[static_cast<std::size_t>(i)];
        if (k == 0)
            continue;
        if (!out.empty())
            out += ' ';
        out += zsum::to_string(group_.at(i));
        if (k > 1)
            out += '^' + std::to_string(k);
    }
    return out;
}

bool operator<(const Sequence& lhs, const Sequence& rhs) noexcept
{
    if (!(lhs.group_ == rhs.group_))
        return std::pair(lhs.group_.n1(), lhs.group_.n2()) < std::pair(rhs.group_.n1(), rhs.group_.n2());
    // Walk both sorted term lists in lockstep, one element class at a time.
    const std::size_t size = lhs.mult_.size();
    for (std::size_t i = 0; i < size; ++i) {
        const int x = lhs.mult_[i];
        const int y = rhs.mult_[i];
        if (x == y)
            continue;
        // The shorter run ends first; the next term of that list is larger
        // than element i unless the list is exhausted.
        const bool lhs_has_more = std::any_of(lhs.mult_.begin() + static_cast<long>(i) + 1, lhs.mult_.end(),
                                              [](int v) { return v > 0; });
        const bool rhs_has_more = std::any_of(rhs.mult_.begin() + static_cast<long>(i) + 1, rhs.mult_.end(),
                                              [](int v) { return v > 0; });
        if (x < y)
            return !lhs_has_more;
        return rhs_has_more;
    }
    return false;
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool done() const { return pos_ >= text_.size(); }
    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
    std::size_t pos() const { return pos_; }

    void expect(char c)
    {
        skip_space();
        if (!peek(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    long integer()
    {
        skip_space();
        const std::size_t start = pos_;
        long value = 0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        if (first != last && *first == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{})
            throw ParseError("expected integer", start);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

    void advance() { ++pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Sequence parse_sequence(const Group& group, std::string_view text)
{
    Sequence seq(group);
    TermParser parser(text);
    parser.skip_space();
    while (!parser.done()) {
        const std::size_t term_start = parser.pos();
        if (!parser.peek('('))
            throw ParseError("malformed term", term_start);
        parser.expect('(');
        const long a = parser.integer();
        parser.expect(',');
        const long b = parser.integer();
        parser.expect(')');
        long k = 1;
        if (parser.peek('^')) {
            parser.advance();
            const bool braced = parser.peek('{');
            if (braced)
                parser.advance();
            const std::size_t exp_start = parser.pos();
            k = parser.integer();
            if (k < 0)
                throw ParseError("negative exponent", exp_start);
            if (braced)
                parser.expect('}');
        }
        if (!parser.done() && !std::isspace(static_cast<unsigned char>(text[parser.pos()])) && !parser.peek('('))
            throw ParseError("malformed term", parser.pos());
        seq.add(group.element(a, b), static_cast<int>(k));
        parser.skip_space();
    }
    return seq;
}

Element sum_of(const Sequence& seq)
{
    const Group& group = seq.group();
    long a = 0;
    long b = 0;
    for (int i = 0; i < group.order(); ++i) {
        const long k = seq.multiplicity_at(i);
        if (k == 0)
            continue;
        const Element g = group.at(i);
        a += k * g.a;
        b += k * g.b;
    }
    return group.element(a, b);
}

Sequence shift(Element h, const Sequence& seq)
{
    const Group& group = seq.group();
    Sequence out(group);
    for (int i = 0; i < group.order(); ++i)
        if (const int k = seq.multiplicity_at(i); k > 0)
            out.add(group.add(group.at(i), h), k);
    return out;
}

Sequence apply_hom(const Group& target, const std::function<Element(Element)>& map, const Sequence& seq)
{
    const Group& group = seq.group();
    Sequence out(target);
    for (int i = 0; i < group.order(); ++i)
        if (const int k = seq.multiplicity_at(i); k > 0)
            out.add(map(group.at(i)), k);
    return out;
}

Sequence apply_automorphism(const Automorphism& alpha, const Sequence& seq)
{
    const Group& group = seq.group();
    return apply_hom(group, [&](Element g) { return alpha.apply(group, g); }, seq);
}

Sequence canonical_form(const Sequence& seq)
{
    const auto autos = automorphisms(seq.group());
    return canonical_form(seq, autos);
}

Sequence canonical_form(const Sequence& seq, std::span<const Automorphism> autos)
{
    Sequence best = seq;
    for (const Automorphism& alpha : autos) {
        Sequence image = apply_automorphism(alpha, seq);
        if (image < best)
            best = std::move(image);
    }
    return best;
}

void to_json(nlohmann::json& j, const Sequence& seq)
{
    const Group& group = seq.group();
    auto terms = nlohmann::json::array();
    for (int i = 0; i < group.order(); ++i) {
        if (const int k = seq.multiplicity_at(i); k > 0) {
            const Element g = group.at(i);
            terms.push_back({{"elem", {g.a, g.b}}, {"mult", k}});
        }
    }
    j = {{"group", {group.n1(), group.n2()}}, {"terms", std::move(terms)}};
}

Sequence sequence_from_json(const nlohmann::json& j)
{
    const auto& g = j.at("group");
    const Group group(g.at(0).get<long>(), g.at(1).get<long>());
    Sequence seq(group);
    for (const auto& term : j.at("terms")) {
        const auto& elem = term.at("elem");
        seq.add(group.element(elem.at(0).get<long>(), elem.at(1).get<long>()), term.at("mult").get<int>());
    }
    return seq;
}

}  // namespace zsum
