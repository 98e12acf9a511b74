#include "zsum/constants.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

namespace zsum {

int formula_value(const Group& group, Criterion c)
{
    if (group.rank() > 2)
        throw std::domain_error("unsupported: rank > 2");
    const int m = group.m();
    const int mn = group.exponent();
    switch (c) {
    case Criterion::Any:
        return m + mn - 1;
    case Criterion::Short:
        return 2 * m + mn - 2;
    case Criterion::ExpMultiple:
        return m + 2 * mn - 2;
    case Criterion::ExactExp:
        return 2 * m + 2 * mn - 3;
    }
    return 0;
}

bool shift_invariant(Criterion c) noexcept
{
    return c == Criterion::ExactExp || c == Criterion::ExpMultiple;
}

void to_json(nlohmann::json& j, const SearchReport& report)
{
    j = nlohmann::json{{"group", {report.group.n1(), report.group.n2()}},
                       {"criterion", criterion_name(report.criterion)},
                       {"computed", report.computed_constant},
                       {"formula", report.formula_constant},
                       {"extremals", report.extremal_examples},
                       {"nodes", report.nodes_visited},
                       {"ms", report.elapsed_ms},
                       {"complete", report.complete}};
}

std::vector<std::vector<int>> symmetry_maps(const Group& group, Criterion c, Symmetry symmetry)
{
    if (symmetry == Symmetry::None)
        return {};
    if (symmetry == Symmetry::Affine && !shift_invariant(c))
        throw std::invalid_argument("affine symmetry requires a shift-invariant criterion");
    if (symmetry == Symmetry::Auto && group.order() > kAutomorphismOrderBound)
        return {};
    const auto autos = automorphisms(group);
    if (symmetry == Symmetry::Auto && autos.size() > 1000)
        return {};
    std::vector<std::vector<int>> maps;
    for (const Automorphism& alpha : autos) {
        auto perm = alpha.permutation(group);
        if (symmetry != Symmetry::Affine) {
            maps.push_back(std::move(perm));
            continue;
        }
        for (int h = 0; h < group.order(); ++h) {
            const Element shift_by = group.at(h);
            std::vector<int> moved(perm.size());
            for (std::size_t i = 0; i < perm.size(); ++i)
                moved[i] = group.index(group.add(group.at(perm[i]), shift_by));
            maps.push_back(std::move(moved));
        }
    }
    std::sort(maps.begin(), maps.end());
    maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
    return maps;
}

namespace {

constexpr std::uint64_t kFlushInterval = 1U << 14;
constexpr std::uint64_t kProgressInterval = 1U << 24;

struct Term {
    int index;
    int count;
};

struct SharedState {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::mutex progress_mutex;
    std::atomic<int> best_depth{0};
};

struct Outcome {
    int best_depth = -1;
    std::vector<Sequence> examples;
    std::uint64_t nodes = 0;
};

class Searcher {
public:
    Searcher(const Group& group, Criterion c, const SearchOptions& options, const std::vector<int>& maps,
             std::size_t map_count, int depth_cap, SharedState& shared)
        : group_(group),
          criterion_(c),
          options_(options),
          maps_(maps),
          map_count_(map_count),
          depth_cap_(depth_cap),
          shared_(shared),
          elements_(group.elements())
    {
        caps_.resize(elements_.size());
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            const int ord = order_of(group, elements_[i]);
            switch (c) {
            case Criterion::Any:
            case Criterion::Short:
                caps_[i] = ord - 1;  // g^{ord g} is a short zero-sum
                break;
            case Criterion::ExactExp:
            case Criterion::ExpMultiple:
                caps_[i] = group.exponent() - 1;
                break;
            }
        }
        stack_.reserve(static_cast<std::size_t>(depth_cap) + 2);
        stack_.emplace_back(group, c);
    }

    /// Visits the node for `prefix` (already validated) and, below max_depth, its subtree.
    void explore(const std::vector<int>& prefix, int stop_depth, std::vector<std::vector<int>>* frontier)
    {
        prefix_.clear();
        terms_.clear();
        stack_.resize(1, LacksTracker(group_, criterion_));
        for (int idx : prefix) {
            LacksTracker next = stack_.back();
            next.push(elements_[static_cast<std::size_t>(idx)]);
            stack_.push_back(std::move(next));
            append_term(idx);
        }
        frontier_ = frontier;
        stop_depth_ = stop_depth;
        visit();
    }

    Outcome take() { return std::exchange(outcome_, Outcome{}); }

    void flush()
    {
        if (pending_ == 0)
            return;
        const std::uint64_t before = shared_.nodes.fetch_add(pending_);
        const std::uint64_t after = before + pending_;
        pending_ = 0;
        if (options_.node_budget != 0 && after > options_.node_budget)
            shared_.stop = true;
        if (options_.progress && before / kProgressInterval != after / kProgressInterval) {
            std::lock_guard lock(shared_.progress_mutex);
            options_.progress({after, shared_.best_depth.load(std::memory_order_relaxed)});
        }
    }

private:
    void append_term(int idx)
    {
        prefix_.push_back(idx);
        if (!terms_.empty() && terms_.back().index == idx)
            ++terms_.back().count;
        else
            terms_.push_back({idx, 1});
    }

    void pop_term()
    {
        prefix_.pop_back();
        if (--terms_.back().count == 0)
            terms_.pop_back();
    }

    bool orbit_minimal()
    {
        const std::size_t size = static_cast<std::size_t>(group_.order());
        const std::size_t s = terms_.size();
        image_.resize(s);
        // maps_[0] is the identity.
        for (std::size_t k = 1; k < map_count_; ++k) {
            const int* perm = maps_.data() + k * size;
            for (std::size_t t = 0; t < s; ++t) {
                Term term{perm[terms_[t].index], terms_[t].count};
                std::size_t pos = t;
                while (pos > 0 && image_[pos - 1].index > term.index) {
                    image_[pos] = image_[pos - 1];
                    --pos;
                }
                image_[pos] = term;
            }
            for (std::size_t t = 0; t < s; ++t) {
                if (image_[t].index != terms_[t].index) {
                    if (image_[t].index < terms_[t].index)
                        return false;
                    break;
                }
                if (image_[t].count != terms_[t].count) {
                    if (image_[t].count > terms_[t].count)
                        return false;
                    break;
                }
            }
        }
        return true;
    }

    void record()
    {
        const int depth = static_cast<int>(prefix_.size());
        if (depth > depth_cap_)
            throw std::logic_error("search depth exceeded safety cap " + std::to_string(depth_cap_)
                                   + " for criterion " + std::string(criterion_name(criterion_)));
        if (depth > outcome_.best_depth) {
            outcome_.best_depth = depth;
            int seen = shared_.best_depth.load(std::memory_order_relaxed);
            while (seen < depth && !shared_.best_depth.compare_exchange_weak(seen, depth, std::memory_order_relaxed)) {
            }
            if (!options_.collect_length)
                outcome_.examples.clear();
        }
        const bool wanted = options_.collect_length ? depth == *options_.collect_length
                                                    : depth == outcome_.best_depth;
        if (wanted && (options_.collect_all || outcome_.examples.empty()))
            outcome_.examples.push_back(current_sequence());
    }

    Sequence current_sequence() const
    {
        Sequence seq(group_);
        for (const Term& t : terms_)
            seq.add(elements_[static_cast<std::size_t>(t.index)], t.count);
        return seq;
    }

    void visit()
    {
        const int depth = static_cast<int>(prefix_.size());
        if (frontier_ != nullptr && depth == stop_depth_) {
            frontier_->push_back(prefix_);
            return;
        }
        ++outcome_.nodes;
        if (++pending_ == kFlushInterval)
            flush();
        record();
        if (shared_.stop.load(std::memory_order_relaxed))
            return;
        const int last = prefix_.empty() ? 0 : prefix_.back();
        const int last_count = terms_.empty() ? 0 : terms_.back().count;
        for (int j = last; j < group_.order(); ++j) {
            if (j == last && !prefix_.empty() && last_count >= caps_[static_cast<std::size_t>(j)])
                continue;
            if (caps_[static_cast<std::size_t>(j)] == 0)
                continue;
            LacksTracker next = stack_.back();
            if (!next.push(elements_[static_cast<std::size_t>(j)]))
                continue;
            append_term(j);
            if (map_count_ <= 1 || orbit_minimal()) {
                stack_.push_back(std::move(next));
                visit();
                stack_.pop_back();
            }
            pop_term();
            if (shared_.stop.load(std::memory_order_relaxed))
                return;
        }
    }

    const Group& group_;
    Criterion criterion_;
    const SearchOptions& options_;
    const std::vector<int>& maps_;
    std::size_t map_count_;
    int depth_cap_;
    SharedState& shared_;
    std::vector<Element> elements_;
    std::vector<int> caps_;

    std::vector<LacksTracker> stack_;
    std::vector<int> prefix_;
    std::vector<Term> terms_;
    std::vector<Term> image_;
    std::vector<std::vector<int>>* frontier_ = nullptr;
    int stop_depth_ = -1;
    std::uint64_t pending_ = 0;
    Outcome outcome_;
};

void merge(Outcome& into, Outcome&& from, const SearchOptions& options)
{
    into.nodes += from.nodes;
    if (from.best_depth < 0)
        return;
    if (options.collect_length || from.best_depth == into.best_depth) {
        into.examples.insert(into.examples.end(), std::make_move_iterator(from.examples.begin()),
                             std::make_move_iterator(from.examples.end()));
        into.best_depth = std::max(into.best_depth, from.best_depth);
    } else if (from.best_depth > into.best_depth) {
        into.best_depth = from.best_depth;
        into.examples = std::move(from.examples);
    }
}

}  // namespace

SearchReport longest_lacking(const Group& group, Criterion c, const SearchOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    if (options.workers < 1)
        throw std::invalid_argument("workers must be >= 1");

    SearchReport report{group, c, 0, formula_value(group, c), {}, 0, 0.0, true};
    const auto map_tables = symmetry_maps(group, c, options.symmetry);
    std::vector<int> maps;
    for (const auto& perm : map_tables)
        maps.insert(maps.end(), perm.begin(), perm.end());
    const int depth_cap = report.formula_constant + 1;

    SharedState shared;
    Outcome total;

    // The first two levels run here and become independent tasks.
    std::vector<std::vector<int>> tasks;
    {
        Searcher head(group, c, options, maps, map_tables.size(), depth_cap, shared);
        head.explore({}, 2, &tasks);
        head.flush();
        total = head.take();
    }

    std::vector<Outcome> results(tasks.size());
    std::atomic<std::size_t> next_task{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        Searcher searcher(group, c, options, maps, map_tables.size(), depth_cap, shared);
        try {
            for (std::size_t t = next_task++; t < tasks.size(); t = next_task++) {
                searcher.explore(tasks[t], -1, nullptr);
                searcher.flush();
                results[t] = searcher.take();
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            failure = std::current_exception();
            shared.stop = true;
        }
    };
    const int threads = std::min<int>(options.workers, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    for (auto& r : results)
        merge(total, std::move(r), options);

    std::sort(total.examples.begin(), total.examples.end());
    total.examples.erase(std::unique(total.examples.begin(), total.examples.end()), total.examples.end());
    if (!options.collect_all && total.examples.size() > 1)
        total.examples.erase(total.examples.begin() + 1, total.examples.end());

    report.complete = !shared.stop.load();
    report.computed_constant = total.best_depth + 1;
    report.extremal_examples = std::move(total.examples);
    report.nodes_visited = total.nodes;
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    for (const Sequence& e : report.extremal_examples) {
        if (!lacks(e, c))
            throw std::logic_error("search produced a sequence that does not lack " + std::string(criterion_name(c)));
        if (!options.collect_length && e.length() != report.computed_constant - 1)
            throw std::logic_error("extremal example has the wrong length");
    }
    return report;
}

DirectCheck check_direct_formulas(const Group& group, const SearchOptions& options)
{
    DirectCheck check;
    for (Criterion c : kAllCriteria) {
        check.reports.push_back(longest_lacking(group, c, options));
        if (!check.reports.back().matches_formula()) {
            check.all_match = false;
            check.mismatches.push_back(c);
        }
    }
    return check;
}

}  // namespace zsum
