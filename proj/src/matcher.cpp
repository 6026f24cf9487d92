#include "acir/matcher.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>

namespace acir {

std::vector<Path> check_c1(const Source& src, FluentId query, const FluentSet& f,
                           const QualifiedActionSequence& s, const PartialState& eps,
                           const Domain& dom, TransitionCache* cache, TransitionTrace* trace) {
    (void)src;
    const Completion comp = completion_set(eps, f, dom);
    std::vector<Path> all = models(comp.states, s, dom, cache, trace);
    std::vector<Path> entailing;
    for (Path& pi : all) {
        if (entails_pm(pi, query)) entailing.push_back(std::move(pi));
    }
    return entailing;
}

bool check_c2(const Source& src, FluentId query, const Path& pi, const PartialState& eps,
              const Domain& dom) {
    (void)src;
    const StateSet& sigma0 = pi.initial();
    // X: the plain literals of the initial state that ε did not grant.
    PartialState x(dom.fluent_count());
    for (FluentId f = 0; f < dom.fluent_count(); ++f) {
        const Tri v = sigma0.at(f);
        if (v == Tri::Unknown) continue;
        if (eps.get(f) == v) continue;
        x.assign(f, v);
    }
    const Tri outcome = pi.final().at(query);
    assert(outcome != Tri::Unknown && "check_c2 expects a path that entails ±q");

    for (const StateSet& view : completion_set(x, {}, dom).states) {
        const Tri v = view.at(query);
        const bool acceptable = v == Tri::Unknown ||
                                (v == Tri::False && outcome == Tri::True) ||
                                (v == Tri::True && outcome == Tri::False);
        if (!acceptable) return false;
    }
    return true;
}

// ── Candidate enumeration ───────────────────────────────────────────────────

CandidateIterator::CandidateIterator(const Source& src, const Domain& dom, std::uint32_t budget)
    : src_(&src), dom_(&dom), budget_(budget), forced_size_(0) {
    capacity_.reserve(src.sequence.size());
    for (const Action& a : src.sequence) {
        capacity_.push_back(dom.potential_u_effects(a));
        if (capacity_.back().size() >= 64)
            throw CapExceededError("qualifier space over 64 fluents at one step");
    }
    qual_masks_.assign(capacity_.size(), 0);

    // Start with the smallest F size that can meet the budget.
    std::size_t total_capacity = 0;
    for (const FluentSet& c : capacity_) total_capacity += c.size();
    const std::size_t nf = dom.fluent_count();
    std::size_t min_forced = budget_ > total_capacity ? budget_ - total_capacity : 0;
    if (min_forced > nf) {
        done_ = true;
        return;
    }
    forced_size_ = min_forced;
    forced_.resize(forced_size_);
    for (std::size_t k = 0; k < forced_size_; ++k) forced_[k] = static_cast<FluentId>(k);
    if (!seed_qualifiers(budget_ - static_cast<std::uint32_t>(forced_size_))) {
        // No qualifier assignment of that size; advance_forced leaves the
        // iterator on the first valid candidate when one exists.
        if (!advance_forced()) done_ = true;
    }
}

std::uint32_t CandidateIterator::max_budget(const Source& src, const Domain& dom) {
    std::size_t total = dom.fluent_count();
    for (const Action& a : src.sequence) total += dom.potential_u_effects(a).size();
    return static_cast<std::uint32_t>(total);
}

// Seeds per-step masks with the lexicographically first assignment whose
// total popcount equals `total`; false when impossible.
bool CandidateIterator::seed_qualifiers(std::uint32_t total) {
    std::size_t remaining = total;
    for (std::size_t i = 0; i < capacity_.size(); ++i) qual_masks_[i] = 0;
    for (std::size_t i = 0; i < capacity_.size() && remaining > 0; ++i) {
        const std::size_t take = std::min(remaining, capacity_[i].size());
        qual_masks_[i] = (take == 64) ? ~0ull : ((1ull << take) - 1);
        remaining -= take;
    }
    return remaining == 0;
}

// Advances the per-step masks to the next assignment with the same total
// size; the order is: step 0's subset pattern varies fastest.
bool CandidateIterator::advance_qualifiers() {
    const std::uint32_t total = budget_ - static_cast<std::uint32_t>(forced_size_);
    // Odometer over the concatenated mask space, filtered by total popcount.
    while (true) {
        std::size_t i = 0;
        for (; i < capacity_.size(); ++i) {
            const std::uint64_t limit = 1ull << capacity_[i].size();
            if (qual_masks_[i] + 1 < limit) {
                ++qual_masks_[i];
                break;
            }
            qual_masks_[i] = 0;
        }
        if (i == capacity_.size()) return false;
        std::size_t pop = 0;
        for (std::uint64_t m : qual_masks_) pop += static_cast<std::size_t>(std::popcount(m));
        if (pop == total) return true;
    }
}

bool CandidateIterator::advance_forced() {
    const std::size_t nf = dom_->fluent_count();
    while (true) {
        // Next combination of the current size.
        std::size_t k = forced_size_;
        while (k > 0) {
            --k;
            if (forced_[k] + (forced_size_ - k) < nf) {
                ++forced_[k];
                for (std::size_t j = k + 1; j < forced_size_; ++j)
                    forced_[j] = static_cast<FluentId>(forced_[k] + (j - k));
                if (seed_qualifiers(budget_ - static_cast<std::uint32_t>(forced_size_)))
                    return true;
                k = forced_size_;  // this combination has no qualifier seed; keep going
            }
        }
        // Exhausted this size; grow F.
        ++forced_size_;
        if (forced_size_ > std::min<std::size_t>(nf, budget_)) return false;
        forced_.resize(forced_size_);
        for (std::size_t j = 0; j < forced_size_; ++j) forced_[j] = static_cast<FluentId>(j);
        if (seed_qualifiers(budget_ - static_cast<std::uint32_t>(forced_size_))) return true;
    }
}

bool CandidateIterator::next(FluentSet& f, QualifiedActionSequence& s) {
    if (done_) return false;
    if (!fresh_) {
        if (!advance_qualifiers() && !advance_forced()) {
            done_ = true;
            return false;
        }
    }
    fresh_ = false;
    f = forced_;
    s.clear();
    s.reserve(src_->sequence.size());
    for (std::size_t i = 0; i < src_->sequence.size(); ++i) {
        Qualifier q;
        for (std::size_t b = 0; b < capacity_[i].size(); ++b)
            if (qual_masks_[i] & (1ull << b)) q.push_back(capacity_[i][b]);
        s.push_back(QualifiedStep{src_->sequence[i], std::move(q)});
    }
    return true;
}

// ── FindMatch ───────────────────────────────────────────────────────────────

MatchResult find_match(const Source& src, const Query& q, const MatchOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    const auto query = src.signature.fluent_index(q.fluent);
    if (!query) throw QueryNotInSignatureError(q.fluent);

    MatchResult result;
    const Domain dom(src);
    TransitionCache cache;

    const auto eps = conservative_expansion(initial_of(src), src.sequence, dom, &cache);
    if (!eps) {
        result.diagnostics.expansion_missing = true;
        result.diagnostics.wall_ms = elapsed_ms();
        return result;
    }

    const std::uint32_t exhaustive = CandidateIterator::max_budget(src, dom);
    const std::uint32_t last = std::min(exhaustive, opts.max_budget);

    FluentSet f;
    QualifiedActionSequence s;
    for (std::uint32_t budget = 0; budget <= last; ++budget) {
        CandidateIterator it(src, dom, budget);
        while (it.next(f, s)) {
            ++result.diagnostics.candidates_tried;
            std::vector<Path> paths = check_c1(src, *query, f, s, *eps, dom, &cache, opts.trace);
            result.diagnostics.models_enumerated += paths.size();
            for (const Path& pi : paths) {
                if (!check_c2(src, *query, pi, *eps, dom)) continue;
                result.matched = true;
                result.score = Score::finite(budget);
                result.witness_forced = f;
                result.witness_sequence = s;
                result.witness_path = pi;
                result.diagnostics.highest_budget = budget;
                result.diagnostics.wall_ms = elapsed_ms();
                return result;
            }
        }
        result.diagnostics.highest_budget = budget;
    }

    result.diagnostics.budget_capped = opts.max_budget < exhaustive;
    result.diagnostics.wall_ms = elapsed_ms();
    return result;
}

Score score(const Source& src, const Query& q, const MatchOptions& opts) {
    return find_match(src, q, opts).score;
}

}  // namespace acir
