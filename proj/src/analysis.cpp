#include "spectile/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "spectile/errors.hpp"

namespace spectile {

namespace {

void require_same_group(const GroupSubset& a, const GroupSubset& b, const char* what) {
    if (!(a.group() == b.group()))
        throw GroupMismatch(std::string(what) + ": " + a.group().to_string() + " vs " + b.group().to_string());
}

// Exact cover of the cells of a subgroup S by translates A + t, t in S.
class CoverSearch {
public:
    CoverSearch(const GroupSubset& tile, const GroupSubset& region, std::int64_t budget)
        : g_(tile.group()), budget_(budget) {
        const auto m = region.size();
        local_.assign(static_cast<std::size_t>(g_.order()), -1);
        cell_elem_.assign(region.members().begin(), region.members().end());
        for (std::size_t i = 0; i < m; ++i) local_[cell_elem_[i]] = static_cast<std::int32_t>(i);

        k_ = tile.size();
        cells_.resize(m * k_);
        for (std::size_t t = 0; t < m; ++t) {
            std::size_t slot = 0;
            for (auto a : tile.members()) cells_[t * k_ + slot++] = local_[g_.add(a, cell_elem_[t])];
        }
        // placements through cell c are t = c - a
        holders_.resize(m * k_);
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t slot = 0;
            for (auto a : tile.members()) holders_[c * k_ + slot++] = local_[g_.sub(cell_elem_[c], a)];
        }
        covered_.assign(m, 0);
        alive_.assign(m, 1);
        count_.assign(m, static_cast<std::int32_t>(k_));
    }

    SearchStatus run() {
        const std::size_t m = covered_.size();
        const std::size_t target = m / k_;
        std::vector<Frame> stack;
        while (true) {
            if (placed_.size() == target) return SearchStatus::found;
            auto cell = pick_cell();
            if (cell >= 0) {
                Frame f;
                f.killed_start = killed_.size();
                for (std::size_t s = 0; s < k_; ++s) {
                    auto t = holders_[static_cast<std::size_t>(cell) * k_ + s];
                    if (alive_[t]) f.cands.push_back(t);
                }
                std::sort(f.cands.begin(), f.cands.end());
                stack.push_back(std::move(f));
            }
            // Advance: try the next candidate of the deepest frame.
            bool advanced = false;
            while (!stack.empty()) {
                auto& f = stack.back();
                if (f.has_placed) {
                    undo(f);
                    f.has_placed = false;
                }
                if (f.pos < f.cands.size()) {
                    if (++nodes_ > budget_) return SearchStatus::inconclusive;
                    place(f, f.cands[f.pos++]);
                    advanced = true;
                    break;
                }
                stack.pop_back();
            }
            if (!advanced) return SearchStatus::none;
        }
    }

    std::vector<Index> placements() const {
        std::vector<Index> out;
        for (auto t : placed_) out.push_back(cell_elem_[t]);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::int64_t nodes() const { return nodes_; }

private:
    struct Frame {
        std::vector<std::int32_t> cands;
        std::size_t pos = 0;
        std::size_t killed_start = 0;
        bool has_placed = false;
    };

    // Uncovered cell with the fewest live placements; -1 forces a backtrack.
    std::int64_t pick_cell() const {
        std::int64_t best = -1;
        std::int32_t best_count = 0;
        for (std::size_t c = 0; c < covered_.size(); ++c) {
            if (covered_[c]) continue;
            if (count_[c] == 0) return -1;
            if (best < 0 || count_[c] < best_count) {
                best = static_cast<std::int64_t>(c);
                best_count = count_[c];
                if (best_count == 1) break;
            }
        }
        return best;
    }

    void place(Frame& f, std::int32_t t) {
        f.killed_start = killed_.size();
        f.has_placed = true;
        placed_.push_back(t);
        for (std::size_t s = 0; s < k_; ++s) {
            auto c = cells_[static_cast<std::size_t>(t) * k_ + s];
            covered_[c] = 1;
            for (std::size_t r = 0; r < k_; ++r) {
                auto h = holders_[static_cast<std::size_t>(c) * k_ + r];
                if (!alive_[h]) continue;
                alive_[h] = 0;
                killed_.push_back(h);
                for (std::size_t q = 0; q < k_; ++q) --count_[cells_[static_cast<std::size_t>(h) * k_ + q]];
            }
        }
    }

    void undo(const Frame& f) {
        while (killed_.size() > f.killed_start) {
            auto h = killed_.back();
            killed_.pop_back();
            alive_[h] = 1;
            for (std::size_t q = 0; q < k_; ++q) ++count_[cells_[static_cast<std::size_t>(h) * k_ + q]];
        }
        auto t = placed_.back();
        placed_.pop_back();
        for (std::size_t s = 0; s < k_; ++s) covered_[cells_[static_cast<std::size_t>(t) * k_ + s]] = 0;
    }

    const Group& g_;
    std::int64_t budget_;
    std::size_t k_ = 0;
    std::vector<std::int32_t> local_;
    std::vector<Index> cell_elem_;
    std::vector<std::int32_t> cells_;
    std::vector<std::int32_t> holders_;
    std::vector<std::uint8_t> covered_;
    std::vector<std::uint8_t> alive_;
    std::vector<std::int32_t> count_;
    std::vector<std::int32_t> killed_;
    std::vector<std::int32_t> placed_;
    std::int64_t nodes_ = 0;
};

}  // namespace

const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none: return "none";
        case SearchStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

bool is_tiling(const GroupSubset& a, const GroupSubset& t, std::int64_t level) {
    require_same_group(a, t, "is_tiling");
    if (level < 1) throw std::invalid_argument("tiling level must be positive");
    const auto& g = a.group();
    if (static_cast<std::int64_t>(a.size() * t.size()) != level * g.order()) return false;
    std::vector<std::int64_t> cover(static_cast<std::size_t>(g.order()), 0);
    for (auto x : a.members())
        for (auto y : t.members())
            if (++cover[g.add(x, y)] > level) return false;
    return std::all_of(cover.begin(), cover.end(), [level](auto c) { return c == level; });
}

bool tiling_fourier_criterion(const GroupSubset& a, const GroupSubset& t) {
    require_same_group(a, t, "tiling_fourier_criterion");
    const auto& g = a.group();
    if (static_cast<std::int64_t>(a.size() * t.size()) != g.order())
        throw CardinalityMismatch(std::to_string(a.size()) + " * " + std::to_string(t.size()) +
                                  " != " + std::to_string(g.order()));
    const auto za = zero_set(a);
    const auto zt = zero_set(t);
    for (Index xi = 1; xi < g.order(); ++xi)
        if (!za.contains(xi) && !zt.contains(xi)) return false;
    return true;
}

TileSearch can_tile(const GroupSubset& a, std::int64_t node_budget) {
    if (a.empty()) throw std::invalid_argument("can_tile needs a nonempty set");
    if (node_budget < 1) throw std::invalid_argument("search budget must be positive");
    const auto& g = a.group();
    TileSearch out;
    out.shift = g.neg(a.members().front());
    const auto a0 = a.translate(out.shift);
    const auto k = static_cast<std::int64_t>(a0.size());

    if (g.order() % k != 0) {
        out.reason = "|A| = " + std::to_string(k) + " does not divide |G| = " + std::to_string(g.order());
        return out;
    }
    const auto sub = subgroup_generated(a0);
    out.generated_order = static_cast<std::int64_t>(sub.size());
    if (out.generated_order % k != 0) {
        out.reason = "|A| = " + std::to_string(k) + " does not divide |<A>| = " + std::to_string(out.generated_order) +
                     "; a tile of G tiles the subgroup it generates";
        return out;
    }

    std::vector<Index> inner;
    if (k == 1) {
        inner.assign(sub.members().begin(), sub.members().end());
    } else if (k == out.generated_order) {
        inner = {0};
    } else {
        CoverSearch search(a0, sub, node_budget);
        out.status = search.run();
        out.nodes = search.nodes();
        if (out.status != SearchStatus::found) {
            if (out.status == SearchStatus::none) out.reason = "exhaustive search inside <A> found no complement";
            return out;
        }
        inner = search.placements();
    }

    // One representative per coset of <A>, smallest index first.
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<Index> complement;
    for (Index r = 0; r < g.order(); ++r) {
        if (seen[r]) continue;
        for (auto s : sub.members()) seen[g.add(s, r)] = 1;
        for (auto t : inner) complement.push_back(g.add(t, r));
    }
    out.status = SearchStatus::found;
    out.complement = GroupSubset(g, std::move(complement));
    return out;
}

bool is_spectrum(const GroupSubset& a, const GroupSubset& lambda) {
    require_same_group(a, lambda, "is_spectrum");
    if (lambda.size() != a.size()) return false;
    const auto& g = a.group();
    // 0 = unknown, 1 = zero, 2 = nonzero
    std::vector<std::uint8_t> memo(static_cast<std::size_t>(g.order()), 0);
    for (auto x : lambda.members()) {
        for (auto y : lambda.members()) {
            if (x == y) continue;
            auto d = g.sub(x, y);
            if (!memo[d]) memo[d] = cyc_is_zero(ft_indicator_at(a, d)) ? 1 : 2;
            if (memo[d] == 2) return false;
        }
    }
    return true;
}

namespace {

class CliqueSearch {
public:
    CliqueSearch(const GroupSubset& zeros, std::size_t target, std::int64_t budget)
        : zeros_(zeros), g_(zeros.group()), target_(target), budget_(budget) {}

    SearchStatus run() {
        clique_ = {0};
        std::vector<Index> cands(zeros_.members().begin(), zeros_.members().end());
        return extend(cands);
    }
    const std::vector<Index>& clique() const { return clique_; }
    std::int64_t nodes() const { return nodes_; }

private:
    SearchStatus extend(const std::vector<Index>& cands) {
        if (clique_.size() == target_) return SearchStatus::found;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (clique_.size() + (cands.size() - i) < target_) break;
            if (++nodes_ > budget_) return SearchStatus::inconclusive;
            auto c = cands[i];
            std::vector<Index> next;
            for (std::size_t j = i + 1; j < cands.size(); ++j)
                if (zeros_.contains(g_.sub(cands[j], c))) next.push_back(cands[j]);
            clique_.push_back(c);
            auto r = extend(next);
            if (r != SearchStatus::none) return r;
            clique_.pop_back();
        }
        return SearchStatus::none;
    }

    const GroupSubset& zeros_;
    const Group& g_;
    std::size_t target_;
    std::int64_t budget_;
    std::vector<Index> clique_;
    std::int64_t nodes_ = 0;
};

}  // namespace

SpectrumSearch find_spectrum(const GroupSubset& a, std::int64_t node_budget) {
    if (a.empty()) throw std::invalid_argument("find_spectrum needs a nonempty set");
    if (node_budget < 1) throw std::invalid_argument("search budget must be positive");
    SpectrumSearch out;
    const auto zeros = zero_set(a);
    CliqueSearch search(zeros, a.size(), node_budget);
    out.status = search.run();
    out.nodes = search.nodes();
    if (out.status == SearchStatus::found) out.spectrum = GroupSubset(a.group(), search.clique());
    return out;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Rational{num / g, den / g};
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw std::invalid_argument("matrix entry count differs from rows * cols");
    for (auto& e : entries_) e = Rational::make(e.num, e.den);
}

RationalMatrix RationalMatrix::scaled(const std::vector<std::vector<std::int64_t>>& ints, std::int64_t den) {
    const auto rows = ints.size();
    const auto cols = rows ? ints.front().size() : 0;
    std::vector<Rational> entries;
    for (const auto& row : ints) {
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");
        for (auto v : row) entries.push_back(Rational::make(v, den));
    }
    return RationalMatrix(rows, cols, std::move(entries));
}

std::int64_t RationalMatrix::common_denominator() const {
    std::int64_t d = 1;
    for (const auto& e : entries_) d = std::lcm(d, e.den);
    return d;
}

bool is_log_hadamard(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("log-Hadamard test needs a square matrix");
    const auto d = m.common_denominator();
    auto exponent = [&](std::size_t i, std::size_t j) {
        const auto& e = m.at(i, j);
        auto v = (e.num % e.den) * (d / e.den) % d;
        return v < 0 ? v + d : v;
    };
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.rows(); ++j) {
            CycInt s(d);
            for (std::size_t k = 0; k < m.cols(); ++k) s.add_root(exponent(i, k) - exponent(j, k));
            if (!cyc_is_zero(s)) return false;
        }
    }
    return true;
}

bool lagarias_condition(const GroupSubset& t_prime, const GroupSubset& l) {
    require_same_group(t_prime, l, "lagarias_condition");
    const auto& g = t_prime.group();
    if (static_cast<std::int64_t>(l.size() * t_prime.size()) != g.order()) return false;
    if (l.empty()) return false;
    const auto diffs = difference_set(l);
    for (auto d : diffs.members())
        if (cyc_is_zero(ft_indicator_at(t_prime, d))) return false;
    return true;
}

Obstruction universal_obstruction(const std::vector<GroupSubset>& complements, const GroupSubset& w) {
    for (const auto& t : complements) require_same_group(t, w, "universal_obstruction");
    // For a subgroup T, w lies outside Z_T exactly when w annihilates T.
    std::vector<std::optional<GroupSubset>> ann;
    for (const auto& t : complements)
        ann.push_back(t.is_subgroup() ? std::optional<GroupSubset>(annihilator(t)) : std::nullopt);

    Obstruction out;
    for (auto x : w.members()) {
        if (x == 0) continue;
        bool hit = false;
        for (std::size_t j = 0; j < complements.size() && !hit; ++j) {
            hit = ann[j] ? ann[j]->contains(x) : !cyc_is_zero(ft_indicator_at(complements[j], x));
            if (hit) out.witness[x] = j;
        }
        if (!hit) out.uncovered.push_back(x);
    }
    out.holds = out.uncovered.empty();
    return out;
}

}  // namespace spectile
