#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectile/fourier.hpp"
#include "spectile/groups.hpp"

namespace spectile {

inline constexpr std::int64_t kDefaultNodeBudget = 100'000'000;

enum class SearchStatus { found, none, inconclusive };
const char* to_string(SearchStatus s);

/// Every x in G is hit exactly `level` times by a + t, a in A, t in T.
bool is_tiling(const GroupSubset& a, const GroupSubset& t, std::int64_t level = 1);

/// Z_A u Z_T u {0} == dual. Throws CardinalityMismatch unless |A||T| = |G|.
bool tiling_fourier_criterion(const GroupSubset& a, const GroupSubset& t);

struct TileSearch {
    SearchStatus status = SearchStatus::none;
    std::optional<GroupSubset> complement;
    /// Translate applied so that 0 is in the searched set (the input's minimum element, negated).
    Index shift = 0;
    std::int64_t generated_order = 0;
    /// Why `none` was concluded without search, empty otherwise.
    std::string reason;
    std::int64_t nodes = 0;
};

/// Tiling-complement search.
///
/// A tile of G tiles the subgroup <A> it generates, so the search runs inside
/// <A> (exact cover, most constrained cell first, lexicographic tie-break)
/// and the complement found there is extended by one representative per
/// coset of <A>. Divisibility failures are reported as `none` with a reason;
/// running out of `node_budget` gives `inconclusive`.
TileSearch can_tile(const GroupSubset& a, std::int64_t node_budget = kDefaultNodeBudget);

/// Conditions (a) and (b): |Lambda| = |A| and hat(chi_A) vanishes on every
/// nonzero difference of Lambda.
bool is_spectrum(const GroupSubset& a, const GroupSubset& lambda);

struct SpectrumSearch {
    SearchStatus status = SearchStatus::none;
    std::optional<GroupSubset> spectrum;
    std::int64_t nodes = 0;
};

/// Clique search over the dual, edges xi ~ eta iff xi - eta in Z_A, anchored at 0.
SpectrumSearch find_spectrum(const GroupSubset& a, std::int64_t node_budget = kDefaultNodeBudget);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// Normalizes sign and common factors; throws on a zero denominator.
    static Rational make(std::int64_t num, std::int64_t den);
    bool operator==(const Rational&) const = default;
};

class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
    /// Integer matrix scaled by 1/den.
    static RationalMatrix scaled(const std::vector<std::vector<std::int64_t>>& ints, std::int64_t den);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    /// lcm of all denominators.
    std::int64_t common_denominator() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

/// Rows of exp(2 pi i M) pairwise orthogonal, decided exactly in Z[zeta_D].
bool is_log_hadamard(const RationalMatrix& m);

/// |L| * |T'| = |G| and L - L avoids Z_{T'} (0 counts as outside Z_{T'}).
bool lagarias_condition(const GroupSubset& t_prime, const GroupSubset& l);

struct Obstruction {
    bool holds = false;
    /// Nonzero w in W -> index of the first complement T_j with w outside Z_{T_j}.
    std::map<Index, std::size_t> witness;
    std::vector<Index> uncovered;
};

/// Is every nonzero w in W outside some Z_{T_j}? Subgroup complements are
/// decided through annihilators, other sets by transform evaluation.
Obstruction universal_obstruction(const std::vector<GroupSubset>& complements, const GroupSubset& w);

}  // namespace spectile
