#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spectile {

using Index = std::int64_t;

/// A coordinate vector of a product of cyclic groups, every entry reduced
/// into [0, n_j). Doubles as a character label of the dual group.
struct Elem {
    std::vector<std::int64_t> coords;

    bool operator==(const Elem&) const = default;
    auto operator<=>(const Elem&) const = default;
};

/// Finite abelian group Z_{n_1} x ... x Z_{n_d}.
///
/// Elements are indexed mixed-radix with coordinate 1 most significant:
///   index(x) = ((x_1 * n_2 + x_2) * n_3 + x_3) * ... + x_d
/// This order is frozen; certificates and zero-set listings depend on it.
class Group {
public:
    /// Throws std::invalid_argument on an empty vector or a modulus < 1.
    explicit Group(std::vector<std::int64_t> moduli);

    std::span<const std::int64_t> moduli() const { return moduli_; }
    std::int64_t modulus(std::size_t axis) const { return moduli_[axis]; }
    std::size_t dim() const { return moduli_.size(); }
    std::int64_t order() const { return order_; }
    /// lcm of the moduli.
    std::int64_t exponent() const { return exponent_; }
    /// Distance in index space between neighbours along `axis`.
    std::int64_t stride(std::size_t axis) const { return strides_[axis]; }

    Elem element(Index i) const;
    Index index_of(const Elem& x) const;
    /// Reduces arbitrary integers into canonical coordinates.
    Elem reduce(std::span<const std::int64_t> raw) const;
    bool is_canonical(std::span<const std::int64_t> coords) const;
    /// Coordinate `axis` of the element with index `i`.
    std::int64_t digit(Index i, std::size_t axis) const {
        return (i / strides_[axis]) % moduli_[axis];
    }

    Index add(Index a, Index b) const;
    Index sub(Index a, Index b) const;
    Index neg(Index a) const;
    /// m * a for an integer multiplier (may be negative).
    Index scale(Index a, std::int64_t m) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem zero() const { return Elem{std::vector<std::int64_t>(moduli_.size(), 0)}; }

    std::string to_string() const;

    bool operator==(const Group& other) const { return moduli_ == other.moduli_; }

private:
    std::vector<std::int64_t> moduli_;
    std::vector<std::int64_t> strides_;
    std::int64_t order_ = 1;
    std::int64_t exponent_ = 1;
};

inline Group make_group(std::vector<std::int64_t> moduli) { return Group(std::move(moduli)); }

/// A subset of a Group, kept both as a sorted index list and a dense bitmap.
class GroupSubset {
public:
    /// Indices may arrive unsorted and with duplicates; they are normalized.
    /// Throws std::out_of_range for an index outside [0, order).
    GroupSubset(Group group, std::vector<Index> members);
    static GroupSubset from_elems(const Group& group, std::span<const Elem> elems);
    static GroupSubset from_bitmap(Group group, std::vector<std::uint8_t> bitmap);
    static GroupSubset whole(const Group& group);
    static GroupSubset singleton_zero(const Group& group);

    const Group& group() const { return group_; }
    std::span<const Index> members() const { return members_; }
    std::span<const std::uint8_t> bitmap() const { return bitmap_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Index i) const { return i >= 0 && i < group_.order() && bitmap_[i] != 0; }
    bool contains(const Elem& x) const { return contains(group_.index_of(x)); }
    std::vector<Elem> elems() const;

    GroupSubset translate(Index t) const;
    GroupSubset negate() const;
    /// Closed under addition (hence a subgroup, the group being finite).
    bool is_subgroup() const;

    bool operator==(const GroupSubset& other) const {
        return group_ == other.group_ && members_ == other.members_;
    }

private:
    Group group_;
    std::vector<Index> members_;
    std::vector<std::uint8_t> bitmap_;
};

/// x -> sum_j v_j x_j mod m on a group whose moduli all equal m.
class Functional {
public:
    /// Throws std::invalid_argument unless every modulus equals `target_modulus`.
    Functional(Group group, Elem v, std::int64_t target_modulus);

    const Group& group() const { return group_; }
    const Elem& vector() const { return v_; }
    std::int64_t target_modulus() const { return m_; }
    std::int64_t operator()(const Elem& x) const;

private:
    Group group_;
    Elem v_;
    std::int64_t m_;
};

/// {a - b : a, b in A}. Throws std::invalid_argument if A is empty.
GroupSubset difference_set(const GroupSubset& a);
/// The subgroup {x : phi(x) = 0}.
GroupSubset kernel_of_functional(const Functional& phi);
/// Smallest subgroup containing A, by closure. Throws on empty A.
GroupSubset subgroup_generated(const GroupSubset& a);
/// A small generating set of a subgroup: greedy in index order.
std::vector<Index> generators_of(const GroupSubset& subgroup);
/// {xi : <x, xi> = 0 for all x in S}, as a subset of the dual (same moduli).
/// Throws NotASubgroup when S is not closed under addition.
GroupSubset annihilator(const GroupSubset& s);
/// The subgroup of G generated by one element.
GroupSubset cyclic_subgroup(const Group& group, Index generator);

/// Quotient of G by the coordinate-aligned subgroup H = prod d_j Z_{n_j}.
///
/// The quotient is prod Z_{d_j} over the axes with d_j > 1 (trivial
/// factors are dropped; if every d_j is 1 the quotient is Z_1).
class CoordinateQuotient {
public:
    const Group& source() const { return source_; }
    const Group& quotient() const { return quotient_; }
    std::span<const std::int64_t> divisors() const { return divisors_; }

    Elem project(const Elem& x) const;
    Index project(Index x) const;
    /// Coset representative: quotient coordinates embedded into G as-is.
    Elem lift_element(const Elem& q) const;
    /// Character of G trivial on H that induces the quotient character q.
    Elem lift_character(const Elem& q) const;
    /// H itself, as a subset of G.
    GroupSubset kernel() const;

private:
    friend CoordinateQuotient coordinate_quotient(const Group&, std::vector<std::int64_t>);
    CoordinateQuotient(Group source, Group quotient, std::vector<std::int64_t> divisors,
                       std::vector<std::size_t> kept_axes);

    Group source_;
    Group quotient_;
    std::vector<std::int64_t> divisors_;
    std::vector<std::size_t> kept_axes_;
};

/// Throws std::invalid_argument if some d_j does not divide n_j.
CoordinateQuotient coordinate_quotient(const Group& g, std::vector<std::int64_t> divisors);

}  // namespace spectile
