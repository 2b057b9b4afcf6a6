#include "spectile/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spectile/errors.hpp"

namespace spectile {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

Group::Group(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
    for (auto n : moduli_) {
        if (n < 1) throw std::invalid_argument("modulus must be >= 1, got " + std::to_string(n));
    }
    strides_.assign(moduli_.size(), 1);
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        strides_[j] = order_;
        if (__builtin_mul_overflow(order_, moduli_[j], &order_))
            throw std::overflow_error("group order overflows 64 bits");
        exponent_ = std::lcm(exponent_, moduli_[j]);
    }
}

Elem Group::element(Index i) const {
    if (i < 0 || i >= order_) throw std::out_of_range("element index out of range");
    Elem x{std::vector<std::int64_t>(moduli_.size())};
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        x.coords[j] = i % moduli_[j];
        i /= moduli_[j];
    }
    return x;
}

Index Group::index_of(const Elem& x) const {
    if (x.coords.size() != moduli_.size()) throw GroupMismatch("element dimension");
    Index i = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        auto c = x.coords[j];
        if (c < 0 || c >= moduli_[j]) throw std::out_of_range("coordinate not reduced");
        i = i * moduli_[j] + c;
    }
    return i;
}

Elem Group::reduce(std::span<const std::int64_t> raw) const {
    if (raw.size() != moduli_.size()) throw GroupMismatch("element dimension");
    Elem x{std::vector<std::int64_t>(raw.size())};
    for (std::size_t j = 0; j < raw.size(); ++j) x.coords[j] = mod(raw[j], moduli_[j]);
    return x;
}

bool Group::is_canonical(std::span<const std::int64_t> coords) const {
    if (coords.size() != moduli_.size()) return false;
    for (std::size_t j = 0; j < coords.size(); ++j)
        if (coords[j] < 0 || coords[j] >= moduli_[j]) return false;
    return true;
}

Index Group::add(Index a, Index b) const {
    Index out = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        auto n = moduli_[j];
        auto s = digit(a, j) + digit(b, j);
        if (s >= n) s -= n;
        out += s * strides_[j];
    }
    return out;
}

Index Group::sub(Index a, Index b) const {
    Index out = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        auto s = digit(a, j) - digit(b, j);
        if (s < 0) s += moduli_[j];
        out += s * strides_[j];
    }
    return out;
}

Index Group::neg(Index a) const { return sub(0, a); }

Index Group::scale(Index a, std::int64_t m) const {
    Index out = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        auto n = moduli_[j];
        out += mod(digit(a, j) * mod(m, n), n) * strides_[j];
    }
    return out;
}

Elem Group::add(const Elem& a, const Elem& b) const {
    if (a.coords.size() != dim() || b.coords.size() != dim()) throw GroupMismatch("element dimension");
    Elem x{std::vector<std::int64_t>(dim())};
    for (std::size_t j = 0; j < dim(); ++j) x.coords[j] = mod(a.coords[j] + b.coords[j], moduli_[j]);
    return x;
}

Elem Group::sub(const Elem& a, const Elem& b) const {
    if (a.coords.size() != dim() || b.coords.size() != dim()) throw GroupMismatch("element dimension");
    Elem x{std::vector<std::int64_t>(dim())};
    for (std::size_t j = 0; j < dim(); ++j) x.coords[j] = mod(a.coords[j] - b.coords[j], moduli_[j]);
    return x;
}

Elem Group::neg(const Elem& a) const { return sub(zero(), a); }

std::string Group::to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < moduli_.size(); ++j) os << (j ? " x Z_" : "Z_") << moduli_[j];
    return os.str();
}

// ---------------------------------------------------------------------------

GroupSubset::GroupSubset(Group group, std::vector<Index> members)
    : group_(std::move(group)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && (members_.front() < 0 || members_.back() >= group_.order()))
        throw std::out_of_range("subset index outside the group");
    bitmap_.assign(static_cast<std::size_t>(group_.order()), 0);
    for (auto i : members_) bitmap_[i] = 1;
}

GroupSubset GroupSubset::from_elems(const Group& group, std::span<const Elem> elems) {
    std::vector<Index> idx;
    idx.reserve(elems.size());
    for (const auto& e : elems) idx.push_back(group.index_of(e));
    return GroupSubset(group, std::move(idx));
}

GroupSubset GroupSubset::from_bitmap(Group group, std::vector<std::uint8_t> bitmap) {
    if (static_cast<std::int64_t>(bitmap.size()) != group.order())
        throw std::invalid_argument("bitmap length differs from group order");
    std::vector<Index> idx;
    for (std::size_t i = 0; i < bitmap.size(); ++i)
        if (bitmap[i]) idx.push_back(static_cast<Index>(i));
    return GroupSubset(std::move(group), std::move(idx));
}

GroupSubset GroupSubset::whole(const Group& group) {
    std::vector<Index> idx(static_cast<std::size_t>(group.order()));
    std::iota(idx.begin(), idx.end(), Index{0});
    return GroupSubset(group, std::move(idx));
}

GroupSubset GroupSubset::singleton_zero(const Group& group) { return GroupSubset(group, {0}); }

std::vector<Elem> GroupSubset::elems() const {
    std::vector<Elem> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back(group_.element(i));
    return out;
}

GroupSubset GroupSubset::translate(Index t) const {
    std::vector<Index> idx;
    idx.reserve(members_.size());
    for (auto i : members_) idx.push_back(group_.add(i, t));
    return GroupSubset(group_, std::move(idx));
}

GroupSubset GroupSubset::negate() const {
    std::vector<Index> idx;
    idx.reserve(members_.size());
    for (auto i : members_) idx.push_back(group_.neg(i));
    return GroupSubset(group_, std::move(idx));
}

bool GroupSubset::is_subgroup() const {
    if (!contains(0)) return false;
    // <S> contains S, so equal sizes mean S is already closed.
    return subgroup_generated(*this).size() == size();
}

// ---------------------------------------------------------------------------

Functional::Functional(Group group, Elem v, std::int64_t target_modulus)
    : group_(std::move(group)), v_(std::move(v)), m_(target_modulus) {
    if (m_ < 1) throw std::invalid_argument("functional modulus must be >= 1");
    for (auto n : group_.moduli())
        if (n != m_) throw std::invalid_argument("functional needs every modulus equal to the target modulus");
    if (!group_.is_canonical(v_.coords)) throw std::invalid_argument("functional vector not a reduced element");
}

std::int64_t Functional::operator()(const Elem& x) const {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < v_.coords.size(); ++j) s = (s + v_.coords[j] * x.coords[j]) % m_;
    return s;
}

GroupSubset difference_set(const GroupSubset& a) {
    if (a.empty()) throw std::invalid_argument("difference set of an empty set");
    const auto& g = a.group();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.order()), 0);
    for (auto x : a.members())
        for (auto y : a.members()) bits[g.sub(x, y)] = 1;
    return GroupSubset::from_bitmap(g, std::move(bits));
}

GroupSubset kernel_of_functional(const Functional& phi) {
    const auto& g = phi.group();
    std::vector<Index> idx;
    for (Index i = 0; i < g.order(); ++i)
        if (phi(g.element(i)) == 0) idx.push_back(i);
    return GroupSubset(g, std::move(idx));
}

namespace {

// Extends the subgroup held in `bits` (listed in `members`) by one element.
void extend_subgroup(const Group& g, std::vector<std::uint8_t>& bits, std::vector<Index>& members, Index gen) {
    if (bits[gen]) return;
    // <S, g> = union of cosets S + m*g for m = 0 .. (first m with m*g in S) - 1
    std::vector<Index> base = members;
    Index step = gen;
    while (!bits[step]) {
        for (auto s : base) {
            auto y = g.add(s, step);
            if (!bits[y]) {
                bits[y] = 1;
                members.push_back(y);
            }
        }
        step = g.add(step, gen);
    }
}

}  // namespace

GroupSubset subgroup_generated(const GroupSubset& a) {
    if (a.empty()) throw std::invalid_argument("subgroup generated by an empty set");
    const auto& g = a.group();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.order()), 0);
    std::vector<Index> members{0};
    bits[0] = 1;
    for (auto x : a.members()) extend_subgroup(g, bits, members, x);
    return GroupSubset(g, std::move(members));
}

std::vector<Index> generators_of(const GroupSubset& subgroup) {
    const auto& g = subgroup.group();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.order()), 0);
    std::vector<Index> members{0};
    bits[0] = 1;
    std::vector<Index> gens;
    for (auto x : subgroup.members()) {
        if (bits[x]) continue;
        gens.push_back(x);
        extend_subgroup(g, bits, members, x);
    }
    return gens;
}

GroupSubset cyclic_subgroup(const Group& group, Index generator) {
    return subgroup_generated(GroupSubset(group, {generator}));
}

GroupSubset annihilator(const GroupSubset& s) {
    if (!s.is_subgroup()) throw NotASubgroup("annihilator needs a subgroup");
    const auto& g = s.group();
    const auto gens = generators_of(s);
    const auto n = g.exponent();
    std::vector<std::vector<std::int64_t>> weighted;  // x_j * (N / n_j)
    for (auto x : gens) {
        auto e = g.element(x);
        for (std::size_t j = 0; j < g.dim(); ++j) e.coords[j] *= n / g.modulus(j);
        weighted.push_back(std::move(e.coords));
    }
    std::vector<Index> idx;
    for (Index xi = 0; xi < g.order(); ++xi) {
        const auto dual = g.element(xi);
        bool ok = true;
        for (const auto& w : weighted) {
            std::int64_t p = 0;
            for (std::size_t j = 0; j < g.dim(); ++j) p = (p + w[j] * dual.coords[j]) % n;
            if (p != 0) {
                ok = false;
                break;
            }
        }
        if (ok) idx.push_back(xi);
    }
    return GroupSubset(g, std::move(idx));
}

// ---------------------------------------------------------------------------

CoordinateQuotient::CoordinateQuotient(Group source, Group quotient, std::vector<std::int64_t> divisors,
                                       std::vector<std::size_t> kept_axes)
    : source_(std::move(source)),
      quotient_(std::move(quotient)),
      divisors_(std::move(divisors)),
      kept_axes_(std::move(kept_axes)) {}

CoordinateQuotient coordinate_quotient(const Group& g, std::vector<std::int64_t> divisors) {
    if (divisors.size() != g.dim()) throw std::invalid_argument("one divisor per coordinate required");
    std::vector<std::int64_t> qmod;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        auto d = divisors[j];
        if (d < 1 || g.modulus(j) % d != 0)
            throw std::invalid_argument("divisor " + std::to_string(d) + " does not divide modulus " +
                                        std::to_string(g.modulus(j)));
        if (d > 1) {
            qmod.push_back(d);
            kept.push_back(j);
        }
    }
    if (qmod.empty()) qmod.push_back(1);
    return CoordinateQuotient(g, Group(std::move(qmod)), std::move(divisors), std::move(kept));
}

Elem CoordinateQuotient::project(const Elem& x) const {
    if (kept_axes_.empty()) return quotient_.zero();
    Elem q{std::vector<std::int64_t>(kept_axes_.size())};
    for (std::size_t k = 0; k < kept_axes_.size(); ++k) {
        auto j = kept_axes_[k];
        q.coords[k] = x.coords[j] % divisors_[j];
    }
    return q;
}

Index CoordinateQuotient::project(Index x) const { return quotient_.index_of(project(source_.element(x))); }

Elem CoordinateQuotient::lift_element(const Elem& q) const {
    auto x = source_.zero();
    for (std::size_t k = 0; k < kept_axes_.size(); ++k) x.coords[kept_axes_[k]] = q.coords[k];
    return x;
}

Elem CoordinateQuotient::lift_character(const Elem& q) const {
    auto xi = source_.zero();
    for (std::size_t k = 0; k < kept_axes_.size(); ++k) {
        auto j = kept_axes_[k];
        xi.coords[j] = q.coords[k] * (source_.modulus(j) / divisors_[j]);
    }
    return xi;
}

GroupSubset CoordinateQuotient::kernel() const {
    std::vector<Index> idx;
    for (Index i = 0; i < source_.order(); ++i) {
        bool in = true;
        for (std::size_t j = 0; j < source_.dim() && in; ++j) in = source_.digit(i, j) % divisors_[j] == 0;
        if (in) idx.push_back(i);
    }
    return GroupSubset(source_, std::move(idx));
}

}  // namespace spectile
