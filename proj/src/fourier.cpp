#include "spectile/fourier.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "spectile/errors.hpp"

namespace spectile {

namespace {

std::vector<std::int64_t> pairing_weights(const Group& g) {
    std::vector<std::int64_t> w(g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j) w[j] = g.exponent() / g.modulus(j);
    return w;
}

// Per-member weighted coordinates, so a pairing is one dot product.
std::vector<std::int64_t> weighted_members(const GroupSubset& a) {
    const auto& g = a.group();
    const auto w = pairing_weights(g);
    std::vector<std::int64_t> out;
    out.reserve(a.size() * g.dim());
    for (auto x : a.members())
        for (std::size_t j = 0; j < g.dim(); ++j) out.push_back(g.digit(x, j) * w[j]);
    return out;
}

void naive_row(const std::vector<std::int64_t>& weighted, const Group& g, Index xi, std::int64_t* row) {
    const auto n = g.exponent();
    const auto d = g.dim();
    const auto dual = g.element(xi);
    for (std::size_t m = 0; m < weighted.size(); m += d) {
        std::int64_t p = 0;
        for (std::size_t j = 0; j < d; ++j) p += weighted[m + j] * dual.coords[j];
        ++row[p % n];
    }
}

std::vector<std::int64_t> naive_flat(const GroupSubset& a, unsigned parallelism) {
    const auto& g = a.group();
    const auto n = g.exponent();
    const auto weighted = weighted_members(a);
    std::vector<std::int64_t> flat(static_cast<std::size_t>(g.order() * n), 0);
    auto work = [&](Index lo, Index hi) {
        for (Index xi = lo; xi < hi; ++xi) naive_row(weighted, g, xi, flat.data() + xi * n);
    };
    const Index total = g.order();
    const unsigned threads = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(std::min<Index>(total, 64))));
    if (threads == 1) {
        work(0, total);
        return flat;
    }
    std::vector<std::jthread> pool;
    const Index chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        Index lo = t * chunk, hi = std::min(total, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    pool.clear();
    return flat;
}

// Transform one axis at a time: along axis j each line of n_j raw vectors is
// replaced by its length-n_j DFT, multiplication by a root being a rotation.
std::vector<std::int64_t> tensor_flat(const GroupSubset& a) {
    const auto& g = a.group();
    const auto n = g.exponent();
    std::vector<std::int64_t> flat(static_cast<std::size_t>(g.order() * n), 0);
    for (auto x : a.members()) flat[x * n] = 1;

    std::vector<std::int64_t> line;
    for (std::size_t axis = 0; axis < g.dim(); ++axis) {
        const auto len = g.modulus(axis);
        if (len == 1) continue;
        const auto stride = g.stride(axis);
        const auto w = n / len;
        line.assign(static_cast<std::size_t>(len * n), 0);
        for (Index base = 0; base < g.order(); ++base) {
            if (g.digit(base, axis) != 0) continue;
            for (std::int64_t x = 0; x < len; ++x)
                std::copy_n(flat.begin() + (base + x * stride) * n, n, line.begin() + x * n);
            for (std::int64_t xi = 0; xi < len; ++xi) {
                auto* out = flat.data() + (base + xi * stride) * n;
                std::fill_n(out, n, 0);
                for (std::int64_t x = 0; x < len; ++x) {
                    const auto shift = (x * xi % len) * w;
                    const auto* in = line.data() + x * n;
                    for (std::int64_t k = 0; k < n; ++k) {
                        if (in[k] == 0) continue;
                        auto t = k + shift;
                        if (t >= n) t -= n;
                        out[t] += in[k];
                    }
                }
            }
        }
    }
    return flat;
}

bool raw_is_zero(std::span<const std::int64_t> raw, std::int64_t n) {
    for (auto x : reduce_mod_cyclotomic({raw.begin(), raw.end()}, n))
        if (x != 0) return false;
    return true;
}

}  // namespace

std::int64_t pairing_exponent(const Group& g, const Elem& x, const Elem& xi) {
    if (!g.is_canonical(x.coords) || !g.is_canonical(xi.coords))
        throw GroupMismatch("pairing operands are not reduced elements of " + g.to_string());
    const auto n = g.exponent();
    std::int64_t p = 0;
    for (std::size_t j = 0; j < g.dim(); ++j) p = (p + x.coords[j] * xi.coords[j] % n * (n / g.modulus(j))) % n;
    return p;
}

std::int64_t pairing_exponent(const Group& g, Index x, Index xi) {
    const auto n = g.exponent();
    std::int64_t p = 0;
    for (std::size_t j = 0; j < g.dim(); ++j) p = (p + g.digit(x, j) * g.digit(xi, j) * (n / g.modulus(j))) % n;
    return p;
}

CycInt ft_indicator_at(const GroupSubset& a, Index xi) {
    const auto& g = a.group();
    if (xi < 0 || xi >= g.order()) throw GroupMismatch("dual index outside " + g.to_string());
    std::vector<std::int64_t> counts(static_cast<std::size_t>(g.exponent()), 0);
    naive_row(weighted_members(a), g, xi, counts.data());
    return CycInt(g.exponent(), std::move(counts));
}

CycInt ft_indicator_at(const GroupSubset& a, const Elem& xi) {
    if (!a.group().is_canonical(xi.coords)) throw GroupMismatch("character label not in the dual of " + a.group().to_string());
    return ft_indicator_at(a, a.group().index_of(xi));
}

std::vector<CycInt> ft_indicator_at(const GroupSubset& a, std::span<const Index> duals, unsigned parallelism) {
    const auto& g = a.group();
    for (auto xi : duals)
        if (xi < 0 || xi >= g.order()) throw GroupMismatch("dual index outside " + g.to_string());
    const auto n = g.exponent();
    const auto weighted = weighted_members(a);
    std::vector<std::vector<std::int64_t>> rows(duals.size(), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (auto i = lo; i < hi; ++i) naive_row(weighted, g, duals[i], rows[i].data());
    };
    const auto threads = std::max<std::size_t>(1, std::min<std::size_t>(parallelism, duals.size()));
    if (threads == 1) {
        work(0, duals.size());
    } else {
        std::vector<std::jthread> pool;
        const auto chunk = (duals.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            auto lo = t * chunk, hi = std::min(duals.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
    }
    std::vector<CycInt> out;
    out.reserve(duals.size());
    for (auto& r : rows) out.emplace_back(n, std::move(r));
    return out;
}

SpectrumTable::SpectrumTable(Group group, std::vector<std::int64_t> flat)
    : group_(std::move(group)), flat_(std::move(flat)) {
    if (static_cast<std::int64_t>(flat_.size()) != group_.order() * group_.exponent())
        throw std::invalid_argument("spectrum table has the wrong size");
}

CycInt SpectrumTable::value(Index xi) const {
    auto r = raw(xi);
    return CycInt(order(), {r.begin(), r.end()});
}

bool SpectrumTable::is_zero_at(Index xi) const { return raw_is_zero(raw(xi), order()); }

SpectrumTable full_transform(const GroupSubset& a, TransformMode mode, unsigned parallelism) {
    if (mode == TransformMode::automatic)
        mode = a.group().order() > kTensorThreshold ? TransformMode::tensor : TransformMode::naive;
    if (mode == TransformMode::tensor) return SpectrumTable(a.group(), tensor_flat(a));
    return SpectrumTable(a.group(), naive_flat(a, parallelism));
}

GroupSubset zero_set(const GroupSubset& a, TransformMode mode) {
    if (a.empty()) throw std::invalid_argument("zero set of an empty set");
    const auto table = full_transform(a, mode);
    std::vector<Index> zeros;
    for (Index xi = 1; xi < a.group().order(); ++xi)
        if (table.is_zero_at(xi)) zeros.push_back(xi);
    return GroupSubset(a.group(), std::move(zeros));
}

bool power_tiling_check(const GroupSubset& omega, const GroupSubset& lambda, TransformMode mode) {
    const auto& g = omega.group();
    if (!(g == lambda.group())) throw GroupMismatch("power tiling operands");
    const auto n = g.exponent();
    const auto table = full_transform(omega, mode);

    // Reduced |hat(chi_Omega)|^2 per dual point; summing reduced vectors is exact.
    const auto phi = euler_phi(n);
    std::vector<std::int64_t> norms(static_cast<std::size_t>(g.order() * phi));
    for (Index xi = 0; xi < g.order(); ++xi) {
        auto v = table.value(xi);
        auto r = cyc_mul(v, cyc_conj(v)).reduced();
        std::copy(r.begin(), r.end(), norms.begin() + xi * phi);
    }

    const auto target = static_cast<std::int64_t>(omega.size() * omega.size());
    std::vector<std::int64_t> acc(static_cast<std::size_t>(phi));
    for (Index x = 0; x < g.order(); ++x) {
        std::fill(acc.begin(), acc.end(), 0);
        for (auto l : lambda.members()) {
            const auto* r = norms.data() + g.sub(x, l) * phi;
            for (std::int64_t k = 0; k < phi; ++k) acc[k] += r[k];
        }
        if (acc[0] != target) return false;
        for (std::int64_t k = 1; k < phi; ++k)
            if (acc[k] != 0) return false;
    }
    return true;
}

}  // namespace spectile
