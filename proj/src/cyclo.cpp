#include "spectile/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace spectile {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

void require_same_order(const CycInt& a, const CycInt& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()));
}

}  // namespace

void IntPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPoly out{std::vector<std::int64_t>(a.coeffs.size() + b.coeffs.size() - 1, 0)};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] = checked_add(out.coeffs[i + j], checked_mul(a.coeffs[i], b.coeffs[j]));
    out.trim();
    return out;
}

IntPoly poly_div_exact(const IntPoly& num, const IntPoly& monic_divisor) {
    if (monic_divisor.is_zero() || monic_divisor.coeffs.back() != 1)
        throw std::invalid_argument("divisor must be monic");
    if (num.is_zero()) return {};
    auto rem = num.coeffs;
    const auto dd = monic_divisor.degree();
    const auto dn = num.degree();
    if (dn < dd) throw std::domain_error("inexact polynomial division");
    IntPoly q{std::vector<std::int64_t>(static_cast<std::size_t>(dn - dd + 1), 0)};
    for (int i = dn; i >= dd; --i) {
        auto c = rem[i];
        q.coeffs[i - dd] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] = checked_add(rem[i - dd + j], -checked_mul(c, monic_divisor.coeffs[j]));
    }
    for (int i = 0; i < dd; ++i)
        if (rem[i] != 0) throw std::domain_error("inexact polynomial division");
    q.trim();
    return q;
}

std::string to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        auto c = p.coeffs[k];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        auto a = c < 0 ? -c : c;
        if (a != 1 || k == 0) os << a;
        if (k >= 1) os << "x";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

std::int64_t euler_phi(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("euler_phi needs n >= 1");
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

const IntPoly& cyclotomic_poly(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("cyclotomic polynomial needs N >= 1");
    static std::mutex mu;
    static std::map<std::int64_t, std::unique_ptr<IntPoly>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return *it->second;
    }
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
    IntPoly p{std::vector<std::int64_t>(static_cast<std::size_t>(n + 1), 0)};
    p.coeffs[0] = -1;
    p.coeffs[n] = 1;
    for (std::int64_t d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
    std::lock_guard lock(mu);
    auto [it, _] = cache.emplace(n, std::make_unique<IntPoly>(std::move(p)));
    return *it->second;
}

std::vector<std::int64_t> reduce_mod_cyclotomic(std::vector<std::int64_t> raw, std::int64_t n) {
    const auto& phi = cyclotomic_poly(n);
    const auto deg = phi.degree();
    for (auto i = static_cast<std::int64_t>(raw.size()) - 1; i >= deg; --i) {
        auto c = raw[i];
        if (c == 0) continue;
        raw[i] = 0;
        for (int j = 0; j < deg; ++j)
            raw[i - deg + j] = checked_add(raw[i - deg + j], -checked_mul(c, phi.coeffs[j]));
    }
    raw.resize(static_cast<std::size_t>(deg), 0);
    return raw;
}

// ---------------------------------------------------------------------------

CycInt::CycInt(std::int64_t order) : order_(order) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    coeffs_.assign(static_cast<std::size_t>(order), 0);
}

CycInt::CycInt(std::int64_t order, std::vector<std::int64_t> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    if (static_cast<std::int64_t>(coeffs_.size()) != order)
        throw std::invalid_argument("raw cyclotomic vector must have length N");
}

CycInt CycInt::constant(std::int64_t order, std::int64_t value) {
    CycInt c(order);
    c.coeffs_[0] = value;
    return c;
}

CycInt CycInt::root(std::int64_t order, std::int64_t k) {
    CycInt c(order);
    c.add_root(k);
    return c;
}

void CycInt::add_root(std::int64_t k, std::int64_t c) {
    auto r = k % order_;
    if (r < 0) r += order_;
    coeffs_[static_cast<std::size_t>(r)] = checked_add(coeffs_[static_cast<std::size_t>(r)], c);
}

std::vector<std::int64_t> CycInt::reduced() const { return reduce_mod_cyclotomic(coeffs_, order_); }

CycInt cyc_add(const CycInt& a, const CycInt& b) {
    require_same_order(a, b);
    auto out = a.coeffs();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = checked_add(out[k], b.coeffs()[k]);
    return CycInt(a.order(), std::move(out));
}

CycInt cyc_neg(const CycInt& a) {
    auto out = a.coeffs();
    for (auto& c : out) c = checked_mul(c, -1);
    return CycInt(a.order(), std::move(out));
}

CycInt cyc_sub(const CycInt& a, const CycInt& b) { return cyc_add(a, cyc_neg(b)); }

CycInt cyc_mul(const CycInt& a, const CycInt& b) {
    require_same_order(a, b);
    const auto n = a.order();
    std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        auto x = a.coeffs()[i];
        if (x == 0) continue;
        for (std::int64_t j = 0; j < n; ++j) {
            auto y = b.coeffs()[j];
            if (y == 0) continue;
            auto& slot = out[static_cast<std::size_t>((i + j) % n)];
            slot = checked_add(slot, checked_mul(x, y));
        }
    }
    return CycInt(n, std::move(out));
}

CycInt cyc_conj(const CycInt& a) {
    const auto n = a.order();
    std::vector<std::int64_t> out(static_cast<std::size_t>(n), 0);
    for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>((n - k) % n)] = a.coeffs()[k];
    return CycInt(n, std::move(out));
}

CycInt cyc_embed(const CycInt& a, std::int64_t m) {
    if (m < 1 || m % a.order() != 0) throw std::invalid_argument("embedding order must be a multiple of N");
    const auto step = m / a.order();
    CycInt out(m);
    for (std::int64_t k = 0; k < a.order(); ++k)
        if (a.coeffs()[k]) out.add_root(k * step, a.coeffs()[k]);
    return out;
}

bool cyc_is_zero(const CycInt& c) {
    for (auto x : c.reduced())
        if (x != 0) return false;
    return true;
}

bool cyc_equal(const CycInt& a, const CycInt& b) {
    require_same_order(a, b);
    return cyc_is_zero(cyc_sub(a, b));
}

std::optional<std::int64_t> cyc_as_integer(const CycInt& c) {
    auto r = c.reduced();
    for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k] != 0) return std::nullopt;
    return r.empty() ? 0 : r[0];
}

}  // namespace spectile
