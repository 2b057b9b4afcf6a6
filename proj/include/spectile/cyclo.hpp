#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectile {

/// Integer polynomial, coeffs[k] is the coefficient of x^k, trailing zeros trimmed.
struct IntPoly {
    std::vector<std::int64_t> coeffs;

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    void trim();
    bool operator==(const IntPoly&) const = default;
};

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
/// Exact division by a monic divisor; throws std::domain_error on a nonzero remainder.
IntPoly poly_div_exact(const IntPoly& num, const IntPoly& monic_divisor);
std::string to_string(const IntPoly& p);

/// The N-th cyclotomic polynomial. Results are memoized per N.
/// Throws std::invalid_argument for N < 1.
const IntPoly& cyclotomic_poly(std::int64_t n);
/// Euler phi, i.e. deg Phi_N.
std::int64_t euler_phi(std::int64_t n);

/// Cyclotomic integer sum_k coeffs[k] zeta_N^k.
///
/// Stored raw (length N). Two raw vectors can denote the same number; use
/// cyc_equal / cyc_is_zero, which reduce modulo Phi_N. Arithmetic is
/// overflow-checked and throws std::overflow_error.
class CycInt {
public:
    CycInt() : CycInt(1) {}
    explicit CycInt(std::int64_t order);
    CycInt(std::int64_t order, std::vector<std::int64_t> coeffs);

    static CycInt constant(std::int64_t order, std::int64_t value);
    static CycInt root(std::int64_t order, std::int64_t k);

    std::int64_t order() const { return order_; }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    std::int64_t coeff(std::int64_t k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    /// coeffs[k mod N] += c.
    void add_root(std::int64_t k, std::int64_t c = 1);

    /// Reduced representative: coefficients of degree < phi(N).
    std::vector<std::int64_t> reduced() const;

private:
    std::int64_t order_;
    std::vector<std::int64_t> coeffs_;
};

CycInt cyc_add(const CycInt& a, const CycInt& b);
CycInt cyc_neg(const CycInt& a);
CycInt cyc_sub(const CycInt& a, const CycInt& b);
/// Cyclic convolution of exponent vectors.
CycInt cyc_mul(const CycInt& a, const CycInt& b);
/// zeta^k -> zeta^{-k}.
CycInt cyc_conj(const CycInt& a);
/// Re-expresses a in order m (n | m) via zeta_n = zeta_m^{m/n}.
CycInt cyc_embed(const CycInt& a, std::int64_t m);

bool cyc_is_zero(const CycInt& c);
bool cyc_equal(const CycInt& a, const CycInt& b);
/// Some(n) iff c reduces to the rational integer n.
std::optional<std::int64_t> cyc_as_integer(const CycInt& c);

/// Raw vector reduced modulo Phi_N; output has length phi(N).
std::vector<std::int64_t> reduce_mod_cyclotomic(std::vector<std::int64_t> raw, std::int64_t n);

}  // namespace spectile
