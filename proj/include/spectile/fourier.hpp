#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spectile/cyclo.hpp"
#include "spectile/groups.hpp"

namespace spectile {

// Character labels share the moduli vector of the group: xi in the dual acts
// by x -> zeta_N^{<x, xi>} with <x, xi> = sum_j x_j xi_j (N / n_j) mod N.

std::int64_t pairing_exponent(const Group& g, const Elem& x, const Elem& xi);
std::int64_t pairing_exponent(const Group& g, Index x, Index xi);

/// hat(chi_A)(xi) as an exact cyclotomic integer of order exp(G).
CycInt ft_indicator_at(const GroupSubset& a, Index xi);
CycInt ft_indicator_at(const GroupSubset& a, const Elem& xi);
/// Several dual points at once; `parallelism` > 1 splits them across threads.
std::vector<CycInt> ft_indicator_at(const GroupSubset& a, std::span<const Index> duals, unsigned parallelism = 1);

enum class TransformMode { automatic, naive, tensor };

/// Above this group order `automatic` picks the tensor path.
inline constexpr std::int64_t kTensorThreshold = 10'000;

/// All |G| transform values, row-major by dual index (one length-N raw
/// vector per dual element).
class SpectrumTable {
public:
    SpectrumTable(Group group, std::vector<std::int64_t> flat);

    const Group& group() const { return group_; }
    std::int64_t order() const { return group_.exponent(); }
    std::size_t size() const { return static_cast<std::size_t>(group_.order()); }
    std::span<const std::int64_t> raw(Index xi) const {
        return {flat_.data() + xi * order(), static_cast<std::size_t>(order())};
    }
    CycInt value(Index xi) const;
    bool is_zero_at(Index xi) const;

    bool operator==(const SpectrumTable& other) const {
        return group_ == other.group_ && flat_ == other.flat_;
    }

private:
    Group group_;
    std::vector<std::int64_t> flat_;
};

/// `parallelism` > 1 splits the naive dual sweep across threads; output is
/// identical to the serial result.
SpectrumTable full_transform(const GroupSubset& a, TransformMode mode = TransformMode::automatic,
                             unsigned parallelism = 1);

/// Z_A = {xi : hat(chi_A)(xi) = 0}. Throws std::invalid_argument on empty A.
GroupSubset zero_set(const GroupSubset& a, TransformMode mode = TransformMode::automatic);

/// sum_{lambda in Lambda} |hat(chi_Omega)(x - lambda)|^2 == |Omega|^2 for every dual x.
bool power_tiling_check(const GroupSubset& omega, const GroupSubset& lambda,
                        TransformMode mode = TransformMode::automatic);

}  // namespace spectile
