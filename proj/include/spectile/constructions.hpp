#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectile/analysis.hpp"
#include "spectile/certificate.hpp"
#include "spectile/fourier.hpp"
#include "spectile/groups.hpp"

namespace spectile {

struct RunConfig {
    std::int64_t search_node_budget = kDefaultNodeBudget;
    unsigned parallelism = 1;
    std::string output_path;
    TransformMode transform_mode = TransformMode::automatic;
    /// Off by default so that repeated runs serialize byte-identically.
    bool record_timings = false;
};

// ---------------------------------------------------------------------------
// The Z_6^5 universal-spectrum counterexample.

Group usc_group();
/// {0, e_1, ..., e_5} in Z_6^5.
GroupSubset build_E();
/// The six columns of the 5x6 matrix K; all coordinates even.
GroupSubset build_K();
/// K' = (1/3) * (6x6 table); rows of exp(2 pi i K') are orthogonal.
RationalMatrix build_K_prime();
/// M_ij = <r_i, c_j> / N for row set r and column set c, both in index order.
RationalMatrix pairing_matrix(const GroupSubset& rows, const GroupSubset& cols);

/// Fifteen coordinate permutations v_j of (1,2,3,4,5) such that the pairs
/// {2 v_j, -2 v_j} partition the nonzero part of K - K. Permutations are
/// tried in lexicographic order, so v_1 = (1,2,3,4,5).
std::vector<Elem> find_covering_permutations();

struct UscBundle {
    Group group;
    GroupSubset E;
    GroupSubset K;
    std::vector<Elem> vectors;
    /// kernels[j] = ker(x -> <v_j, x> mod 6)
    std::vector<GroupSubset> kernels;
};

/// Builds and checks the bundle invariants; throws std::logic_error if one fails.
UscBundle build_usc_bundle();
Certificate build_usc_certificate(const RunConfig& config = {});

// ---------------------------------------------------------------------------
// Tiling / spectral composition over a coordinate-aligned subgroup H.

struct CompositionInput {
    Group group;
    /// H = prod d_j Z_{n_j}; G/H = prod Z_{d_j}.
    std::vector<std::int64_t> divisors;
    /// T_1 .. T_k, subsets of H.
    std::vector<GroupSubset> parts;
    /// Tiling: the shared complement T' in H. Spectral: the shared spectrum L (dual labels).
    GroupSubset common;
    /// S (tiling) or Q (spectral), elements of G/H, |S| = k.
    std::vector<Elem> quotient_set;
    /// S' (tiling complement of S) or Q' (spectrum of Q), elements of G/H.
    std::vector<Elem> quotient_partner;
    /// s_1 .. s_k in G; s_j projects onto quotient_set[j].
    std::vector<Elem> representatives;
};

struct Composition {
    std::optional<GroupSubset> gamma;
    /// Tiling complement T' + lift(S') or spectrum L + lift(Q').
    std::optional<GroupSubset> partner;
    /// Failed preconditions, one entry each. Nonempty means nothing was built.
    std::vector<std::string> violations;
    /// The built pair passed is_tiling / is_spectrum.
    bool verified = false;
};

Composition compose_tiling(const CompositionInput& in);
Composition compose_spectral(const CompositionInput& in);
CompositionInput composition_from_json(const nlohmann::json& j);
Certificate compose_certificate(const std::string& kind, const CompositionInput& in, const RunConfig& config = {});

// ---------------------------------------------------------------------------
// The non-spectral tile Gamma in Z_6^5 x Z_15 (and Z_6^5 x Z_17).

enum class GammaVariant { z15, z17 };
GammaVariant gamma_variant_from_string(const std::string& s);
const char* to_string(GammaVariant v);

struct GammaBundle {
    GammaVariant variant;
    Group group;
    GroupSubset gamma;
    GroupSubset E_tilde;
    GroupSubset K_tilde;
    /// f_j = (0,0,0,0,0,j)
    std::vector<Elem> offsets;
    /// Kernel index used on the slice of offset j.
    std::vector<std::size_t> kernel_of_offset;
    std::vector<Elem> vectors;
};

/// z15: the fifteen kernels on slices 0..14. z17: slices 15 and 16 repeat
/// kernels 13 and 14.
GammaBundle build_gamma(GammaVariant variant);
Certificate gamma_nonspectral_certificate(GammaVariant variant, const RunConfig& config = {});

/// A set of Z_6^5 viewed inside Z_6^5 x Z_m with last coordinate 0.
GroupSubset extend_by_zero(const GroupSubset& a, const Group& big);

// ---------------------------------------------------------------------------
// Periodic lifts A(k) = A + T(n, k) in the window Z_{k n_1} x ... x Z_{k n_d}.

Group enlarged_group(const Group& g, std::int64_t k);
/// T(n, k) = {0, n_1, ..., (k-1) n_1} x ... x {0, n_d, ..., (k-1) n_d}.
GroupSubset grid(const Group& g, std::int64_t k);
/// Coordinates copied verbatim into the enlarged group.
GroupSubset embed_in_window(const GroupSubset& a, std::int64_t k);
GroupSubset lift(const GroupSubset& a, std::int64_t k);
/// Dual point xi of G as the character k * xi of the enlarged group.
Elem embed_dual(const Group& g, const Elem& xi, std::int64_t k);

struct ZeroStructure {
    bool matches = false;
    std::int64_t window_order = 0;
    std::int64_t zero_count = 0;
    std::int64_t formula_count = 0;
};

/// Z(hat chi_T) == {xi : some xi_j not divisible by k}, exhaustively.
ZeroStructure lift_zero_structure_check(const std::vector<std::int64_t>& moduli, std::int64_t k);

inline constexpr std::int64_t kMaxWindowOrder = 10'000'000;

/// Throws std::length_error when the window exceeds kMaxWindowOrder.
Certificate lifted_obstruction_check(GammaVariant variant, std::int64_t k, const RunConfig& config = {});

}  // namespace spectile
