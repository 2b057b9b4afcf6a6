#include "spectile/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "spectile/errors.hpp"
#include "spectile/io.hpp"

namespace spectile {

namespace {

using nlohmann::json;

json coords(const Elem& e) { return e.coords; }

json coords_list(const std::vector<Elem>& v) {
    auto arr = json::array();
    for (const auto& e : v) arr.push_back(coords(e));
    return arr;
}

std::vector<std::int64_t> moduli_of(const Group& g) { return {g.moduli().begin(), g.moduli().end()}; }

bool is_power_of(std::int64_t n, std::int64_t p) {
    if (n < 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

// K from the published 5x6 matrix, one element per column.
constexpr std::int64_t kMatrixK[5][6] = {
    {0, 0, 2, 2, 4, 4},
    {0, 2, 0, 4, 4, 2},
    {0, 2, 4, 0, 2, 4},
    {0, 4, 4, 2, 0, 2},
    {0, 4, 2, 4, 2, 0},
};

// 3 * K'
constexpr std::int64_t kMatrixKPrime[6][6] = {
    {0, 0, 0, 0, 0, 0},
    {0, 0, 1, 1, 2, 2},
    {0, 1, 0, 2, 2, 1},
    {0, 1, 2, 0, 1, 2},
    {0, 2, 2, 1, 0, 1},
    {0, 2, 1, 2, 1, 0},
};

std::vector<Elem> k_columns() {
    std::vector<Elem> cols;
    for (int c = 0; c < 6; ++c) {
        Elem e{std::vector<std::int64_t>(5)};
        for (int r = 0; r < 5; ++r) e.coords[r] = kMatrixK[r][c];
        cols.push_back(std::move(e));
    }
    return cols;
}

std::vector<Elem> e_elements() {
    std::vector<Elem> out{Elem{{0, 0, 0, 0, 0}}};
    for (int j = 0; j < 5; ++j) {
        Elem e{std::vector<std::int64_t>(5, 0)};
        e.coords[j] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

RationalMatrix pairing_matrix(const Group& g, const std::vector<Elem>& rows, const std::vector<Elem>& cols) {
    std::vector<Rational> entries;
    for (const auto& r : rows)
        for (const auto& c : cols) entries.push_back(Rational::make(pairing_exponent(g, r, c), g.exponent()));
    return RationalMatrix(rows.size(), cols.size(), std::move(entries));
}

bool same_matrix(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!(a.at(i, j) == b.at(i, j))) return false;
    return true;
}

json matrix_json(const RationalMatrix& m) {
    auto rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& e = m.at(i, j);
            row.push_back(e.den == 1 ? std::to_string(e.num) : std::to_string(e.num) + "/" + std::to_string(e.den));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json reduced_json(const CycInt& c) { return {{"order", c.order()}, {"reduced_coeffs", c.reduced()}}; }

// Nonzero elements of K - K in index order.
std::vector<Index> nonzero_differences(const GroupSubset& k) {
    auto diffs = difference_set(k);
    std::vector<Index> out;
    for (auto x : diffs.members())
        if (x != 0) out.push_back(x);
    return out;
}

// a + b covers `region` exactly once and nothing outside it.
bool tiles_region(const GroupSubset& a, const GroupSubset& b, const GroupSubset& region) {
    const auto& g = region.group();
    if (a.size() * b.size() != region.size()) return false;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(g.order()), 0);
    for (auto x : a.members())
        for (auto y : b.members()) {
            auto s = g.add(x, y);
            if (!region.contains(s) || hit[s]) return false;
            hit[s] = 1;
        }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------

Group usc_group() { return Group({6, 6, 6, 6, 6}); }

GroupSubset build_E() {
    auto e = e_elements();
    return GroupSubset::from_elems(usc_group(), e);
}

GroupSubset build_K() {
    auto cols = k_columns();
    return GroupSubset::from_elems(usc_group(), cols);
}

RationalMatrix build_K_prime() {
    std::vector<std::vector<std::int64_t>> ints(6, std::vector<std::int64_t>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) ints[i][j] = kMatrixKPrime[i][j];
    return RationalMatrix::scaled(ints, 3);
}

RationalMatrix pairing_matrix(const GroupSubset& rows, const GroupSubset& cols) {
    if (!(rows.group() == cols.group())) throw GroupMismatch("pairing_matrix");
    return pairing_matrix(rows.group(), rows.elems(), cols.elems());
}

std::vector<Elem> find_covering_permutations() {
    const auto g = usc_group();
    const auto targets = nonzero_differences(build_K());
    std::vector<std::int32_t> slot(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < targets.size(); ++i) slot[targets[i]] = static_cast<std::int32_t>(i);

    // Each permutation covers the targets among its nonzero multiples,
    // i.e. the targets in the annihilator of its kernel.
    std::vector<Elem> perms;
    std::vector<std::vector<std::int32_t>> covers;
    std::vector<std::int64_t> p{1, 2, 3, 4, 5};
    do {
        Elem v{p};
        auto vi = g.index_of(v);
        std::vector<std::int32_t> cover;
        for (std::int64_t m = 1; m < 6; ++m) {
            auto s = slot[g.scale(vi, m)];
            if (s >= 0) cover.push_back(s);
        }
        if (!cover.empty()) {
            perms.push_back(std::move(v));
            covers.push_back(std::move(cover));
        }
    } while (std::next_permutation(p.begin(), p.end()));

    // Exact cover, permutations taken in lexicographic order, include-first.
    std::vector<std::uint8_t> covered(targets.size(), 0);
    std::vector<std::size_t> chosen;
    std::size_t remaining = targets.size();
    auto fits = [&](std::size_t i) {
        return std::none_of(covers[i].begin(), covers[i].end(), [&](auto s) { return covered[s] != 0; });
    };
    auto toggle = [&](std::size_t i, std::uint8_t on) {
        for (auto s : covers[i]) covered[s] = on;
        remaining = on ? remaining - covers[i].size() : remaining + covers[i].size();
    };
    auto search = [&](auto&& self, std::size_t from) -> bool {
        if (remaining == 0) return true;
        for (auto i = from; i < perms.size(); ++i) {
            if (!fits(i)) continue;
            toggle(i, 1);
            chosen.push_back(i);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
            toggle(i, 0);
        }
        return false;
    };
    if (!search(search, 0)) throw std::logic_error("no exact cover of K - K by coordinate permutations");

    std::vector<Elem> out;
    for (auto i : chosen) out.push_back(perms[i]);
    return out;
}

UscBundle build_usc_bundle() {
    const auto g = usc_group();
    UscBundle b{g, build_E(), build_K(), find_covering_permutations(), {}};
    for (const auto& v : b.vectors) {
        auto sorted = v.coords;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::vector<std::int64_t>{1, 2, 3, 4, 5})
            throw std::logic_error("covering vector is not a permutation of (1,2,3,4,5)");
        b.kernels.push_back(kernel_of_functional(Functional(g, v, 6)));
    }
    if (!universal_obstruction(b.kernels, difference_set(b.K)).holds)
        throw std::logic_error("kernels do not obstruct K - K");
    return b;
}

Certificate build_usc_certificate(const RunConfig& config) {
    CertificateBuilder cb("usc-counterexample-z6^5", config.record_timings);
    const auto b = build_usc_bundle();
    const auto& g = b.group;
    const json group_in{{"moduli", moduli_of(g)}};

    cb.computational("group", "G = Z_6^5 has order 7776 and exponent 6", group_in, [&](json& out) {
        out = {{"order", g.order()}, {"exponent", g.exponent()}};
        return g.order() == 7776 && g.exponent() == 6;
    });
    cb.computational("E.elements", "E = {0, e_1, ..., e_5} has 6 elements", group_in, [&](json& out) {
        out = {{"elements", coords_list(e_elements())}, {"size", b.E.size()}};
        return b.E.size() == 6;
    });
    cb.computational("kernels.vectors",
                     "15 coordinate permutations v_j of (1,2,3,4,5), chosen by exact cover in lexicographic order",
                     group_in, [&](json& out) {
                         out = {{"vectors", coords_list(b.vectors)}, {"count", b.vectors.size()}};
                         return b.vectors.size() == 15 && b.vectors.front() == Elem{{1, 2, 3, 4, 5}};
                     });
    if (cb.failed()) return cb.finish();

    for (std::size_t j = 0; j < b.kernels.size(); ++j) {
        const auto& v = b.vectors[j];
        cb.computational("tiling.T" + std::to_string(j),
                         "E + T_j = G exactly once, T_j = ker(x -> <v_j, x> mod 6)",
                         {{"moduli", moduli_of(g)}, {"set", "E"}, {"complement", {{"kernel_of", coords(v)}, {"modulus", 6}}}},
                         [&](json& out) {
                             const auto& t = b.kernels[j];
                             bool ann_ok = annihilator(t) == cyclic_subgroup(g, g.index_of(v));
                             bool tiles = is_tiling(b.E, t, 1);
                             out = {{"kernel_size", t.size()},
                                    {"covered_elements", g.order()},
                                    {"tiles", tiles},
                                    {"annihilator_is_span_of_v", ann_ok}};
                             return tiles && ann_ok && t.size() == 1296;
                         });
        if (cb.failed()) return cb.finish();
    }

    const auto diffs = difference_set(b.K);
    cb.computational("K.difference_set",
                     "K - K = {0} together with all 30 coordinate permutations of (0,2,2,4,4)",
                     {{"moduli", moduli_of(g)}, {"set", "K"}}, [&](json& out) {
                         std::vector<std::int64_t> p{0, 2, 2, 4, 4};
                         std::int64_t perms = 0;
                         bool all_present = true;
                         do {
                             ++perms;
                             all_present = all_present && diffs.contains(Elem{p});
                         } while (std::next_permutation(p.begin(), p.end()));
                         bool only_perms = true;
                         for (auto x : diffs.members()) {
                             if (x == 0) continue;
                             auto c = g.element(x).coords;
                             std::sort(c.begin(), c.end());
                             only_perms = only_perms && c == std::vector<std::int64_t>{0, 2, 2, 4, 4};
                         }
                         out = {{"K", coords_list(k_columns())},
                                {"size", diffs.size()},
                                {"permutations_of_02244", perms},
                                {"contains_all_permutations", all_present},
                                {"nonzero_only_permutations", only_perms}};
                         return diffs.size() == 31 && perms == 30 && all_present && only_perms;
                     });

    cb.computational("K.non_tile",
                     "K lies in the even-coordinate subgroup H; |<K>| is a power of 3, so 6 does not divide it and K "
                     "tiles neither <K> nor G",
                     {{"moduli", moduli_of(g)}, {"set", "K"}, {"budget", config.search_node_budget}}, [&](json& out) {
                         bool even = std::all_of(b.K.members().begin(), b.K.members().end(), [&](Index x) {
                             auto c = g.element(x).coords;
                             return std::all_of(c.begin(), c.end(), [](auto v) { return v % 2 == 0; });
                         });
                         auto search = can_tile(b.K, config.search_node_budget);
                         out = {{"K_in_H", even},
                                {"H_order", 243},
                                {"generated_order", search.generated_order},
                                {"status", to_string(search.status)},
                                {"reason", search.reason}};
                         return even && search.status == SearchStatus::none && is_power_of(search.generated_order, 3) &&
                                search.generated_order % 6 != 0;
                     });
    if (cb.failed()) return cb.finish();

    cb.computational("E.spectrum_K", "K is a spectrum of E: |K| = |E| and K - K lies in Z_E u {0}; the pointwise "
                                     "power identity sum_k |hat chi_E(x - k)|^2 = 36 holds on the whole dual",
                     {{"moduli", moduli_of(g)}, {"set", "E"}, {"spectrum", "K"}}, [&](json& out) {
                         bool spec = is_spectrum(b.E, b.K);
                         bool power = power_tiling_check(b.E, b.K, config.transform_mode);
                         out = {{"is_spectrum", spec}, {"power_identity", power}, {"power_constant", 36}};
                         return spec && power;
                     });

    cb.computational("K_prime.log_hadamard",
                     "K' = <K, E> / 6 is log-Hadamard: rows of exp(2 pi i K') are orthogonal in Z[zeta_3]",
                     {{"matrix", "K'"}}, [&](json& out) {
                         auto kp = build_K_prime();
                         bool pairing = same_matrix(kp, pairing_matrix(g, k_columns(), e_elements()));
                         bool lh = is_log_hadamard(kp);
                         out = {{"matrix", matrix_json(kp)},
                                {"root_order", kp.common_denominator()},
                                {"equals_pairing_table", pairing},
                                {"log_hadamard", lh}};
                         return pairing && lh && kp.common_denominator() == 3;
                     });
    if (cb.failed()) return cb.finish();

    cb.computational("obstruction",
                     "every nonzero w in K - K lies outside Z_{T_j} for some j, i.e. "
                     "(intersection of the Z_{T_j}) meets K - K only in 0",
                     {{"moduli", moduli_of(g)}, {"complements", "T_0..T_14"}, {"W", "K - K"}}, [&](json& out) {
                         auto ob = universal_obstruction(b.kernels, diffs);
                         auto wit = json::array();
                         for (auto [w, j] : ob.witness)
                             wit.push_back({{"w", coords(g.element(w))}, {"complement", j}, {"vector", coords(b.vectors[j])}});
                         out = {{"holds", ob.holds}, {"witness_count", ob.witness.size()}, {"witnesses", wit}};
                         return ob.holds && ob.witness.size() == 30;
                     });
    if (cb.failed()) return cb.finish();

    cb.computational("cardinality", "6^4 * |K| = |G|, so a set L with #L = 6^4 and (L - L) n (K - K) = {0} would make L + K "
                                    "a tiling",
                     group_in, [&](json& out) {
                         std::int64_t l = 1296;
                         out = {{"L_size", l}, {"K_size", b.K.size()}, {"product", l * static_cast<std::int64_t>(b.K.size())}};
                         return l * static_cast<std::int64_t>(b.K.size()) == g.order();
                     });
    cb.proof_level("lagarias.sufficiency",
                   "If #L * #E = #G and L - L avoids Z_E, then L is a spectrum of every tiling complement of E, "
                   "since each complement T satisfies Z_T containing Z_E^c minus {0}. The converse is not known and is "
                   "not used.",
                   "Lagarias-Szabo sufficient condition for a universal spectrum");
    cb.proof_level("no_universal_spectrum",
                   "A universal spectrum L of the complements T_0..T_14 has #L = 6^4 and L - L inside "
                   "(intersection of Z_{T_j}) u {0}. By the obstruction step, (L - L) n (K - K) = {0}; with "
                   "#L * #K = #G this makes L + K a tiling of G, contradicting K.non_tile. Hence E tiles G but has "
                   "no universal spectrum.",
                   "universal-spectrum counterexample in Z_6^5: exclusion of a common spectrum by the non-tile K");
    return cb.finish();
}

// ---------------------------------------------------------------------------

namespace {

struct Prepared {
    std::optional<CoordinateQuotient> quotient;
    std::optional<GroupSubset> h;
    std::optional<GroupSubset> q_set;
    std::optional<GroupSubset> q_partner;
};

Prepared prepare(const CompositionInput& in, std::vector<std::string>& violations) {
    Prepared p;
    try {
        p.quotient = coordinate_quotient(in.group, in.divisors);
    } catch (const std::exception& e) {
        violations.push_back(std::string("quotient: ") + e.what());
        return p;
    }
    p.h = p.quotient->kernel();
    const auto& qg = p.quotient->quotient();
    if (in.parts.empty()) violations.push_back("parts: at least one set is required");
    for (std::size_t j = 0; j < in.parts.size(); ++j) {
        if (!(in.parts[j].group() == in.group)) {
            violations.push_back("parts[" + std::to_string(j) + "]: not a subset of " + in.group.to_string());
            continue;
        }
        for (auto x : in.parts[j].members())
            if (!p.h->contains(x)) {
                violations.push_back("parts[" + std::to_string(j) + "]: element outside H");
                break;
            }
    }
    if (!(in.common.group() == in.group)) violations.push_back("common: not a subset of " + in.group.to_string());
    auto load = [&](const std::vector<Elem>& elems, const char* what) -> std::optional<GroupSubset> {
        for (const auto& e : elems)
            if (!qg.is_canonical(e.coords)) {
                violations.push_back(std::string(what) + ": element not in G/H = " + qg.to_string());
                return std::nullopt;
            }
        auto s = GroupSubset::from_elems(qg, elems);
        if (s.size() != elems.size()) {
            violations.push_back(std::string(what) + ": repeated element");
            return std::nullopt;
        }
        return s;
    };
    p.q_set = load(in.quotient_set, "quotient_set");
    p.q_partner = load(in.quotient_partner, "quotient_partner");
    if (in.quotient_set.size() != in.parts.size())
        violations.push_back("quotient_set: size " + std::to_string(in.quotient_set.size()) + " differs from k = " +
                             std::to_string(in.parts.size()));
    if (in.representatives.size() != in.quotient_set.size()) {
        violations.push_back("representatives: need one per element of quotient_set");
    } else {
        for (std::size_t j = 0; j < in.representatives.size(); ++j) {
            const auto& r = in.representatives[j];
            if (!in.group.is_canonical(r.coords)) {
                violations.push_back("representatives[" + std::to_string(j) + "]: not an element of G");
                continue;
            }
            if (qg.is_canonical(in.quotient_set[j].coords) && !(p.quotient->project(r) == in.quotient_set[j]))
                violations.push_back("representatives[" + std::to_string(j) + "]: does not project onto quotient_set[" +
                                     std::to_string(j) + "]");
        }
    }
    return p;
}

GroupSubset union_of_translates(const CompositionInput& in) {
    const auto& g = in.group;
    std::vector<Index> idx;
    for (std::size_t j = 0; j < in.parts.size(); ++j) {
        auto r = g.index_of(in.representatives[j]);
        for (auto x : in.parts[j].members()) idx.push_back(g.add(x, r));
    }
    return GroupSubset(g, std::move(idx));
}

GroupSubset sumset(const GroupSubset& a, const std::vector<Index>& b) {
    const auto& g = a.group();
    std::vector<Index> idx;
    for (auto x : a.members())
        for (auto y : b) idx.push_back(g.add(x, y));
    return GroupSubset(g, std::move(idx));
}

}  // namespace

Composition compose_tiling(const CompositionInput& in) {
    Composition out;
    auto p = prepare(in, out.violations);
    if (out.violations.empty()) {
        for (std::size_t j = 0; j < in.parts.size(); ++j)
            if (!tiles_region(in.parts[j], in.common, *p.h))
                out.violations.push_back("parts[" + std::to_string(j) + "] + common is not a tiling of H");
        if (!is_tiling(*p.q_set, *p.q_partner, 1))
            out.violations.push_back("quotient_set + quotient_partner is not a tiling of G/H");
    }
    if (!out.violations.empty()) return out;

    std::vector<Index> lifted;
    for (auto s : p.q_partner->members())
        lifted.push_back(in.group.index_of(p.quotient->lift_element(p.q_set->group().element(s))));
    out.gamma = union_of_translates(in);
    out.partner = sumset(in.common, lifted);
    out.verified = is_tiling(*out.gamma, *out.partner, 1);
    return out;
}

Composition compose_spectral(const CompositionInput& in) {
    Composition out;
    auto p = prepare(in, out.violations);
    if (out.violations.empty()) {
        for (std::size_t j = 0; j < in.parts.size(); ++j)
            if (!is_spectrum(in.parts[j], in.common))
                out.violations.push_back("common is not a spectrum of parts[" + std::to_string(j) + "]");
        if (!is_spectrum(*p.q_set, *p.q_partner))
            out.violations.push_back("quotient_partner is not a spectrum of quotient_set in G/H");
    }
    if (!out.violations.empty()) return out;

    std::vector<Index> lifted;
    for (auto q : p.q_partner->members())
        lifted.push_back(in.group.index_of(p.quotient->lift_character(p.q_set->group().element(q))));
    out.gamma = union_of_translates(in);
    out.partner = sumset(in.common, lifted);
    out.verified = is_spectrum(*out.gamma, *out.partner);
    return out;
}

CompositionInput composition_from_json(const nlohmann::json& j) {
    auto need = [&](const char* key) -> const json& {
        if (!j.is_object() || !j.contains(key)) throw InputError(std::string(key) + ": missing");
        return j.at(key);
    };
    const auto& mj = need("moduli");
    if (!mj.is_array() || mj.empty()) throw InputError("moduli: expected a nonempty array");
    std::vector<std::int64_t> moduli;
    for (std::size_t i = 0; i < mj.size(); ++i) {
        if (!mj[i].is_number_integer() || mj[i].get<std::int64_t>() < 1)
            throw InputError("moduli[" + std::to_string(i) + "]: expected a positive integer");
        moduli.push_back(mj[i].get<std::int64_t>());
    }
    Group g(moduli);
    const auto& dj = need("divisors");
    if (!dj.is_array() || dj.size() != g.dim()) throw InputError("divisors: expected one entry per coordinate");
    std::vector<std::int64_t> divisors;
    for (std::size_t i = 0; i < dj.size(); ++i) {
        if (!dj[i].is_number_integer()) throw InputError("divisors[" + std::to_string(i) + "]: expected an integer");
        divisors.push_back(dj[i].get<std::int64_t>());
    }
    std::vector<GroupSubset> parts;
    const auto& pj = need("parts");
    if (!pj.is_array()) throw InputError("parts: expected an array of element lists");
    for (std::size_t i = 0; i < pj.size(); ++i) {
        auto e = io::elems_from_json(g, pj[i], "parts[" + std::to_string(i) + "]");
        parts.push_back(GroupSubset::from_elems(g, e));
    }
    auto common = io::elems_from_json(g, need("common"), "common");

    // Quotient coordinates are validated later against G/H.
    auto raw_list = [&](const char* key) {
        const auto& arr = need(key);
        if (!arr.is_array()) throw InputError(std::string(key) + ": expected an array");
        std::vector<Elem> out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto pos = std::string(key) + "[" + std::to_string(i) + "]";
            if (!arr[i].is_array()) throw InputError(pos + ": expected a coordinate array");
            Elem e;
            for (std::size_t c = 0; c < arr[i].size(); ++c) {
                if (!arr[i][c].is_number_integer())
                    throw InputError(pos + "[" + std::to_string(c) + "]: expected an integer");
                e.coords.push_back(arr[i][c].get<std::int64_t>());
            }
            out.push_back(std::move(e));
        }
        return out;
    };
    CompositionInput in{g, divisors, std::move(parts), GroupSubset::from_elems(g, common),
                        raw_list("quotient_set"), raw_list("quotient_partner"), {}};
    in.representatives = io::elems_from_json(g, need("representatives"), "representatives");
    return in;
}

Certificate compose_certificate(const std::string& kind, const CompositionInput& in, const RunConfig& config) {
    if (kind != "tiling" && kind != "spectral") throw std::invalid_argument("compose kind must be tiling or spectral");
    CertificateBuilder cb("compose-" + kind, config.record_timings);
    const bool tiling = kind == "tiling";
    const json inputs{{"moduli", moduli_of(in.group)},
                      {"divisors", in.divisors},
                      {"parts", in.parts.size()},
                      {"common", io::subset_to_json(in.common)["elements"]},
                      {"quotient_set", coords_list(in.quotient_set)},
                      {"quotient_partner", coords_list(in.quotient_partner)},
                      {"representatives", coords_list(in.representatives)}};
    Composition c;
    cb.computational("preconditions",
                     tiling ? "each T_j + T' tiles H, S + S' tiles G/H, representatives project onto S"
                            : "L is a spectrum of each T_j, Q' is a spectrum of Q in G/H, representatives project onto Q",
                     inputs, [&](json& out) {
                         c = tiling ? compose_tiling(in) : compose_spectral(in);
                         out = {{"violations", c.violations}};
                         return c.violations.empty();
                     });
    if (cb.failed()) return cb.finish();
    cb.computational(tiling ? "gamma.tiles" : "gamma.spectral",
                     tiling ? "Gamma = union (s_j + T_j) tiles G with complement T' + lift(S')"
                            : "Gamma = union (q_j + T_j) has spectrum L + lift(Q')",
                     inputs, [&](json& out) {
                         auto gj = io::subset_to_json(*c.gamma);
                         auto pj = io::subset_to_json(*c.partner);
                         out = {{"gamma_size", c.gamma->size()},
                                {"partner_size", c.partner->size()},
                                {"gamma_digest", digest_of(gj)},
                                {"partner_digest", digest_of(pj)},
                                {"verified", c.verified}};
                         if (c.gamma->size() <= 4096) out["gamma"] = gj["elements"];
                         if (c.partner->size() <= 4096) out[tiling ? "complement" : "spectrum"] = pj["elements"];
                         return c.verified;
                     });
    return cb.finish();
}

// ---------------------------------------------------------------------------

GammaVariant gamma_variant_from_string(const std::string& s) {
    if (s == "z15") return GammaVariant::z15;
    if (s == "z17") return GammaVariant::z17;
    throw std::invalid_argument("variant must be z15 or z17, got '" + s + "'");
}

const char* to_string(GammaVariant v) { return v == GammaVariant::z15 ? "z15" : "z17"; }

GroupSubset extend_by_zero(const GroupSubset& a, const Group& big) {
    const auto& g = a.group();
    if (big.dim() != g.dim() + 1) throw GroupMismatch("extension must add exactly one coordinate");
    for (std::size_t j = 0; j < g.dim(); ++j)
        if (big.modulus(j) != g.modulus(j)) throw GroupMismatch("extension must keep the leading moduli");
    std::vector<Index> idx;
    idx.reserve(a.size());
    const auto m = big.modulus(g.dim());
    for (auto x : a.members()) idx.push_back(x * m);
    return GroupSubset(big, std::move(idx));
}

GammaBundle build_gamma(GammaVariant variant) {
    const auto usc = build_usc_bundle();
    const std::int64_t m = variant == GammaVariant::z15 ? 15 : 17;
    Group big({6, 6, 6, 6, 6, m});
    GammaBundle b{variant,
                  big,
                  GroupSubset(big, {}),
                  extend_by_zero(usc.E, big),
                  extend_by_zero(usc.K, big),
                  {},
                  {},
                  usc.vectors};
    std::vector<Index> idx;
    for (std::int64_t j = 0; j < m; ++j) {
        // slices 15, 16 (z17 only) reuse the last two kernels
        auto kernel = j < 15 ? static_cast<std::size_t>(j) : static_cast<std::size_t>(j - 2);
        b.offsets.push_back(Elem{{0, 0, 0, 0, 0, j}});
        b.kernel_of_offset.push_back(kernel);
        for (auto x : usc.kernels[kernel].members()) idx.push_back(x * m + j);
    }
    b.gamma = GroupSubset(big, std::move(idx));
    return b;
}

Certificate gamma_nonspectral_certificate(GammaVariant variant, const RunConfig& config) {
    CertificateBuilder cb(std::string("nonspectral-tile-") + to_string(variant), config.record_timings);
    const auto b = build_gamma(variant);
    const auto& g = b.group;
    const auto m = g.modulus(5);
    const json group_in{{"moduli", moduli_of(g)}, {"variant", to_string(variant)}};

    cb.computational("group", "G = Z_6^5 x Z_" + std::to_string(m), group_in, [&](json& out) {
        out = {{"order", g.order()}, {"exponent", g.exponent()}};
        return g.order() == 7776 * m && g.exponent() == std::lcm<std::int64_t>(6, m);
    });
    cb.computational("gamma.construction",
                     "Gamma = union over j of (f_j + T~_{kappa(j)}), f_j = (0,0,0,0,0,j), slices disjoint",
                     group_in, [&](json& out) {
                         auto slices = json::array();
                         for (std::size_t j = 0; j < b.offsets.size(); ++j)
                             slices.push_back({{"offset", coords(b.offsets[j])},
                                               {"kernel", b.kernel_of_offset[j]},
                                               {"vector", coords(b.vectors[b.kernel_of_offset[j]])}});
                         const auto expected = static_cast<std::size_t>(1296 * m);
                         out = {{"slices", slices}, {"size", b.gamma.size()}, {"expected_size", expected}};
                         if (variant == GammaVariant::z17)
                             out["repetition"] =
                                 "slices 15 and 16 reuse kernels 13 and 14; the obstruction only needs every w hit at "
                                 "least once, so any repetition preserves it";
                         return b.gamma.size() == expected;
                     });
    if (cb.failed()) return cb.finish();

    cb.computational("gamma.tiling", "Gamma + E~ = G exactly once (E~ = E extended by 0)",
                     {{"moduli", moduli_of(g)}, {"set", "Gamma"}, {"complement", "E~"}}, [&](json& out) {
                         bool t = is_tiling(b.gamma, b.E_tilde, 1);
                         out = {{"tiles", t}, {"covered_elements", g.order()}, {"complement_size", b.E_tilde.size()}};
                         return t;
                     });
    if (cb.failed()) return cb.finish();

    const auto usc_g = usc_group();
    const auto targets = nonzero_differences(build_K());
    std::vector<Index> duals;
    for (auto w : targets) duals.push_back(w * m);
    const auto values = ft_indicator_at(b.gamma, duals, config.parallelism);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto w = coords(g.element(duals[i]));
        cb.computational("transform.w" + std::to_string(i),
                         "hat chi_Gamma(w~) is a positive multiple of 1296 at the nonzero w~ in K~ - K~",
                         {{"moduli", moduli_of(g)}, {"set", "Gamma"}, {"w", w}}, [&](json& out) {
                             auto v = cyc_as_integer(values[i]);
                             out = {{"w", w}, {"value", reduced_json(values[i])}};
                             if (!v) return false;
                             out["integer"] = *v;
                             out["multiple_of_1296"] = *v % 1296 == 0 ? json(*v / 1296) : json(nullptr);
                             return *v > 0 && *v % 1296 == 0;
                         });
        if (cb.failed()) return cb.finish();
    }
    (void)usc_g;

    cb.computational("K~.non_tile",
                     "K~ lies in H~; |<K~>| is odd, so 6 does not divide it and K~ does not tile G",
                     {{"moduli", moduli_of(g)}, {"set", "K~"}, {"budget", config.search_node_budget}}, [&](json& out) {
                         auto search = can_tile(b.K_tilde, config.search_node_budget);
                         out = {{"generated_order", search.generated_order},
                                {"status", to_string(search.status)},
                                {"reason", search.reason}};
                         return search.status == SearchStatus::none && search.generated_order % 2 == 1 &&
                                search.generated_order % 6 != 0;
                     });
    cb.computational("cardinality", "#Gamma * #K~ = #G, so a spectrum Q of Gamma has #Q * #K~ = #G", group_in,
                     [&](json& out) {
                         auto prod = static_cast<std::int64_t>(b.gamma.size() * b.K_tilde.size());
                         out = {{"gamma_size", b.gamma.size()},
                                {"K_size", b.K_tilde.size()},
                                {"product", prod},
                                {"group_order", g.order()}};
                         return prod == g.order();
                     });
    if (cb.failed()) return cb.finish();

    cb.proof_level("gamma.not_spectral",
                   "A spectrum Q of Gamma satisfies #Q = #Gamma and Q - Q inside Z_Gamma u {0}. No nonzero element of "
                   "K~ - K~ lies in Z_Gamma (transform steps), so (Q - Q) n (K~ - K~) = {0}; together with "
                   "#Q * #K~ = #G this forces Q + K~ = G, contradicting K~.non_tile. Hence Gamma tiles G and is not "
                   "spectral.",
                   "finite non-spectral tile: composition of the universal-spectrum counterexample over Z_" +
                       std::to_string(m));
    return cb.finish();
}

// ---------------------------------------------------------------------------

Group enlarged_group(const Group& g, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("grid factor k must be >= 1");
    std::vector<std::int64_t> moduli;
    for (auto n : g.moduli()) moduli.push_back(n * k);
    return Group(std::move(moduli));
}

namespace {

std::vector<Index> grid_offsets(const Group& g, const Group& w, std::int64_t k) {
    std::vector<Index> offs{0};
    for (std::size_t j = 0; j < g.dim(); ++j) {
        std::vector<Index> next;
        for (auto o : offs)
            for (std::int64_t m = 0; m < k; ++m) next.push_back(o + m * g.modulus(j) * w.stride(j));
        offs = std::move(next);
    }
    return offs;
}

std::vector<Index> window_bases(const GroupSubset& a, const Group& w) {
    const auto& g = a.group();
    std::vector<Index> out;
    out.reserve(a.size());
    for (auto x : a.members()) {
        Index i = 0;
        for (std::size_t j = 0; j < g.dim(); ++j) i += g.digit(x, j) * w.stride(j);
        out.push_back(i);
    }
    return out;
}

}  // namespace

GroupSubset grid(const Group& g, std::int64_t k) {
    auto w = enlarged_group(g, k);
    return GroupSubset(w, grid_offsets(g, w, k));
}

GroupSubset embed_in_window(const GroupSubset& a, std::int64_t k) {
    auto w = enlarged_group(a.group(), k);
    return GroupSubset(w, window_bases(a, w));
}

GroupSubset lift(const GroupSubset& a, std::int64_t k) {
    const auto& g = a.group();
    auto w = enlarged_group(g, k);
    const auto offs = grid_offsets(g, w, k);
    const auto bases = window_bases(a, w);
    // a_j + m n_j < k n_j, so index sums never wrap
    std::vector<Index> idx;
    idx.reserve(bases.size() * offs.size());
    for (auto b : bases)
        for (auto o : offs) idx.push_back(b + o);
    return GroupSubset(w, std::move(idx));
}

Elem embed_dual(const Group& g, const Elem& xi, std::int64_t k) {
    if (!g.is_canonical(xi.coords)) throw GroupMismatch("dual label not reduced");
    Elem out = xi;
    for (auto& c : out.coords) c *= k;
    return out;
}

ZeroStructure lift_zero_structure_check(const std::vector<std::int64_t>& moduli, std::int64_t k) {
    const Group g(moduli);
    const auto t = grid(g, k);
    const auto& w = t.group();
    const auto zeros = zero_set(t);
    ZeroStructure out;
    out.window_order = w.order();
    out.zero_count = static_cast<std::int64_t>(zeros.size());
    out.matches = true;
    for (Index xi = 0; xi < w.order(); ++xi) {
        bool formula = false;
        for (std::size_t j = 0; j < w.dim(); ++j) formula = formula || w.digit(xi, j) % k != 0;
        if (formula) ++out.formula_count;
        if (formula != zeros.contains(xi)) out.matches = false;
    }
    return out;
}

Certificate lifted_obstruction_check(GammaVariant variant, std::int64_t k, const RunConfig& config) {
    if (k < 1) throw std::invalid_argument("grid factor k must be >= 1");
    const auto b = build_gamma(variant);
    const auto& g = b.group;
    const auto w = enlarged_group(g, k);
    if (w.order() > kMaxWindowOrder)
        throw std::length_error("window " + w.to_string() + " has order " + std::to_string(w.order()) + " > " +
                                std::to_string(kMaxWindowOrder));

    CertificateBuilder cb(std::string("lifted-obstruction-") + to_string(variant) + "-k" + std::to_string(k),
                          config.record_timings);
    const json base_in{{"moduli", moduli_of(g)}, {"variant", to_string(variant)}, {"k", k}};
    std::int64_t kd = 1;
    for (std::size_t j = 0; j < g.dim(); ++j) kd *= k;

    cb.computational("window", "finite window Z_{k n_1} x ... x Z_{k n_d} of the Z^d-periodic lift", base_in,
                     [&](json& out) {
                         out = {{"moduli", moduli_of(w)}, {"order", w.order()}, {"exponent", w.exponent()}};
                         return w.order() == g.order() * kd;
                     });
    const auto lifted = lift(b.gamma, k);
    cb.computational("lift.size", "|A(k)| = |Gamma| * k^d with A(k) = Gamma + T(n, k)", base_in, [&](json& out) {
        out = {{"size", lifted.size()}, {"gamma_size", b.gamma.size()}, {"k_pow_d", kd}};
        return static_cast<std::int64_t>(lifted.size()) == static_cast<std::int64_t>(b.gamma.size()) * kd;
    });
    cb.computational("lift.tiling", "A(k) + E~ tiles the window exactly once", base_in, [&](json& out) {
        auto complement = embed_in_window(b.E_tilde, k);
        bool t = is_tiling(lifted, complement, 1);
        out = {{"tiles", t}, {"covered_elements", w.order()}, {"complement_size", complement.size()}};
        return t;
    });
    if (cb.failed()) return cb.finish();

    const auto m = g.modulus(5);
    const auto targets = nonzero_differences(build_K());
    std::vector<Index> coarse, fine;
    for (auto t : targets) {
        coarse.push_back(t * m);
        fine.push_back(w.index_of(embed_dual(g, g.element(t * m), k)));
    }
    const auto base_values = ft_indicator_at(b.gamma, coarse, config.parallelism);
    const auto lifted_values = ft_indicator_at(lifted, fine, config.parallelism);
    const auto common = std::lcm(g.exponent(), w.exponent());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto wc = coords(g.element(coarse[i]));
        cb.computational("transform.w" + std::to_string(i),
                         "hat chi_{A(k)}(k w~) = k^d * hat chi_Gamma(w~), nonzero",
                         {{"moduli", moduli_of(w)}, {"k", k}, {"w", wc}}, [&](json& out) {
                             auto scaled = cyc_mul(cyc_embed(base_values[i], common),
                                                   CycInt::constant(common, kd));
                             auto fine_v = cyc_embed(lifted_values[i], common);
                             bool eq = cyc_equal(scaled, fine_v);
                             bool nz = !cyc_is_zero(fine_v);
                             out = {{"w", wc},
                                    {"embedded_dual", coords(w.element(fine[i]))},
                                    {"value", reduced_json(lifted_values[i])},
                                    {"coarse_value", reduced_json(base_values[i])},
                                    {"ratio_k_pow_d", eq}};
                             if (auto v = cyc_as_integer(lifted_values[i])) out["integer"] = *v;
                             return eq && nz;
                         });
        if (cb.failed()) return cb.finish();
    }

    const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> small_cases{
        {{2, 3}, 2}, {{6}, 3}, {{2, 3}, 3}, {{2, 3}, 1}};
    for (const auto& [n, kk] : small_cases) {
        std::string id = "zero_structure.n";
        for (auto x : n) id += "_" + std::to_string(x);
        id += ".k" + std::to_string(kk);
        cb.computational(id, "Z(hat chi_T) = {xi : some xi_j not divisible by k} on the window, exhaustively",
                         {{"moduli", n}, {"k", kk}}, [&](json& out) {
                             auto r = lift_zero_structure_check(n, kk);
                             out = {{"matches", r.matches},
                                    {"window_order", r.window_order},
                                    {"zero_count", r.zero_count},
                                    {"formula_count", r.formula_count}};
                             return r.matches;
                         });
    }
    if (cb.failed()) return cb.finish();

    cb.proof_level("zd.not_spectral",
                   "For k large enough the Z^d-periodic set A(k) = Gamma + T(n, k) is not spectral in Z^d: a spectrum "
                   "in T^d would, after rounding to the grid of mesh 1/(k n_j), produce a spectrum of Gamma in G. Not "
                   "certified computationally; the steps above check the finite-window facts it rests on.",
                   "transfer from a finite non-spectral set to Z^d via grid lifts");
    cb.proof_level("rd.not_spectral",
                   "A finite A in Z^d is spectral iff A + [0,1)^d is spectral in R^d, so unit cubes placed on A(k) give "
                   "a tile of R^d that is not spectral.",
                   "Z^d to R^d transfer by unit cubes");
    if (variant == GammaVariant::z17)
        cb.proof_level("dimension_five",
                       "6 and 17 are coprime, so Z_6^5 x Z_17 = Z_6^4 x Z_102 and the same lift runs in dimension 5.",
                       "dimension reduction through Z_6 x Z_17 = Z_102");
    return cb.finish();
}

}  // namespace spectile
