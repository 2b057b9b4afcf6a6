#include "spectile/io.hpp"

#include <fstream>
#include <sstream>

#include "spectile/errors.hpp"

namespace spectile::io {

namespace {

std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

const nlohmann::json& require(const nlohmann::json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw InputError((where.empty() ? std::string("document") : where) + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(at(where, key) + ": missing");
    return *it;
}

std::int64_t require_int(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

std::vector<Elem> elems_from_json(const Group& g, const nlohmann::json& arr, const std::string& where) {
    if (!arr.is_array()) throw InputError(where + ": expected an array of elements");
    std::vector<Elem> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto pos = where + "[" + std::to_string(i) + "]";
        const auto& e = arr[i];
        if (!e.is_array() || e.size() != g.dim())
            throw InputError(pos + ": expected " + std::to_string(g.dim()) + " coordinates");
        Elem x{std::vector<std::int64_t>(g.dim())};
        for (std::size_t j = 0; j < g.dim(); ++j) {
            const auto cpos = pos + "[" + std::to_string(j) + "]";
            auto c = require_int(e[j], cpos);
            if (c < 0 || c >= g.modulus(j))
                throw InputError(cpos + ": " + std::to_string(c) + " outside [0, " + std::to_string(g.modulus(j)) + ")");
            x.coords[j] = c;
        }
        out.push_back(std::move(x));
    }
    return out;
}

nlohmann::json elem_to_json(const Elem& e) { return e.coords; }

nlohmann::json elems_to_json(std::span<const Elem> elems) {
    auto arr = nlohmann::json::array();
    for (const auto& e : elems) arr.push_back(elem_to_json(e));
    return arr;
}

GroupSubset subset_from_json(const nlohmann::json& j, const std::string& where) {
    const auto& mj = require(j, "moduli", where);
    if (!mj.is_array() || mj.empty()) throw InputError(at(where, "moduli") + ": expected a nonempty array");
    std::vector<std::int64_t> moduli;
    for (std::size_t i = 0; i < mj.size(); ++i) {
        auto n = require_int(mj[i], at(where, "moduli") + "[" + std::to_string(i) + "]");
        if (n < 1) throw InputError(at(where, "moduli") + "[" + std::to_string(i) + "]: modulus must be >= 1");
        moduli.push_back(n);
    }
    Group g(std::move(moduli));
    auto elems = elems_from_json(g, require(j, "elements", where), at(where, "elements"));
    return GroupSubset::from_elems(g, elems);
}

nlohmann::json subset_to_json(const GroupSubset& s) {
    auto moduli = std::vector<std::int64_t>(s.group().moduli().begin(), s.group().moduli().end());
    auto elems = s.elems();
    return {{"moduli", moduli}, {"elements", elems_to_json(elems)}};
}

GroupSubset read_subset(const std::string& path) { return subset_from_json(read_json_file(path), path); }

void write_subset(const GroupSubset& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << subset_to_json(s).dump() << "\n";
}

RationalMatrix matrix_from_json(const nlohmann::json& j) {
    std::int64_t scale = 1;
    if (j.is_object() && j.contains("denominator")) {
        scale = require_int(j["denominator"], "denominator");
        if (scale == 0) throw InputError("denominator: must be nonzero");
    }
    const auto& rows = require(j, "rows", "");
    if (!rows.is_array() || rows.empty()) throw InputError("rows: expected a nonempty array");
    const auto cols = rows[0].is_array() ? rows[0].size() : 0;
    std::vector<Rational> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto rpos = "rows[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != cols)
            throw InputError(rpos + ": expected " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            const auto pos = rpos + "[" + std::to_string(k) + "]";
            const auto& v = rows[i][k];
            std::int64_t num = 0, den = 1;
            if (v.is_number_integer()) {
                num = v.get<std::int64_t>();
            } else if (v.is_string()) {
                const auto s = v.get<std::string>();
                auto slash = s.find('/');
                try {
                    std::size_t used = 0;
                    num = std::stoll(s.substr(0, slash), &used);
                    if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
                    if (slash != std::string::npos) {
                        den = std::stoll(s.substr(slash + 1), &used);
                        if (used != s.size() - slash - 1) throw std::invalid_argument(s);
                    }
                } catch (const std::logic_error&) {
                    throw InputError(pos + ": '" + s + "' is not an integer or p/q rational");
                }
                if (den == 0) throw InputError(pos + ": zero denominator");
            } else {
                throw InputError(pos + ": expected an integer or a \"p/q\" string");
            }
            entries.push_back(Rational::make(num, den * scale));
        }
    }
    return RationalMatrix(rows.size(), cols, std::move(entries));
}

nlohmann::json zero_set_to_json(const GroupSubset& zeros) {
    auto moduli = std::vector<std::int64_t>(zeros.group().moduli().begin(), zeros.group().moduli().end());
    auto elems = zeros.elems();
    return {{"moduli", moduli}, {"zeros", elems_to_json(elems)}};
}

}  // namespace spectile::io
