// spectile: command-line front end. Every verifying subcommand writes a
// certificate (stdout unless --out) and exits 0/1/2/3 = true/false/inconclusive/error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spectile/analysis.hpp"
#include "spectile/certificate.hpp"
#include "spectile/constructions.hpp"
#include "spectile/errors.hpp"
#include "spectile/io.hpp"

using namespace spectile;
using nlohmann::json;

namespace {

json set_inputs(const GroupSubset& s) {
    auto j = io::subset_to_json(s);
    return {{"moduli", j["moduli"]}, {"digest", digest_of(j)}, {"size", s.size()}};
}

void require_same_group(const GroupSubset& a, const GroupSubset& b, const char* what) {
    if (!(a.group() == b.group()))
        throw InputError(std::string(what) + ": group " + b.group().to_string() + " differs from " +
                         a.group().to_string());
}

int deliver(const Certificate& c, const RunConfig& cfg) {
    if (cfg.output_path.empty() || cfg.output_path == "-")
        std::cout << serialize(c);
    else
        emit_certificate(c, cfg.output_path);
    return exit_code(c.status);
}

Certificate error_certificate(const std::string& claim, const std::string& message) {
    Certificate c;
    c.claim_id = claim;
    c.status = Status::error;
    Step s;
    s.step_id = "error";
    s.statement = "the run could not complete";
    s.inputs_digest = digest_of(s.inputs);
    s.outputs = {{"message", message}};
    s.passed = false;
    c.steps.push_back(std::move(s));
    return c;
}

TransformMode parse_mode(const std::string& m) {
    if (m == "auto") return TransformMode::automatic;
    if (m == "naive") return TransformMode::naive;
    if (m == "tensor") return TransformMode::tensor;
    throw InputError("--mode: expected auto, naive or tensor");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tiling and spectrality checks on finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    app.set_version_flag("--version", kToolVersion);

    RunConfig cfg;
    std::string mode = "auto";
    app.add_option("--out,-o", cfg.output_path, "Certificate path (default stdout)");
    app.add_option("--budget", cfg.search_node_budget, "Search node budget")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.parallelism, "Worker threads for transform sweeps")->check(CLI::PositiveNumber);
    app.add_option("--mode", mode, "Transform path: auto, naive, tensor");
    app.add_flag("--timings", cfg.record_timings, "Record step durations (breaks byte-identical output)");

    std::string set_path, other_path, input_path, variant = "z15";
    std::int64_t level = 1, k = 2;

    auto* info = app.add_subcommand("group-info", "Order, exponent and generated subgroup of a set");
    info->add_option("--set", set_path)->required();

    auto* tile = app.add_subcommand("tile-check", "Is A + T an exact tiling of G");
    tile->add_option("--set", set_path)->required();
    tile->add_option("--complement", other_path)->required();
    tile->add_option("--level", level)->check(CLI::PositiveNumber);

    auto* can = app.add_subcommand("can-tile", "Search for a tiling complement");
    can->add_option("--set", set_path)->required();

    auto* zeros = app.add_subcommand("zero-set", "Zeros of the indicator's transform");
    zeros->add_option("--set", set_path)->required();

    auto* spec = app.add_subcommand("spectrum-check", "Is Lambda a spectrum of A");
    spec->add_option("--set", set_path)->required();
    spec->add_option("--spectrum", other_path)->required();

    auto* find = app.add_subcommand("find-spectrum", "Search for a spectrum");
    find->add_option("--set", set_path)->required();

    auto* lh = app.add_subcommand("log-hadamard", "Is exp(2 pi i M) a complex Hadamard matrix");
    lh->add_option("--matrix", input_path)->required();

    auto* compose = app.add_subcommand("compose", "Tiling or spectral composition over H");
    auto* comp_tiling = compose->add_subcommand("tiling");
    auto* comp_spectral = compose->add_subcommand("spectral");
    for (auto* c : {comp_tiling, comp_spectral}) c->add_option("--input", input_path)->required();
    compose->require_subcommand(1);

    auto* paper = app.add_subcommand("paper", "Fixed constructions");
    paper->require_subcommand(1);
    auto* usc = paper->add_subcommand("verify-usc", "E tiles Z_6^5 but has no universal spectrum");
    auto* gamma = paper->add_subcommand("verify-gamma", "A tile of Z_6^5 x Z_m with no spectrum");
    gamma->add_option("--variant", variant)->check(CLI::IsMember({"z15", "z17"}));
    auto* lift_cmd = paper->add_subcommand("lift", "Periodic lift of Gamma to a finite window");
    lift_cmd->add_option("--variant", variant)->check(CLI::IsMember({"z15", "z17"}));
    lift_cmd->add_option("--k", k)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    std::string claim = "run";
    try {
        cfg.transform_mode = parse_mode(mode);
        if (const char* env = std::getenv("SPECTILE_BUDGET")) {
            try {
                std::size_t used = 0;
                auto b = std::stoll(env, &used);
                if (used != std::string(env).size() || b <= 0) throw std::invalid_argument(env);
                cfg.search_node_budget = b;
            } catch (const std::logic_error&) {
                throw InputError(std::string("SPECTILE_BUDGET: '") + env + "' is not a positive integer");
            }
        }

        if (*info) {
            claim = "group-info";
            auto a = io::read_subset(set_path);
            CertificateBuilder cb(claim, cfg.record_timings);
            cb.computational("group", "order, exponent and <A>", set_inputs(a), [&](json& out) {
                const auto& g = a.group();
                out = {{"moduli", g.moduli()}, {"order", g.order()}, {"exponent", g.exponent()}, {"size", a.size()}};
                if (!a.empty()) {
                    auto gen = subgroup_generated(a);
                    out["generated_order"] = gen.size();
                    std::vector<Elem> gens;
                    for (auto i : generators_of(gen)) gens.push_back(g.element(i));
                    out["generators"] = io::elems_to_json(gens);
                    out["is_subgroup"] = a.is_subgroup();
                }
                return true;
            });
            return deliver(cb.finish(), cfg);
        }
        if (*tile) {
            claim = "tile-check";
            auto a = io::read_subset(set_path);
            auto t = io::read_subset(other_path);
            require_same_group(a, t, "complement");
            CertificateBuilder cb(claim, cfg.record_timings);
            cb.computational("tiling", "every element of G is covered exactly level times by A + T",
                             {{"set", set_inputs(a)}, {"complement", set_inputs(t)}, {"level", level}},
                             [&](json& out) {
                                 bool ok = is_tiling(a, t, level);
                                 out = {{"tiles", ok}, {"covered_elements", a.group().order()}};
                                 if (level == 1 && a.size() * t.size() == static_cast<std::size_t>(a.group().order()))
                                     out["fourier_criterion"] = tiling_fourier_criterion(a, t);
                                 return ok;
                             });
            return deliver(cb.finish(), cfg);
        }
        if (*can) {
            claim = "can-tile";
            auto a = io::read_subset(set_path);
            CertificateBuilder cb(claim, cfg.record_timings);
            TileSearch r;
            json in = set_inputs(a);
            in["budget"] = cfg.search_node_budget;
            cb.computational("search", "exact-cover search for T with A + T = G", in, [&](json& out) {
                r = can_tile(a, cfg.search_node_budget);
                out = {{"status", to_string(r.status)},
                       {"generated_order", r.generated_order},
                       {"nodes", r.nodes},
                       {"reason", r.reason}};
                if (r.complement) out["complement"] = io::subset_to_json(*r.complement)["elements"];
                return r.status == SearchStatus::found;
            });
            if (r.status == SearchStatus::inconclusive) return deliver(cb.finish_inconclusive(), cfg);
            if (r.complement)
                cb.computational("verify", "the returned complement passes is_tiling",
                                 {{"set", set_inputs(a)}, {"complement", set_inputs(*r.complement)}}, [&](json& out) {
                                     bool ok = is_tiling(a, *r.complement, 1);
                                     out = {{"tiles", ok}};
                                     return ok;
                                 });
            return deliver(cb.finish(), cfg);
        }
        if (*zeros) {
            claim = "zero-set";
            auto a = io::read_subset(set_path);
            if (a.empty()) throw InputError("elements: zero set of an empty set is undefined");
            auto z = zero_set(a, cfg.transform_mode);
            auto text = io::zero_set_to_json(z).dump(2) + "\n";
            if (cfg.output_path.empty() || cfg.output_path == "-") {
                std::cout << text;
            } else {
                std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
                if (!f) throw std::runtime_error("cannot write '" + cfg.output_path + "'");
                f << text;
            }
            return 0;
        }
        if (*spec) {
            claim = "spectrum-check";
            auto a = io::read_subset(set_path);
            auto l = io::read_subset(other_path);
            require_same_group(a, l, "spectrum");
            CertificateBuilder cb(claim, cfg.record_timings);
            cb.computational("spectrum", "|Lambda| = |A| and hat chi_A vanishes on (Lambda - Lambda) \\ {0}",
                             {{"set", set_inputs(a)}, {"spectrum", set_inputs(l)}}, [&](json& out) {
                                 bool ok = is_spectrum(a, l);
                                 out = {{"is_spectrum", ok}, {"set_size", a.size()}, {"spectrum_size", l.size()}};
                                 return ok;
                             });
            return deliver(cb.finish(), cfg);
        }
        if (*find) {
            claim = "find-spectrum";
            auto a = io::read_subset(set_path);
            CertificateBuilder cb(claim, cfg.record_timings);
            SpectrumSearch r;
            json in = set_inputs(a);
            in["budget"] = cfg.search_node_budget;
            cb.computational("search", "clique search for a spectrum anchored at 0", in, [&](json& out) {
                r = find_spectrum(a, cfg.search_node_budget);
                out = {{"status", to_string(r.status)}, {"nodes", r.nodes}};
                if (r.spectrum) out["spectrum"] = io::subset_to_json(*r.spectrum)["elements"];
                return r.status == SearchStatus::found;
            });
            if (r.status == SearchStatus::inconclusive) return deliver(cb.finish_inconclusive(), cfg);
            return deliver(cb.finish(), cfg);
        }
        if (*lh) {
            claim = "log-hadamard";
            auto j = io::read_json_file(input_path);
            auto m = io::matrix_from_json(j);
            CertificateBuilder cb(claim, cfg.record_timings);
            cb.computational("log_hadamard", "rows of exp(2 pi i M) are pairwise orthogonal",
                             {{"digest", digest_of(j)}, {"rows", m.rows()}, {"cols", m.cols()}}, [&](json& out) {
                                 bool ok = is_log_hadamard(m);
                                 out = {{"log_hadamard", ok}, {"root_order", m.common_denominator()}};
                                 return ok;
                             });
            return deliver(cb.finish(), cfg);
        }
        if (*compose) {
            const std::string kind = *comp_tiling ? "tiling" : "spectral";
            claim = "compose-" + kind;
            auto in = composition_from_json(io::read_json_file(input_path));
            return deliver(compose_certificate(kind, in, cfg), cfg);
        }
        if (*usc) {
            claim = "usc-counterexample-z6^5";
            return deliver(build_usc_certificate(cfg), cfg);
        }
        if (*gamma) {
            claim = "nonspectral-tile-" + variant;
            return deliver(gamma_nonspectral_certificate(gamma_variant_from_string(variant), cfg), cfg);
        }
        if (*lift_cmd) {
            claim = "lifted-obstruction-" + variant + "-k" + std::to_string(k);
            return deliver(lifted_obstruction_check(gamma_variant_from_string(variant), k, cfg), cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "spectile: " << e.what() << "\n";
        try {
            deliver(error_certificate(claim, e.what()), cfg);
        } catch (const std::exception& e2) {
            std::cerr << "spectile: " << e2.what() << "\n";
        }
        return 3;
    }
    return 3;
}
