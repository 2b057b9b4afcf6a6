#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spectile/certificate.hpp"
#include "spectile/constructions.hpp"
#include "spectile/io.hpp"

using namespace spectile;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("spectile_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
        return path(name);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string err;
};

Run run_cli(const Scratch& s, const std::string& args, const std::string& env = "") {
    auto err = s.path("stderr.txt");
    auto cmd = env + " " + std::string(SPECTILE_CLI_PATH) + " " + args + " > " + s.path("stdout.txt") + " 2> " + err;
    int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err)};
}

std::string set_file(const Scratch& s, const std::string& name, const GroupSubset& a) {
    return s.write(name, io::subset_to_json(a).dump());
}

}  // namespace

TEST_CASE("paper verify-usc") {
    Scratch s;
    auto out = s.path("usc.json");
    CHECK(run_cli(s, "paper verify-usc --out " + out).code == 0);
    auto c = certificate_from_json(json::parse(slurp(out)));
    CHECK(c.status == Status::verified_true);
    int tilings = 0;
    bool obstruction = false;
    for (const auto& st : c.steps) {
        tilings += st.step_id.rfind("tiling.T", 0) == 0;
        obstruction = obstruction || st.step_id == "obstruction";
    }
    CHECK(tilings == 15);
    CHECK(obstruction);
}

TEST_CASE("tile-check and spectrum-check exit codes") {
    Scratch s;
    auto g = usc_group();
    auto e = set_file(s, "E.json", build_E());
    auto t0 = set_file(s, "T0.json", kernel_of_functional(Functional(g, Elem{{1, 2, 3, 4, 5}}, 6)));
    auto k = set_file(s, "K.json", build_K());
    CHECK(run_cli(s, "tile-check --set " + e + " --complement " + t0).code == 0);
    CHECK(run_cli(s, "tile-check --set " + e + " --complement " + k).code == 1);
    CHECK(run_cli(s, "spectrum-check --set " + e + " --spectrum " + k).code == 0);
    CHECK(run_cli(s, "spectrum-check --set " + e + " --spectrum " + e).code == 1);

    auto c = certificate_from_json(json::parse(slurp(s.path("stdout.txt"))));
    CHECK(c.status == Status::verified_false);
    CHECK(exit_code(c.status) == 1);
}

TEST_CASE("searches, zero sets, log-Hadamard, group info") {
    Scratch s;
    Group z8({8});
    auto a = set_file(s, "a.json", GroupSubset(z8, {0, 1, 2, 3}));
    CHECK(run_cli(s, "find-spectrum --set " + a).code == 0);
    auto c = json::parse(slurp(s.path("stdout.txt")));
    CHECK(c["steps"][0]["outputs"]["spectrum"] == json::parse("[[0],[2],[4],[6]]"));
    CHECK(run_cli(s, "can-tile --set " + a).code == 0);

    auto k = set_file(s, "K.json", build_K());
    CHECK(run_cli(s, "can-tile --set " + k).code == 1);
    CHECK(run_cli(s, "can-tile --set " + set_file(s, "E.json", build_E()) + " --budget 5").code == 2);
    CHECK(run_cli(s, "can-tile --set " + s.path("E.json"), "SPECTILE_BUDGET=5").code == 2);
    CHECK(run_cli(s, "can-tile --set " + s.path("E.json"), "SPECTILE_BUDGET=abc").code == 3);

    CHECK(run_cli(s, "zero-set --set " + set_file(s, "z4.json", GroupSubset(Group({4}), {0, 2}))).code == 0);
    CHECK(json::parse(slurp(s.path("stdout.txt"))) == json::parse(R"({"moduli":[4],"zeros":[[1],[3]]})"));

    auto kp = s.write("kp.json", R"({"rows":[[0,0,0,0,0,0],[0,0,1,1,2,2],[0,1,0,2,2,1],[0,1,2,0,1,2],[0,2,2,1,0,1],[0,2,1,2,1,0]],"denominator":3})");
    CHECK(run_cli(s, "log-hadamard --matrix " + kp).code == 0);
    CHECK(run_cli(s, "log-hadamard --matrix " + s.write("z.json", R"({"rows":[[0,0],[0,0]]})")).code == 1);

    CHECK(run_cli(s, "group-info --set " + k).code == 0);
    auto info = json::parse(slurp(s.path("stdout.txt")));
    CHECK(info["steps"][0]["outputs"]["generated_order"] == 81);
}

TEST_CASE("malformed input gives exit 3 with a position") {
    Scratch s;
    auto bad = s.write("bad.json", R"({"moduli":[6,6],"elements":[[0,0],[1,7]]})");
    auto r = run_cli(s, "can-tile --set " + bad);
    CHECK(r.code == 3);
    CHECK(r.err.find("elements[1][1]: 7 outside [0, 6)") != std::string::npos);
    auto c = certificate_from_json(json::parse(slurp(s.path("stdout.txt"))));
    CHECK(c.status == Status::error);

    CHECK(run_cli(s, "can-tile --set " + s.write("trunc.json", "{\"moduli\": [")).code == 3);
    CHECK(run_cli(s, "can-tile --set " + s.path("missing.json")).code == 3);
    CHECK(run_cli(s, "tile-check --set " + set_file(s, "a.json", build_E()) + " --complement " +
                          set_file(s, "b.json", GroupSubset(Group({4}), {0})))
              .code == 3);
    CHECK(run_cli(s, "no-such-command").code == 3);
    CHECK(run_cli(s, "paper verify-gamma --variant z16").code == 3);
    CHECK(run_cli(s, "paper lift --variant z15 --k 3").code == 3);
}

TEST_CASE("compose subcommand") {
    Scratch s;
    auto in = s.write("bundle.json", R"({"moduli":[4],"divisors":[2],"parts":[[[0]],[[0]]],"common":[[0],[2]],
        "quotient_set":[[0],[1]],"quotient_partner":[[0]],"representatives":[[0],[1]]})");
    CHECK(run_cli(s, "compose tiling --input " + in).code == 0);
    CHECK(run_cli(s, "compose spectral --input " + in).code == 1);
    auto bad = s.write("bad.json", R"({"moduli":[4],"divisors":[2],"parts":[[[5]]],"common":[],
        "quotient_set":[],"quotient_partner":[],"representatives":[]})");
    auto r = run_cli(s, "compose tiling --input " + bad);
    CHECK(r.code == 3);
    CHECK(r.err.find("parts[0][0][0]") != std::string::npos);
}

TEST_CASE("certificates are byte-identical across runs; --timings is opt-in") {
    Scratch s;
    CHECK(run_cli(s, "paper verify-gamma --variant z15 --out " + s.path("a.json")).code == 0);
    CHECK(run_cli(s, "--out " + s.path("b.json") + " paper verify-gamma --variant z15").code == 0);
    CHECK(slurp(s.path("a.json")) == slurp(s.path("b.json")));
    CHECK(run_cli(s, "paper verify-gamma --variant z15 --timings --out " + s.path("t.json")).code == 0);
    auto t = certificate_from_json(json::parse(slurp(s.path("t.json"))));
    CHECK(t.status == Status::verified_true);
}
