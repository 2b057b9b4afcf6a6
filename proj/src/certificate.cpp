#include "spectile/certificate.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace spectile {

const char* to_string(Status s) {
    switch (s) {
        case Status::verified_true: return "verified_true";
        case Status::verified_false: return "verified_false";
        case Status::inconclusive: return "inconclusive";
        case Status::error: return "error";
    }
    return "error";
}

const char* to_string(StepKind k) { return k == StepKind::computational ? "computational" : "proof_level"; }

Status status_from_string(const std::string& s) {
    for (auto st : {Status::verified_true, Status::verified_false, Status::inconclusive, Status::error})
        if (s == to_string(st)) return st;
    throw std::invalid_argument("unknown certificate status '" + s + "'");
}

StepKind step_kind_from_string(const std::string& s) {
    if (s == "computational") return StepKind::computational;
    if (s == "proof_level") return StepKind::proof_level;
    throw std::invalid_argument("unknown step kind '" + s + "'");
}

int exit_code(Status s) {
    switch (s) {
        case Status::verified_true: return 0;
        case Status::verified_false: return 1;
        case Status::inconclusive: return 2;
        case Status::error: return 3;
    }
    return 3;
}

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    hex.reserve(len * 2);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string digest_of(const nlohmann::json& inputs) { return "sha256:" + sha256_hex(inputs.dump()); }

CertificateBuilder::CertificateBuilder(std::string claim_id, bool record_timings) : record_timings_(record_timings) {
    cert_.claim_id = std::move(claim_id);
}

void CertificateBuilder::proof_level(const std::string& id, const std::string& statement,
                                     const std::string& citation, nlohmann::json inputs) {
    Step s;
    s.step_id = id;
    s.kind = StepKind::proof_level;
    s.statement = statement;
    s.citation = citation;
    s.inputs = std::move(inputs);
    push(std::move(s));
}

void CertificateBuilder::push(Step s) {
    s.inputs_digest = digest_of(s.inputs);
    if (s.kind == StepKind::computational && !s.passed && !failed_) {
        failed_ = true;
        failing_step_ = s.step_id;
    }
    cert_.steps.push_back(std::move(s));
}

Certificate CertificateBuilder::finish() {
    cert_.status = failed_ ? Status::verified_false : Status::verified_true;
    return cert_;
}

Certificate CertificateBuilder::finish_inconclusive() {
    cert_.status = Status::inconclusive;
    return cert_;
}

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : c.steps) {
        nlohmann::json j{
            {"step_id", s.step_id},
            {"kind", to_string(s.kind)},
            {"statement", s.statement},
            {"inputs", s.inputs},
            {"inputs_digest", s.inputs_digest},
            {"outputs", s.outputs},
            {"passed", s.passed},
            {"duration_ms", s.duration_ms},
        };
        if (s.kind == StepKind::proof_level) j["citation"] = s.citation;
        steps.push_back(std::move(j));
    }
    return {
        {"claim_id", c.claim_id},
        {"status", to_string(c.status)},
        {"steps", std::move(steps)},
        {"toolchain", {{"version", c.version}, {"element_order", c.element_order}}},
    };
}

Certificate certificate_from_json(const nlohmann::json& j) {
    Certificate c;
    c.claim_id = j.at("claim_id").get<std::string>();
    c.status = status_from_string(j.at("status").get<std::string>());
    c.version = j.at("toolchain").at("version").get<std::string>();
    c.element_order = j.at("toolchain").at("element_order").get<std::string>();
    for (const auto& js : j.at("steps")) {
        Step s;
        s.step_id = js.at("step_id").get<std::string>();
        s.kind = step_kind_from_string(js.at("kind").get<std::string>());
        s.statement = js.at("statement").get<std::string>();
        s.inputs = js.at("inputs");
        s.inputs_digest = js.at("inputs_digest").get<std::string>();
        s.outputs = js.at("outputs");
        s.passed = js.at("passed").get<bool>();
        s.duration_ms = js.at("duration_ms").get<std::int64_t>();
        if (js.contains("citation")) s.citation = js.at("citation").get<std::string>();
        c.steps.push_back(std::move(s));
    }
    return c;
}

std::string serialize(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

void emit_certificate(const Certificate& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write certificate to '" + path + "'");
    out << serialize(c);
    if (!out.flush()) throw std::runtime_error("failed writing certificate to '" + path + "'");
}

}  // namespace spectile
