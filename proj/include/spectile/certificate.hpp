#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace spectile {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kElementOrder = "mixed-radix, coordinate 1 most significant";

enum class Status { verified_true, verified_false, inconclusive, error };
enum class StepKind { computational, proof_level };

const char* to_string(Status s);
const char* to_string(StepKind k);
Status status_from_string(const std::string& s);
StepKind step_kind_from_string(const std::string& s);
/// 0 / 1 / 2 / 3.
int exit_code(Status s);

struct Step {
    std::string step_id;
    StepKind kind = StepKind::computational;
    std::string statement;
    /// Descriptor of what was checked; enough to rebuild the inputs.
    nlohmann::json inputs = nlohmann::json::object();
    std::string inputs_digest;
    nlohmann::json outputs = nlohmann::json::object();
    bool passed = true;
    /// Only proof-level steps: the published argument being relied on.
    std::string citation;
    std::int64_t duration_ms = 0;

    bool operator==(const Step&) const = default;
};

struct Certificate {
    std::string claim_id;
    Status status = Status::inconclusive;
    std::vector<Step> steps;
    std::string version = kToolVersion;
    std::string element_order = kElementOrder;

    bool operator==(const Certificate&) const = default;
};

/// Accumulates steps; the first failing computational step fixes the status.
class CertificateBuilder {
public:
    CertificateBuilder(std::string claim_id, bool record_timings);

    /// Runs `check`, which fills `outputs` and returns pass/fail.
    template <class F>
    bool computational(const std::string& id, const std::string& statement, nlohmann::json inputs, F&& check) {
        Step s;
        s.step_id = id;
        s.kind = StepKind::computational;
        s.statement = statement;
        s.inputs = std::move(inputs);
        auto t0 = std::chrono::steady_clock::now();
        s.passed = check(s.outputs);
        auto t1 = std::chrono::steady_clock::now();
        if (record_timings_) s.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        push(std::move(s));
        return cert_.steps.back().passed;
    }

    void proof_level(const std::string& id, const std::string& statement, const std::string& citation,
                     nlohmann::json inputs = nlohmann::json::object());

    /// A computational step that failed aborts the pipeline.
    bool failed() const { return failed_; }
    const std::string& failing_step() const { return failing_step_; }

    /// verified_true when every computational step passed, verified_false otherwise.
    Certificate finish();
    /// Marks the certificate inconclusive regardless of passed steps.
    Certificate finish_inconclusive();

private:
    void push(Step s);

    Certificate cert_;
    bool record_timings_;
    bool failed_ = false;
    std::string failing_step_;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);
std::string digest_of(const nlohmann::json& inputs);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize(const Certificate& c);
/// Throws std::runtime_error when the path cannot be written.
void emit_certificate(const Certificate& c, const std::string& path);

}  // namespace spectile
