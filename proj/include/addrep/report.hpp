#pragma once

#include <cctype>
#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace addrep {

/// One pipeline/check step. Status is "pass", "fail", "error" or "info";
/// "info" never affects the overall verdict.
struct CheckStep {
  std::string name;
  std::string status = "info";
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
  double elapsed_ms = 0.0;
};

/// Structured record of a verification run. A report is produced even when a
/// step fails; the failing step stays identified in `steps`. Every numeric
/// claim recorded in `detail` carries the bound up to which it was checked.
struct VerificationReport {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<CheckStep> steps;

  bool passed() const {
    for (const auto& s : steps)
      if (s.status == "fail" || s.status == "error") return false;
    return true;
  }

  CheckStep& add_step(const std::string& name) {
    steps.push_back(CheckStep{name});
    return steps.back();
  }

  /// Stable-schema JSON. Timing fields are isolated so that reports from
  /// identical inputs are byte-identical with `with_timing = false`.
  nlohmann::ordered_json to_json(bool with_timing = true) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["pass"] = passed();
    j["inputs"] = inputs;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
      nlohmann::ordered_json sj;
      sj["name"] = s.name;
      sj["status"] = s.status;
      sj["detail"] = s.detail;
      if (with_timing) sj["elapsed_ms"] = s.elapsed_ms;
      j["steps"].push_back(sj);
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    if (!inputs.empty()) os << "inputs: " << inputs.dump() << "\n";
    for (const auto& s : steps) {
      std::string tag = s.status;
      for (auto& c : tag) c = static_cast<char>(std::toupper(c));
      os << "[" << tag << "] " << s.name;
      if (!s.detail.empty()) os << "  " << s.detail.dump();
      os << "\n";
    }
    os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }
};

/// Scope timer writing wall-clock milliseconds into a step on destruction.
class StepTimer {
public:
  explicit StepTimer(CheckStep& step)
      : step_(step), start_(std::chrono::steady_clock::now()) {}
  ~StepTimer() {
    auto end = std::chrono::steady_clock::now();
    step_.elapsed_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(end - start_)
            .count();
  }

private:
  CheckStep& step_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace addrep
