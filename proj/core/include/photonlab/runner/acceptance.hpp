#pragma once

#include <functional>
#include <string>
#include <vector>

namespace photonlab::runner {

struct AcceptanceOptions {
    /// Negative control: synthesize with the wrong mode measure.
    bool inject_measure_fault = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Criterion {
    int id;
    std::string title;
    std::function<CriterionResult(const AcceptanceOptions&)> run;
};

/// The eleven acceptance criteria in order.
const std::vector<Criterion>& acceptance_criteria();

CriterionResult run_criterion(const Criterion& c, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "[PASS] 01 title: detail (1.23 s)"
std::string format_result(const CriterionResult& r);

}  // namespace photonlab::runner
