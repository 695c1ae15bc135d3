#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lpw/certificate.hpp"

namespace lpw {

/// Outcome of one canonical suite: a pass flag, a one-line summary and the
/// certificates produced along the way.
struct SuiteResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<Certificate> certs;
    double seconds = 0.0;  // wall time; never written into certificates
};

SuiteResult pruefer_suite();
SuiteResult rationals_suite();
SuiteResult direct_sum_suite();
SuiteResult domar_suite();
SuiteResult beurling_suite();
SuiteResult countex_suite();
SuiteResult euclidean_suite();
SuiteResult negative_controls_suite();
/// Runs suites 1-8 twice and compares the certificate JSON byte for byte.
SuiteResult determinism_suite();

/// Suites 1-8, plus 9 when requested.
std::vector<SuiteResult> run_all_suites(bool with_determinism = true);

/// {"schema": "lpw.report/1", "suites": [...]} with certificates inlined.
Json suite_report(const std::vector<SuiteResult>& results);
/// All certificates of suites 1-8, serialized.
std::string suite_bundle_dump();

}  // namespace lpw
