#ifndef HALPHEN_VERIFY_HPP
#define HALPHEN_VERIFY_HPP

#include <complex>
#include <string>
#include <vector>

#include "halphen/jsonio.hpp"

namespace halphen::verify {

using Complex = std::complex<double>;

struct Config {
    int order = 64;
    double tol = 1e-8;            // evaluation-precision knob echoed in the report
    Complex tau = Complex(0, 2);  // base point for pointwise suites
    std::size_t max_steps = 200000;
};

// One verification item. `ref` names the identity being checked (or
// "plumbing" for structural checks). Status is "pass", "fail", or
// "flagged": flagged checks pass under a corrected reading of a printed
// formula and carry a note saying which reading holds.
struct Check {
    std::string id;
    std::string ref;
    std::string status;
    double residual = 0.0;
    double tolerance = 0.0;
    double runtime_ms = 0.0;
    std::string note;
};

struct Report {
    std::string suite;
    Config config;
    std::vector<Check> checks;

    bool all_pass() const;
};

const std::vector<std::string>& suite_names();
Report run_suite(const std::string& suite, const Config& cfg);

// `with_timings = false` drops runtime_ms so identical invocations give
// byte-identical output.
jsonio::Json to_json(const Report& report, bool with_timings = false);

}  // namespace halphen::verify

#endif
