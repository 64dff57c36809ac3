// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "planecode/suite.hpp"

int main(int argc, char** argv) {
    planecode::SuiteOptions opts;
    if (const char* t = std::getenv("PLANECODE_THREADS")) opts.threads = static_cast<unsigned>(std::max(1, std::atoi(t)));
    for (int i = 1; i < argc; ++i) opts.only.insert(argv[i]);
    auto report = planecode::run_acceptance(opts, [](const planecode::SuiteRow& row) {
        std::printf("%s\n", planecode::format_row(row).c_str());
        std::fflush(stdout);
    });
    if (!report.experiments.empty()) std::printf("experiments %s\n", report.experiments.dump().c_str());
    std::printf("%s in %.1f s\n", report.passed ? "ALL PASS" : "FAILED", report.seconds);
    return report.passed ? 0 : 1;
}
