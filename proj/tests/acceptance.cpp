// Acceptance harness: one pass/fail line per acceptance criterion.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include "rackhom/verify_suite.hpp"

using namespace rackhom;

namespace {

int failures = 0;

void report(int num, const std::string& label, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << num << ": " << label << "\n";
    std::cout.flush();
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool ledger_ok(const VerifyLedger& led) { return led.all_ok(); }

}  // namespace

int main() {
    VerifyOptions opts;  // defaults match the criteria bounds

    // 1. presimplicial relation, del^2 = 0, anticommutation, degrees <= 5
    try {
        report(1, "axioms & algebra (degrees <= 5)", ledger_ok(run_verify("axioms", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 1: exception: " << e.what() << "\n";
        ++failures;
    }

    // 2. splitting H = HN + HD over Z (and fields), n <= 4
    try {
        report(2, "splitting H = HN + HD (n <= 4)", ledger_ok(run_verify("splitting", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 2: exception: " << e.what() << "\n";
        ++failures;
    }

    // 3. late splitting HD_{n+1} = HN_n + HL_{n+1} and s iso, n <= 3
    try {
        report(3, "late splitting and doubling iso (n <= 3)",
               ledger_ok(run_verify("late-splitting", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 3: exception: " << e.what() << "\n";
        ++failures;
    }

    // 4. homotopy identity del h^w + h^w del = compound action, degrees <= 4
    try {
        report(4, "homotopy identity (degrees <= 4)", ledger_ok(run_verify("homotopy", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 4: exception: " << e.what() << "\n";
        ++failures;
    }

    // 5. spectral sequence pages and convergence, total degree <= 5,
    //    runtime <= 1 minute per fixture/ring
    try {
        bool ok = true;
        VerifyLedger led;
        struct Case {
            const Multishelf* X;
            bool overQ;
        };
        for (const Case& c : {Case{&fx_T2a(), true}, Case{&fx_T2a(), false},
                              Case{&fx_R3a(), true}, Case{&fx_R3a(), false}}) {
            auto t0 = std::chrono::steady_clock::now();
            if (c.overQ)
                verify_detail::spectral_one(led, *c.X, QRing{}, 5);
            else
                verify_detail::spectral_one(led, *c.X, FpRing{2}, 5);
            if (seconds_since(t0) > 60.0) ok = false;
        }
        report(5, "spectral sequence E^1/E^2/E^inf (n <= 5, <= 1 min per fixture)",
               ok && ledger_ok(led));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 5: exception: " << e.what() << "\n";
        ++failures;
    }

    // 6. one-term isomorphism ledger (degrees <= 5), rank decomposition over Z (n <= 5),
    //    pull-through p <= 3
    try {
        report(6, "one-term isomorphism, rank decomposition, pull-through",
               ledger_ok(run_verify("one-term-iso", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 6: exception: " << e.what() << "\n";
        ++failures;
    }

    // 7. recursive count for |X| in {2,3}, n <= 5, HD_1 = 0
    try {
        report(7, "recursive count (n <= 5)",
               ledger_ok(run_verify("recursive-count", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 7: exception: " << e.what() << "\n";
        ++failures;
    }

    // 8. two-term isomorphism ledger (degrees <= 4) and Kunneth (n <= 4)
    try {
        bool ok = ledger_ok(run_verify("two-term-iso", opts)) &&
                  ledger_ok(run_verify("kunneth", opts));
        report(8, "two-term isomorphism and Kunneth (n <= 4)", ok);
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 8: exception: " << e.what() << "\n";
        ++failures;
    }

    // 9. corollary harness across all quandle homs between fixtures of size <= 3
    try {
        report(9, "corollary harness (vanishing and iso-transfer implications)",
               ledger_ok(run_verify("corollaries", opts)));
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 9: exception: " << e.what() << "\n";
        ++failures;
    }

    // 10. staircase lemma: region invariants, >= 100 random morphisms,
    //     induced morphisms; runtime <= 2 minutes
    try {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = ledger_ok(run_verify("staircase", opts));
        ok = ok && seconds_since(t0) <= 120.0;
        report(10, "staircase lemma harness (<= 2 min)", ok);
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 10: exception: " << e.what() << "\n";
        ++failures;
    }

    // 11. determinism: two identical verify runs produce byte-identical reports
    try {
        VerifyOptions small;
        small.max_degree = 2;
        auto run_once = [&]() {
            std::ostringstream os;
            emit_ledger(os, run_verify("splitting", small));
            emit_ledger(os, run_verify("recursive-count", small));
            emit_ledger(os, run_verify("staircase", small));
            return os.str();
        };
        std::string r1 = run_once();
        std::string r2 = run_once();
        report(11, "determinism (byte-identical verify reports)", !r1.empty() && r1 == r2);
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 11: exception: " << e.what() << "\n";
        ++failures;
    }

    return failures == 0 ? 0 : 1;
}
