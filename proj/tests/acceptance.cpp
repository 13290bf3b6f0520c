// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one pass/fail line. The process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "orlicz/orlicz.hpp"

using namespace orlicz;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

bool close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// 1. branch-and-bound semivariation == 2^n enumeration, 500 instances,
//    n <= 12, d <= 4, all three target norms, exact to 1e-12, under 10 s
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(42, "acceptance-semivar"));
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        SpacePtr sp = gen::random_space(rng, 1, 12);
        VectorMeasure m = gen::random_measure(rng, sp, 4, true);
        AtomSet a = k % 3 == 0 ? full_set(sp->size()) : gen::random_set(rng, sp->size());
        double fast = semivariation(m, a);
        double slow = semivariation_bruteforce(m, a);
        worst = std::max(worst, std::fabs(fast - slow));
        if (std::fabs(fast - slow) > 1e-12 * std::max(1.0, slow)) ++bad;
    }
    double secs = seconds_since(t0);
    report("criterion 1: semivariation oracle equivalence", bad == 0 && secs < 10.0,
           "max |diff| " + fmt(worst) + ", " + fmt(secs) + " s");
}

// 2. d = 1 scalar collapse to 1e-12 on 200 functions; power-gauge Luxemburg
//    equals the weighted p-norm to 1e-9 for p in {1, 1.5, 2, 3}
void criterion2() {
    Rng rng(derive_seed(42, "acceptance-collapse"));
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
        SpacePtr sp = gen::random_space(rng, 1, 10);
        std::vector<std::vector<double>> vs(sp->size());
        std::vector<double> w(sp->size());
        for (std::size_t i = 0; i < sp->size(); ++i) {
            w[i] = rng.uniform(0.1, 4.0);
            vs[i] = {w[i]};
        }
        VectorMeasure m(sp, TargetNorm{1, NormKind::l1}, vs);
        Fn f = gen::random_fn(rng, sp);
        double lhs = l1_semivar(m)(f);
        double rhs = weighted_l1(sp, w, "ref")(f);
        if (!close(lhs, rhs, 1e-12)) ++bad;
    }
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    for (int k = 0; k < 200; ++k) {
        double p = ps[k % 4];
        SpacePtr sp = gen::random_space(rng);
        OrliczSpace os(l1_mu(sp), YoungFunction::power(p));
        Fn f = gen::random_fn(rng, sp);
        double expected = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            expected += std::pow(std::fabs(f[i]), p) * sp->weight(i);
        expected = std::pow(expected, 1.0 / p);
        if (!close(os.luxemburg(f), expected, 1e-9)) ++bad;
    }
    report("criterion 2: classical collapse", bad == 0, std::to_string(bad) + " mismatches");
}

// 3. indicator-norm formula == direct Luxemburg solve to 1e-9 on 100 random
//    (space, gauge, set) triples over all four base kinds
void criterion3() {
    Rng rng(derive_seed(42, "acceptance-chi"));
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
        SpacePtr sp = gen::random_space(rng);
        gen::BaseDraw base = gen::random_base(rng, sp, k % 4);
        OrliczSpace os(base.X, gen::random_young(rng));
        AtomSet a = gen::random_set(rng, sp->size());
        if (a.empty()) a.set(rng.index(sp->size()));
        if (!close(os.char_norm(a), os.luxemburg(indicator(sp, a)), 1e-9)) ++bad;
    }
    report("criterion 3: indicator norm formula", bad == 0, std::to_string(bad) + " mismatches");
}

// 4. the four norm/modular inequalities on 1000 random instances at 1e-9
void criterion4() {
    Rng rng(derive_seed(42, "acceptance-modular"));
    int bad = 0;
    for (int k = 0; k < 1000; ++k) {
        SpacePtr sp = gen::random_space(rng);
        gen::BaseDraw base = gen::random_base(rng, sp);
        OrliczSpace os(base.X, gen::random_young(rng));
        Fn f = gen::random_fn(rng, sp, 4.0);
        if (!norm_modular_relations(os, f).all_pass()) ++bad;
    }
    report("criterion 4: norm-modular battery", bad == 0, std::to_string(bad) + " failures");
}

// 5. sup over a masked increasing chain == norm of the limit, 1e-9,
//    200 chains for every base kind carrying the Fatou tag
void criterion5() {
    Rng rng(derive_seed(42, "acceptance-fatou"));
    int bad = 0, chains = 0;
    for (int k = 0; k < 200; ++k) {
        SpacePtr sp = gen::random_space(rng);
        YoungFunction phi = gen::random_young(rng);
        for (int kind = 0; kind < 4; ++kind) {
            gen::BaseDraw base = gen::random_base(rng, sp, kind);
            if (!base.X.tags().sigma_fatou) continue;
            OrliczSpace os(base.X, phi);
            Fn f = abs(gen::random_nonzero_fn(rng, sp, 4.0));
            std::vector<std::size_t> order(sp->size());
            for (std::size_t i = 0; i < sp->size(); ++i) order[i] = i;
            for (std::size_t i = sp->size(); i > 1; --i)
                std::swap(order[i - 1], order[rng.index(i)]);
            AtomSet grow(sp->size());
            double sup = 0.0;
            for (std::size_t i = 0; i < sp->size(); ++i) {
                grow.set(order[i]);
                sup = std::max(sup, os.luxemburg(restrict(f, grow)));
            }
            ++chains;
            if (!close(sup, os.luxemburg(f), 1e-9)) ++bad;
        }
    }
    report("criterion 5: Fatou transfer", bad == 0,
           std::to_string(chains) + " chains, " + std::to_string(bad) + " failures");
}

// 6. doubling gauges: norm null-sequences iff modular null-sequences
//    (tail threshold 1e-8) on 100 sequences; exponential gauges flagged
void criterion6() {
    Rng rng(derive_seed(42, "acceptance-delta2"));
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
        SpacePtr sp = gen::random_space(rng);
        gen::BaseDraw base = gen::random_base(rng, sp);
        YoungFunction phi = (k % 2 == 0) ? YoungFunction::power(rng.uniform(1.0, 3.0))
                                         : YoungFunction::power_log(1.0, 1.0);
        OrliczSpace os(base.X, phi);
        Fn f = gen::random_nonzero_fn(rng, sp, 4.0);
        bool null_seq = rng.coin();
        std::vector<Fn> seq;
        for (int i = 0; i < 60; ++i)
            seq.push_back(null_seq ? scale(f, std::pow(0.5, i)) : scale(f, 1.0 + 0.5 * (i % 2)));
        Delta2Consequences rep = delta2_consequences(os, seq, 1e-8);
        if (!rep.equivalence_pass || rep.lux_to_zero != null_seq) ++bad;
    }
    bool flags = !delta2_default(YoungFunction::exp_minus_one(1.0)).is_delta2() &&
                 !delta2_default(YoungFunction::exp_minus_one(1.7)).is_delta2() &&
                 delta2_default(YoungFunction::power(2.0)).is_delta2() &&
                 delta2_default(YoungFunction::power_log(1.0, 1.0)).is_delta2();
    report("criterion 6: doubling convergence equivalence", bad == 0 && flags,
           std::to_string(bad) + " failures, estimator flags " + (flags ? "ok" : "wrong"));
}

// 7. product identity: constructive == grid oracle == combined-gauge norm to
//    1e-6 on 50 3-atom instances; one-sided bound on 200 10-atom instances
void criterion7() {
    Rng rng(derive_seed(42, "acceptance-cp"));
    int bad = 0;
    for (int k = 0; k < 50; ++k) {
        SpacePtr sp = unit_space(3);
        YoungFunction phi0 = YoungFunction::power(rng.uniform(1.0, 2.0));
        YoungFunction phi1 = YoungFunction::power(rng.uniform(2.0, 4.0));
        double theta = rng.uniform(0.2, 0.8);
        std::vector<Fn> fs{gen::random_nonzero_fn(rng, sp, 4.0)};
        CpIdentityReport rep = cp_orlicz_identity(l1_mu(sp), phi0, phi1, theta, fs);
        if (!rep.all_pass() || rep.rows[0].oracle < 0.0) ++bad;
    }
    for (int k = 0; k < 200; ++k) {
        SpacePtr sp = unit_space(10);
        YoungFunction phi0 = YoungFunction::power(rng.uniform(1.0, 2.0));
        YoungFunction phi1 = YoungFunction::power(rng.uniform(2.0, 4.0));
        double theta = rng.uniform(0.2, 0.8);
        std::vector<Fn> fs{gen::random_nonzero_fn(rng, sp, 4.0)};
        CpIdentityReport rep = cp_orlicz_identity(l1_mu(sp), phi0, phi1, theta, fs);
        if (!rep.rows[0].one_sided_ok) ++bad;
    }
    report("criterion 7: Calderon-product identity", bad == 0, std::to_string(bad) + " failures");
}

// 8. interpolating t^{p0}, t^{p1} over the Choquet base lands on the 1/p
//    power of the base, 1/p = (1-theta)/p0 + theta/p1, to 1e-9 on 200
//    functions for each pinned configuration
void criterion8() {
    Rng rng(derive_seed(42, "acceptance-interp"));
    const double cfg[][3] = {{1.0, 3.0, 0.5}, {2.0, 4.0, 0.25}, {1.5, 2.0, 0.75}};
    int bad = 0;
    for (const auto& c : cfg) {
        double p = 1.0 / ((1.0 - c[2]) / c[0] + c[2] / c[1]);
        for (int outer = 0; outer < 10; ++outer) {
            SpacePtr sp = gen::random_space(rng, 2, 6);
            VectorMeasure m = gen::random_measure(rng, sp, 3);
            InterpolationOptions opts;
            opts.trials = 300;
            opts.seed = rng.next_u64();
            InterpolationResult res = complex_interpolation(
                l1_semivar(m), YoungFunction::power(c[0]), YoungFunction::power(c[1]), c[2], opts);
            QuasiNormedSpace expected = power_space(l1_semivar(m), 1.0 / p);
            for (int inner = 0; inner < 20; ++inner) {
                Fn f = gen::random_fn(rng, sp, 4.0);
                if (!close(res.space.luxemburg(f), expected(f), 1e-9)) ++bad;
            }
        }
    }
    report("criterion 8: interpolation exponent identity", bad == 0,
           std::to_string(bad) + " of 600 failures");
}

// 9. convexity transfer: L1 certified at eps = 0.49, square gauge doubling
//    constant 4, derived delta survives 1e5 refuter trials on the gauge space
void criterion9() {
    SpacePtr sp = unit_space(6);
    QuasiNormedSpace base = l1_mu(sp);
    LConvexityResult base_cert =
        l_convexity_search(base, 0.49, 20000, 8, derive_seed(42, "acceptance-lconvex-base"));
    double s = delta2_default(YoungFunction::power(2.0)).constant;
    double delta = l_convexity_transfer_delta(0.49, s);
    OrliczSpace os(base, YoungFunction::power(2.0));
    LConvexityResult cert = l_convexity_search(os.as_space(true), delta, 100000, 8,
                                               derive_seed(42, "acceptance-lconvex-gauge"));
    report("criterion 9: lattice-convexity transfer", base_cert.passed && cert.passed,
           "s=" + fmt(s) + " delta=" + fmt(delta) + " trials=100000");
}

// 10. gauge spaces keep the quasi-triangle constant of their base:
//     empirical Q3 <= declared K + 1e-9 over 1000 random pairs
void criterion10() {
    Rng rng(derive_seed(42, "acceptance-q3"));
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        SpacePtr sp = gen::random_space(rng);
        gen::BaseDraw base = gen::random_base(rng, sp);
        OrliczSpace os(base.X, gen::random_young(rng));
        Fn f = gen::random_fn(rng, sp, 4.0);
        Fn g = gen::random_fn(rng, sp, 4.0);
        double lf = os.luxemburg(f), lg = os.luxemburg(g);
        double lsum = os.luxemburg(add(f, g));
        if (lf + lg > 0.0) worst = std::max(worst, lsum / (lf + lg));
        if (lsum > base.X.K() * (lf + lg) * (1.0 + 1e-9) + 1e-15) ++bad;
    }
    report("criterion 10: quasi-triangle bookkeeping", bad == 0,
           "worst observed ratio " + fmt(worst));
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();

    // full registry at default budgets must stay green and finish quickly
    auto tv = std::chrono::steady_clock::now();
    Registry reg = default_registry();
    std::vector<Verdict> verdicts = run_suite(reg, "*", 42, 0);
    double verify_secs = seconds_since(tv);
    bool all = true;
    for (const auto& v : verdicts) {
        if (!v.pass()) {
            all = false;
            std::cout << "       registry failure: " << v.id << "\n";
        }
    }
    report("full verify run: all checks pass in under 2 minutes",
           all && verify_secs < 120.0,
           std::to_string(verdicts.size()) + " checks, " + fmt(verify_secs) + " s");

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << " (total "
              << fmt(seconds_since(t0)) << " s)\n";
    return g_failures == 0 ? 0 : 1;
}
