#include "seplab/closed_forms.hpp"

#include <cmath>

namespace seplab {

namespace {

long double falling(long double n, int k) {
    long double out = 1.0L;
    for (int i = 0; i < k; ++i) out *= n - i;
    return out;
}

long double choose(int n, int k) {
    if (n < k) return 0.0L;
    long double out = falling(static_cast<long double>(n), k);
    for (int i = 2; i <= k; ++i) out /= i;
    return out;
}

// (1 - p^2)^e computed through log1p to keep small-p accuracy at large exponents.
long double one_minus_p2_pow(long double p, long long e) {
    if (e == 0) return 1.0L;
    const long double base = -p * p;
    if (base <= -1.0L) return 0.0L;  // p == 1 limit
    return std::exp(static_cast<long double>(e) * std::log1p(base));
}

Rational rational_choose(int n, int k) {
    if (n < k) return Rational(0);
    Rational out(1);
    for (int i = 0; i < k; ++i) out *= n - i;
    for (int i = 2; i <= k; ++i) out /= i;
    return out;
}

void check_probability(long double p) {
    if (!(p >= 0.0L && p <= 1.0L))
        throw std::invalid_argument("closed form: p must lie in [0, 1]");
}

void check_probability(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("closed form: p must lie in [0, 1]");
}

}  // namespace

std::string to_string(OriginVariant v) {
    return v == OriginVariant::proof_p ? "proof_p" : "theorem_p2";
}

OriginVariant origin_variant_from_string(const std::string& s) {
    if (s == "proof_p") return OriginVariant::proof_p;
    if (s == "theorem_p2") return OriginVariant::theorem_p2;
    throw std::invalid_argument("unknown origin variant: " + s);
}

long double expectation_polytope(int n, long double p) {
    check_probability(p);
    if (n < 2) return 0.0L;
    const long double p2 = p * p;
    const long double t4 = 12.0L * choose(n, 4) * p2 * (1.0L - p2);
    long double t3 = 0.0L;
    if (n >= 3)
        t3 = 6.0L * choose(n, 3) * p2 * (1.0L + (1.0L - p) * one_minus_p2_pow(p, n - 3));
    return t4 + t3;
}

long double expectation_triangulation(int n, long double p, OriginVariant variant) {
    check_probability(p);
    if (n < 2) return 0.0L;
    const long double p2 = p * p;
    long double out = 6.0L * choose(n, 4) * p2 * (2.0L - p2);
    out += 6.0L * choose(n, 3) * p2;
    out += 2.0L * choose(n, 2) * (1.0L - p) * (1.0L - one_minus_p2_pow(p, n - 2));
    out += 2.0L * choose(n, 2) * (variant == OriginVariant::proof_p ? p : p2);
    return out;
}

long double variance_case1_polytope(int n, long double p) {
    check_probability(p);
    const long double nn = static_cast<long double>(n);
    const long double p2 = p * p;
    const long double q = 1.0L - p;
    const long double core = 1.0L - 2.0L * p2;
    const long double t6 = 2.0L * falling(nn, 6) * p2 * p * q * core * core;
    const long double t5 =
        8.0L * falling(nn, 5) * p2 * p * q * (p2 * p * q + core * core);
    const long double omp2 = 1.0L - p2;
    const long double t4 = falling(nn, 4) * p2 * omp2 * (1.0L - p2 * omp2 + omp2 * omp2) -
                           falling(nn, 4) * p2 * p2 * omp2 * (3.0L - 4.0L * p2);
    return t6 + t5 + t4;
}

long double binomial_moment4(long long m, long double p) {
    check_probability(p);
    if (m < 0) throw std::invalid_argument("binomial_moment4: m must be >= 0");
    const long double mm = static_cast<long double>(m);
    return falling(mm, 4) * p * p * p * p + 6.0L * falling(mm, 3) * p * p * p +
           7.0L * falling(mm, 2) * p * p + mm * p;
}

long double critical_p() { return 1.0L / std::sqrt(2.0L); }

Rational expectation_polytope_exact(int n, const Rational& p) {
    check_probability(p);
    if (n < 2) return Rational(0);
    const Rational p2 = p * p;
    Rational out = 12 * rational_choose(n, 4) * p2 * (1 - p2);
    if (n >= 3)
        out += 6 * rational_choose(n, 3) * p2 *
               (1 + (1 - p) * rational_pow(1 - p2, static_cast<unsigned long>(n - 3)));
    return out;
}

Rational expectation_triangulation_exact(int n, const Rational& p, OriginVariant variant) {
    check_probability(p);
    if (n < 2) return Rational(0);
    const Rational p2 = p * p;
    Rational out = 6 * rational_choose(n, 4) * p2 * (2 - p2);
    out += 6 * rational_choose(n, 3) * p2;
    out += 2 * rational_choose(n, 2) * (1 - p) *
           (1 - rational_pow(1 - p2, static_cast<unsigned long>(n - 2)));
    out += 2 * rational_choose(n, 2) * (variant == OriginVariant::proof_p ? p : p2);
    return out;
}

MomentReport moment_report(int n, long double p, Model model, OriginVariant variant) {
    MomentReport report;
    if (model == Model::polytope) {
        report.expectation = expectation_polytope(n, p);
        report.variance_principal = variance_case1_polytope(n, p);
    } else {
        report.expectation = expectation_triangulation(n, p, variant);
        report.variance_principal = 0.0L;
    }
    const long double nn = static_cast<long double>(n);
    if (1.0L - p < 1.0L / nn)
        report.regime_label = "near-complete (1-p < 1/n): expectation ~ n^3 p^2";
    else if (p <= 1.0L / (nn * nn))
        report.regime_label = "sparse (p <= 1/n^2): variance ~ n^2 p";
    else
        report.regime_label = "generic: expectation ~ n^4 p^2 (1-p), variance ~ n^6 p^3 (1-p)";
    return report;
}

}  // namespace seplab
