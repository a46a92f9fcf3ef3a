#include "thetascope/roots_of_unity.hpp"

#include <cmath>
#include <numeric>

namespace thetascope::unity {

namespace {

using C = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// omega^m from a table of the n distinct powers, phase-accurate.
std::vector<C> power_table(int n, int k) {
    std::vector<C> pw(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const double ang = 2.0 * kPi * (static_cast<long long>(k) * m % n) / n;
        pw[static_cast<std::size_t>(m)] = {std::cos(ang), std::sin(ang)};
    }
    return pw;
}

long long triangle_mod(long long j, long long n) {
    // j(j+1)/2 mod n without overflow for any j of interest.
    const long long a = j % (2 * n), b = (j + 1) % (2 * n);
    return (a * b / 2) % n;
}

UnityNumerator build(int n, int k, int period, bool block) {
    if (n < 3) throw std::domain_error("roots_of_unity: order n must be >= 3");
    if (std::gcd(k, n) != 1)
        throw std::domain_error("roots_of_unity: k must be coprime to n (primitive root)");
    UnityNumerator num;
    num.root.n = n;
    num.root.k = ((k % n) + n) % n;
    const double ang = 2.0 * kPi * num.root.k / n;
    num.root.value = {std::cos(ang), std::sin(ang)};
    num.period = period;
    num.antiperiodic_block = block;
    auto pw = power_table(n, num.root.k);
    num.coeffs.resize(static_cast<std::size_t>(period));
    for (int j = 0; j < period; ++j)
        num.coeffs[static_cast<std::size_t>(j)] =
            pw[static_cast<std::size_t>(triangle_mod(j, n))];
    return num;
}

} // namespace

PrimitiveRoot make_primitive_root(int n, int k) {
    return build(n, k, 1, false).root;
}

UnityNumerator build_numerator(int n, int k) {
    return build(n, k, n % 2 == 1 ? n : 2 * n, false);
}

UnityNumerator build_antiperiodic_block(int n, int k) {
    if (n % 2 != 0)
        throw std::domain_error("build_antiperiodic_block: n must be even");
    return build(n, k, n, true);
}

double check_self_reciprocal(const UnityNumerator& num) {
    double worst = 0.0;
    const auto& c = num.coeffs;
    for (std::size_t j = 0; j < c.size(); ++j)
        worst = std::max(worst, std::abs(c[j] - c[c.size() - 1 - j]));
    return worst;
}

std::complex<double> interior_root(const UnityNumerator& num, Exec exec) {
    auto rs = poly::aberth_roots(num.coeffs, exec);
    if (rs.roots.empty())
        throw ContradictionError("interior_root: numerator has no roots");
    const C best = rs.roots.front(); // sorted by modulus
    if (!(std::abs(best) < 1.0 - 1e-9))
        throw ContradictionError(
            "interior_root: no root with modulus < 1 - 1e-9; this would falsify the interior-root lemma");
    return best;
}

double rational_form_residual(const UnityNumerator& num, std::complex<double> x) {
    const double ax = std::abs(x);
    if (ax > 0.9)
        throw std::domain_error("rational_form_residual: requires |x| <= 0.9");

    // Direct sum of theta(omega, x): terms have modulus |x|^j, geometric.
    auto pw = power_table(num.root.n, num.root.k);
    const long long n = num.root.n;
    C sum = 0.0, term = 1.0;
    for (long long j = 1; j < 20000; ++j) {
        sum += term;
        // t_{j} = t_{j-1} * omega^{j mod n} * x
        term *= pw[static_cast<std::size_t>(j % n)] * x;
        if (std::abs(term) < 1e-17 * (1.0 - ax)) { sum += term; break; }
    }

    // Numerator over its rational denominator.
    C p = 0.0;
    for (std::size_t j = num.coeffs.size(); j-- > 0;) p = p * x + num.coeffs[j];
    C xp = std::pow(x, num.period);
    const C denom = num.antiperiodic_block ? (1.0 + xp) : (1.0 - xp);
    return std::abs(sum - p / denom);
}

int resolve_denominator_sign(const UnityNumerator& num, std::complex<double> x) {
    UnityNumerator minus = num;
    minus.antiperiodic_block = true;
    UnityNumerator plus = num;
    plus.antiperiodic_block = false;
    const double r_minus = rational_form_residual(minus, x); // 1 + x^p
    const double r_plus = rational_form_residual(plus, x);   // 1 - x^p
    return r_plus <= r_minus ? +1 : -1;
}

zeros::ZeroRecord rouche_neighborhood_zero(int n, int k, double rho) {
    if (!(rho >= 0.9 && rho < 1.0))
        throw std::domain_error("rouche_neighborhood_zero: requires 0.9 <= rho < 1");
    auto num = build_numerator(n, k);
    const C seed = interior_root(num);
    const Cx<double> q = from_std(rho * num.root.value);

    Cx<double> x = from_std(seed);
    zeros::ZeroRecord rec;
    rec.q = rho;
    rec.source = zeros::ZeroRecord::Source::user_seed;
    const double eps = series::kEpsStandard;
    for (int it = 0; it < 64; ++it) {
        auto f = series::theta<double>(q, x, eps);
        auto df = series::theta_dx<double>(q, x, eps);
        if (abs_estimate(df.value) < 1e-10 * (1.0 + abs_estimate(f.value)))
            throw zeros::DegenerateDerivativeError("rouche_neighborhood_zero: derivative too small");
        const Cx<double> step = f.value / df.value;
        const double ssz = abs_estimate(step);
        rec.step_sizes.push_back(ssz);
        x -= step;
        ++rec.newton_steps;
        if (ssz <= 1e-13 * (1.0 + abs_estimate(x))) {
            rec.location = to_std(x);
            rec.location_ext = widen<DD>(rec.location);
            rec.residual = abs_estimate(series::theta<double>(q, x, eps).value);
            return rec;
        }
    }
    throw zeros::NoConvergenceError("rouche_neighborhood_zero: Newton did not converge");
}

} // namespace thetascope::unity
