#include "thetascope/zerofinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thetascope/sampling.hpp"

namespace thetascope::zeros {

namespace {

using C = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kArcAngleLimit = kPi / 3.0; // refine past this; certify below pi/2
constexpr int kMaxAngleLevels = 44;
constexpr int kMaxDipLevels = 12;
constexpr long kMaxSamples = 2'000'000;

template <class R>
struct NewtonOutcome {
    Cx<R> x;
    double residual = 0.0;
    int steps = 0;
    std::vector<double> sizes;
};

template <class R>
NewtonOutcome<R> newton_on_theta(double q, Cx<R> x0, double eps, double step_tol) {
    constexpr int kCap = 64;
    const Cx<R> qc{R(q)};
    NewtonOutcome<R> out;
    Cx<R> x = x0;
    for (int it = 0; it < kCap; ++it) {
        auto f = series::theta<R>(qc, x, eps);
        auto df = series::theta_dx<R>(qc, x, eps);
        const double fa = abs_estimate(f.value);
        const double dfa = abs_estimate(df.value);
        if (dfa < 1e-10 * (1.0 + fa))
            throw DegenerateDerivativeError("refine_zero: derivative modulus below 1e-10 scale");
        const Cx<R> step = f.value / df.value;
        const double ssz = abs_estimate(step);
        out.sizes.push_back(ssz);
        x -= step;
        ++out.steps;
        if (ssz <= step_tol * (1.0 + abs_estimate(x))) {
            out.x = x;
            out.residual = abs_estimate(series::theta<R>(qc, x, eps).value);
            return out;
        }
        const auto& s = out.sizes;
        if (s.size() >= 6) {
            bool growing = true;
            for (std::size_t k = s.size() - 5; k < s.size(); ++k)
                if (s[k] <= s[k - 1]) { growing = false; break; }
            if (growing)
                throw NoConvergenceError("refine_zero: step growth over 5 consecutive iterations");
        }
    }
    throw NoConvergenceError("refine_zero: Newton cap of 64 iterations reached");
}

ZeroRecord make_record(double q, NewtonOutcome<DD>&& nr, ZeroRecord::Source src) {
    ZeroRecord rec;
    rec.q = q;
    rec.location = to_std(nr.x);
    rec.location_ext = nr.x;
    rec.residual = nr.residual;
    rec.newton_steps = nr.steps;
    rec.step_sizes = std::move(nr.sizes);
    rec.source = src;
    return rec;
}

ZeroRecord make_record(double q, NewtonOutcome<double>&& nr, ZeroRecord::Source src) {
    ZeroRecord rec;
    rec.q = q;
    rec.location = to_std(nr.x);
    rec.location_ext = widen<DD>(rec.location);
    rec.residual = nr.residual;
    rec.newton_steps = nr.steps;
    rec.step_sizes = std::move(nr.sizes);
    rec.source = src;
    return rec;
}

// One adaptive winding pass around an arbitrary-center circle.
DiskCertificate wind_circle(double q, C center, double radius, Precision prec, Exec exec) {
    core::detail::require_q_open_interval(q);
    if (!(radius > 0.0)) throw std::domain_error("count_zeros_in_disk: radius must be > 0");

    struct Node {
        double phi;
        C v;
        double tail;
        double lb;
    };

    auto eval_batch = [&](const std::vector<double>& phis) {
        auto vals = sampling::theta_on_circle(q, center, radius, phis, prec, exec);
        std::vector<Node> nodes(phis.size());
        for (std::size_t i = 0; i < phis.size(); ++i) {
            nodes[i] = {phis[i], vals[i].value, vals[i].tail_bound,
                        std::abs(vals[i].value) - vals[i].tail_bound};
        }
        return nodes;
    };

    const int n0 = 256;
    std::vector<double> phis(n0);
    for (int k = 0; k < n0; ++k) phis[k] = kTwoPi * k / n0;
    std::vector<Node> nodes = eval_batch(phis);
    // Close the loop with a copy of the first node at 2 pi; every arc is then
    // a consecutive pair and the winding sum telescopes over [0, 2 pi].
    nodes.push_back({kTwoPi, nodes.front().v, nodes.front().tail, nodes.front().lb});

    auto arc_angle = [](const Node& a, const Node& b) {
        const C r = b.v / a.v;
        return std::atan2(r.imag(), r.real());
    };
    auto needs_split = [&](const Node& a, const Node& b, int level) {
        if (b.phi - a.phi < 1e-14) return false;
        if (std::abs(arc_angle(a, b)) > kArcAngleLimit) return level < kMaxAngleLevels;
        if (std::min(a.lb, b.lb) < 10.0 * std::max(a.tail, b.tail))
            return level < kMaxDipLevels;
        return false;
    };

    long total_samples = static_cast<long>(nodes.size()) - 1;
    bool exhausted = false;
    for (int level = 0;; ++level) {
        std::vector<double> mids;
        std::vector<std::size_t> where; // arc index the midpoint splits
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            if (needs_split(nodes[i], nodes[i + 1], level)) {
                mids.push_back(0.5 * (nodes[i].phi + nodes[i + 1].phi));
                where.push_back(i);
            }
        }
        if (mids.empty()) break;
        if (level >= kMaxAngleLevels || total_samples + static_cast<long>(mids.size()) > kMaxSamples) {
            exhausted = true;
            break;
        }
        total_samples += static_cast<long>(mids.size());
        auto fresh = eval_batch(mids);
        std::vector<Node> merged;
        merged.reserve(nodes.size() + fresh.size());
        std::size_t f = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            merged.push_back(nodes[i]);
            if (f < where.size() && where[f] == i) merged.push_back(fresh[f++]);
        }
        nodes.swap(merged);
    }

    DiskCertificate cert;
    cert.q = q;
    cert.radius = radius;
    cert.samples = static_cast<long>(nodes.size()) - 1;

    double min_lb = std::numeric_limits<double>::infinity();
    double total_arg = 0.0;
    double max_step = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        min_lb = std::min(min_lb, nodes[i].lb);
        const double d = arc_angle(nodes[i], nodes[i + 1]);
        max_step = std::max(max_step, std::abs(d));
        total_arg += d;
    }
    cert.min_modulus_lb = std::max(min_lb, 0.0);
    const double w = total_arg / kTwoPi;
    cert.winding = static_cast<int>(std::lround(w));
    const bool integral = std::abs(w - cert.winding) < 0.01;
    cert.status = (!exhausted && min_lb > 0.0 && max_step < kPi / 2.0 && integral)
                      ? DiskCertificate::Status::certified
                      : DiskCertificate::Status::inconclusive;
    return cert;
}

} // namespace

TruncationRoots truncation_roots(double q, int n, Exec exec) {
    core::detail::require_q_open_interval(q);
    if (q == 0.0) throw std::domain_error("truncation_roots: q must be nonzero");
    if (n < 1 || n > 512) throw std::domain_error("truncation_roots: n must be in [1, 512]");

    std::vector<C> coeffs(static_cast<std::size_t>(n) + 1);
    double c = 1.0, qp = 1.0;
    coeffs[0] = 1.0;
    for (int j = 1; j <= n; ++j) {
        qp *= q;
        c *= qp; // q^{j(j+1)/2}
        coeffs[static_cast<std::size_t>(j)] = c;
    }

    auto rs = poly::aberth_roots(coeffs, exec);
    TruncationRoots out;
    out.q = q;
    out.n = n;
    out.effective_degree = rs.effective_degree;
    out.converged = rs.converged;
    out.roots = std::move(rs.roots);
    out.residuals = std::move(rs.residuals);
    return out;
}

ZeroRecord refine_zero(double q, C seed, Precision prec) {
    core::detail::require_q_open_interval(q);
    core::detail::require_finite(seed);
    if (prec == Precision::extended)
        return refine_zero(q, widen<DD>(seed), prec);
    if (core::detail::promote_standard(q)) {
        auto nr = newton_on_theta<DD>(q, widen<DD>(seed), series::kEpsStandard, 1e-13);
        return make_record(q, std::move(nr), ZeroRecord::Source::user_seed);
    }
    auto nr = newton_on_theta<double>(q, from_std(seed), series::kEpsStandard, 1e-13);
    return make_record(q, std::move(nr), ZeroRecord::Source::user_seed);
}

ZeroRecord refine_zero(double q, Cx<DD> seed, Precision prec) {
    core::detail::require_q_open_interval(q);
    const double eps = prec == Precision::extended ? series::kEpsExtended : series::kEpsStandard;
    const double tol = prec == Precision::extended ? 1e-28 : 1e-13;
    auto nr = newton_on_theta<DD>(q, seed, eps, tol);
    return make_record(q, std::move(nr), ZeroRecord::Source::user_seed);
}

Cx<DD> polish_truncation_root(double q, int n, C seed) {
    core::detail::require_q_open_interval(q);
    if (n < 1) throw std::domain_error("polish_truncation_root: n must be >= 1");

    std::vector<DD> coeffs(static_cast<std::size_t>(n) + 1);
    DD c(1.0), qp(1.0);
    coeffs[0] = c;
    for (int j = 1; j <= n; ++j) {
        qp *= DD(q);
        c *= qp;
        coeffs[static_cast<std::size_t>(j)] = c;
    }

    Cx<DD> x = widen<DD>(seed);
    for (int it = 0; it < 100; ++it) {
        Cx<DD> p{coeffs[static_cast<std::size_t>(n)]};
        Cx<DD> dp{DD(0.0)};
        for (int j = n - 1; j >= 0; --j) {
            dp = dp * x + p;
            p = p * x + Cx<DD>{coeffs[static_cast<std::size_t>(j)]};
        }
        const double dpa = abs_estimate(dp);
        if (dpa == 0.0)
            throw DegenerateDerivativeError("polish_truncation_root: vanishing derivative");
        const Cx<DD> step = p / dp;
        x -= step;
        if (abs_estimate(step) <= 1e-30 * (1.0 + abs_estimate(x))) return x;
    }
    throw NoConvergenceError("polish_truncation_root: no convergence in 100 iterations");
}

DiskCertificate count_zeros_in_disk(double q, double radius, Precision prec, Exec exec) {
    return wind_circle(q, C(0.0, 0.0), radius, prec, exec);
}

DiskCertificate certify_unit_disk(double q, Precision prec, Exec exec) {
    if (q == 0.0)
        throw std::domain_error("certify_unit_disk: q must be nonzero (theta(0,.) == 1)");
    return wind_circle(q, C(0.0, 0.0), 1.0, prec, exec);
}

int zero_multiplicity(double q, C zero_location, Precision prec) {
    auto cert = wind_circle(q, zero_location, 1e-6, prec, default_exec());
    return cert.winding;
}

double enestrom_kakeya_bound(double q, int n) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("enestrom_kakeya_bound: q must lie in (0,1)");
    if (n < 1) throw std::domain_error("enestrom_kakeya_bound: n must be >= 1");
    // |a_{j-1}/a_j| = q^{-j}, increasing in j, so the scan settles at 1/q.
    double ratio = 1.0 / q;
    double best = ratio;
    for (int j = 2; j <= n; ++j) {
        ratio /= q;
        if (ratio < best) best = ratio;
    }
    return best;
}

double sqrt_disk_bound(double q) {
    const double a = std::abs(q);
    if (!(a > 0.0 && a <= 0.4))
        throw std::domain_error("sqrt_disk_bound: requires 0 < |q| <= 0.4");
    // sum_{j>=1} a^{j^2/2}; consecutive ratio <= a^{3/2} < 0.26 past j = 1.
    double s = 0.0;
    double term = 0.0;
    for (int j = 1; j < 400; ++j) {
        term = std::exp(0.5 * double(j) * double(j) * std::log(a));
        s += term;
        if (term < 1e-25) break;
    }
    const double geo = std::pow(a, 1.5);
    s += term * geo / (1.0 - geo); // certified tail, added so 1 - s stays a lower bound
    return 1.0 - s;
}

TailBudget tail_budget(double q, double x_modulus, int n) {
    core::detail::require_q_open_interval(q);
    if (!(x_modulus > 0.0)) throw std::domain_error("tail_budget: x_modulus must be > 0");
    if (n < 0) throw std::domain_error("tail_budget: n must be >= 0");
    const double la = std::log(std::abs(q));
    const double lx = std::log(x_modulus);
    const double log_ratio = -(double(n + 2) * la + lx);
    if (!(log_ratio > 0.0))
        throw std::domain_error("tail_budget: consecutive-term ratio must exceed 1");
    TailBudget tb;
    tb.ratio = std::exp(log_ratio);
    const double e = 0.5 * double(n + 1) * double(n + 2);
    tb.first_omitted = std::exp(e * la + double(n + 1) * lx);
    tb.t0_bound = tb.first_omitted / (1.0 - 1.0 / tb.ratio);
    return tb;
}

TrackResult track_zero(double q_start, double q_end, C seed, int steps, Precision prec) {
    core::detail::require_q_open_interval(q_start);
    core::detail::require_q_open_interval(q_end);
    if (q_start == 0.0 || q_end == 0.0 || (q_start > 0.0) != (q_end > 0.0))
        throw std::domain_error("track_zero: endpoints must lie in the same component of (-1,0) u (0,1)");
    if (steps < 1) throw std::domain_error("track_zero: steps must be >= 1");

    TrackResult out;
    ZeroRecord first = refine_zero(q_start, seed, prec);
    out.records.push_back(first);
    if (q_start == q_end) {
        out.reached_end = true;
        return out;
    }

    const double dq0 = (q_end - q_start) / steps;
    const double min_dq = std::abs(dq0) / 1024.0;
    double dq = dq0;
    double q_cur = q_start, q_prev = q_start;
    C loc_cur = first.location, loc_prev = first.location;
    bool have_prev = false;

    while (q_cur != q_end) {
        double step = dq;
        if (std::abs(q_end - q_cur) <= std::abs(step)) step = q_end - q_cur;
        const double q_next = q_cur + step;
        C pred = loc_cur;
        if (have_prev && q_cur != q_prev)
            pred += (loc_cur - loc_prev) * (step / (q_cur - q_prev));
        try {
            ZeroRecord rec = refine_zero(q_next, pred, prec);
            rec.source = ZeroRecord::Source::continuation;
            out.records.push_back(rec);
            q_prev = q_cur;
            loc_prev = loc_cur;
            q_cur = q_next;
            loc_cur = rec.location;
            have_prev = true;
            if (std::abs(dq) < std::abs(dq0)) {
                dq *= 2.0; // recover after halving
                if (std::abs(dq) > std::abs(dq0)) dq = dq0;
            }
        } catch (const std::exception&) {
            if (std::abs(dq) * 0.5 < min_dq) {
                out.reached_end = false;
                out.note = "corrector failed at minimum step near q = " + std::to_string(q_next);
                return out;
            }
            dq *= 0.5;
        }
    }
    out.reached_end = true;
    return out;
}

} // namespace thetascope::zeros
