#include "distlab/products.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace distlab {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

using Support = std::optional<std::pair<double, double>>;

Support intersect(const Support& a, const Support& b) {
    if (!a) return b;
    if (!b) return a;
    return std::make_pair(std::max(a->first, b->first), std::min(a->second, b->second));
}

Support hull(const Support& a, const Support& b) {
    if (!a || !b) return std::nullopt;
    return std::make_pair(std::min(a->first, b->first), std::max(a->second, b->second));
}

// 0.5 * (mi*rj + mj*ri) with Leibniz derivatives
SmoothFactor symmetrized_pair(SmoothFactor mi, SmoothFactor rj, SmoothFactor mj,
                              SmoothFactor ri) {
    auto parts = std::make_shared<std::array<SmoothFactor, 4>>(
        std::array<SmoothFactor, 4>{std::move(mi), std::move(rj), std::move(mj),
                                    std::move(ri)});
    Support sup = hull(intersect((*parts)[0].support(), (*parts)[1].support()),
                       intersect((*parts)[2].support(), (*parts)[3].support()));
    auto value = [parts](double x) {
        return 0.5 * ((*parts)[0](x) * (*parts)[1](x) + (*parts)[2](x) * (*parts)[3](x));
    };
    auto deriv = [parts](int k, double x) {
        double sum = 0.0;
        for (int a = 0; a <= k; ++a) {
            const double c = binom(k, a);
            sum += c * (*parts)[0].derivative(a, x) * (*parts)[1].derivative(k - a, x);
            sum += c * (*parts)[2].derivative(a, x) * (*parts)[3].derivative(k - a, x);
        }
        return 0.5 * sum;
    };
    return SmoothFactor(value, deriv, sup);
}

// product of factors with folded Leibniz derivatives
SmoothFactor product_factor(std::vector<SmoothFactor> fs) {
    auto parts = std::make_shared<std::vector<SmoothFactor>>(std::move(fs));
    Support sup = std::nullopt;
    for (const auto& p : *parts) sup = intersect(sup, p.support());
    auto value = [parts](double x) {
        double v = 1.0;
        for (const auto& p : *parts) v *= p(x);
        return v;
    };
    auto deriv = [parts](int k, double x) {
        std::vector<double> d(k + 1);  // derivatives of the running product
        for (int j = 0; j <= k; ++j) d[j] = (*parts)[0].derivative(j, x);
        for (std::size_t m = 1; m < parts->size(); ++m) {
            std::vector<double> nd(k + 1, 0.0);
            for (int r = 0; r <= k; ++r)
                for (int j = 0; j <= r; ++j)
                    nd[r] += binom(r, j) * d[j] * (*parts)[m].derivative(r - j, x);
            d.swap(nd);
        }
        return d[k];
    };
    return SmoothFactor(value, deriv, sup);
}

struct TermContext {
    const MollifierSpec* spec;
    const TestFunction* psi;
    double quad_tol;
    double inner_tol;
};

// characteristic kernel scales used to seed the adaptive partition
struct ScaleHints {
    std::vector<double> scales;
    void add(double s) {
        if (s > 0 && std::isfinite(s)) scales.push_back(s);
    }
};

double integrate_term(const SmoothFactor& g, const TermContext& ctx,
                      const ScaleHints& hints) {
    double a = ctx.psi->lo(), b = ctx.psi->hi();
    if (g.support()) {
        a = std::max(a, g.support()->first);
        b = std::min(b, g.support()->second);
    }
    if (!(a < b)) return 0.0;
    std::vector<double> splits{0.0};
    for (double s : hints.scales) {
        auto ladder = geometric_splits(s, a, b);
        splits.insert(splits.end(), ladder.begin(), ladder.end());
    }
    const TestFunction& psi = *ctx.psi;
    QuadResult q = integrate([&g, &psi](double x) { return g(x) * psi(x); }, a, b,
                             ctx.quad_tol, splits);
    return q.value;
}

SmoothFactor make_mollified(const Distribution& d, const TermContext& ctx, double beta,
                            double n) {
    return mollify(d, *ctx.spec, beta, n, ctx.inner_tol);
}

SmoothFactor make_analytic(const Distribution& d, const TermContext& ctx, double alpha,
                           double n) {
    return analytic(d, Epsilon::from_alpha_n(alpha, n), ctx.inner_tol);
}

// spike scales contributed by one slot
void slot_hints(const Distribution& d, bool mollified, double alpha, double beta,
                double n, ScaleHints& hints) {
    if (std::holds_alternative<DeltaDerivative>(d)) {
        if (mollified)
            hints.add(std::pow(n, -beta));
        else
            hints.add(std::pow(n, -alpha));
    }
    // compact slots carry no sub-interval structure of their own
}

// all perfect pairings of {0..n-1}, n even
void enumerate_pairings(std::vector<int>& pool,
                        std::vector<std::pair<int, int>>& current,
                        std::vector<std::vector<std::pair<int, int>>>& out) {
    if (pool.empty()) {
        out.push_back(current);
        return;
    }
    const int first = pool.front();
    for (std::size_t i = 1; i < pool.size(); ++i) {
        const int partner = pool[i];
        std::vector<int> rest;
        for (std::size_t j = 1; j < pool.size(); ++j)
            if (j != i) rest.push_back(pool[j]);
        current.emplace_back(first, partner);
        enumerate_pairings(rest, current, out);
        current.pop_back();
    }
}

std::vector<std::vector<std::pair<int, int>>> pairings_of(int n) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::pair<int, int>> current;
    std::vector<std::vector<std::pair<int, int>>> out;
    enumerate_pairings(pool, current, out);
    return out;
}

std::vector<std::pair<double, double>> slot_params(const RegParams& params,
                                                   std::size_t n_pairs) {
    if (!params.pair_params.empty()) {
        if (params.pair_params.size() != n_pairs)
            throw std::invalid_argument("RegParams: pair_params size must equal N/2");
        return params.pair_params;
    }
    return std::vector<std::pair<double, double>>(n_pairs,
                                                  {params.alpha, params.beta});
}

bool all_equal_deltas(std::span<const Distribution> dists) {
    const auto* first = std::get_if<DeltaDerivative>(&dists.front());
    if (!first) return false;
    for (const auto& d : dists) {
        const auto* dd = std::get_if<DeltaDerivative>(&d);
        if (!dd || dd->order != first->order) return false;
    }
    return true;
}

// even-count regularized product as one smooth factor, averaged over
// pairings and over the distinct assignments of the per-pair parameters
double even_product_average(std::span<const Distribution> dists,
                            const std::vector<std::pair<double, double>>& pp,
                            double n, const TermContext& ctx,
                            const std::function<double(const SmoothFactor&,
                                                       const ScaleHints&)>& consume) {
    const int count = static_cast<int>(dists.size());
    auto pairings = pairings_of(count);
    // equal distributions with equal parameters: every pairing and parameter
    // assignment produces the same term, so one representative suffices
    if (all_equal_deltas(dists) &&
        std::all_of(pp.begin(), pp.end(), [&](const auto& p) { return p == pp[0]; }))
        pairings.resize(1);
    std::vector<std::pair<double, double>> perm = pp;
    std::sort(perm.begin(), perm.end());
    double sum = 0.0;
    long terms = 0;
    for (const auto& pairing : pairings) {
        std::vector<std::pair<double, double>> assignment = perm;
        do {
            std::vector<SmoothFactor> factors;
            ScaleHints hints;
            for (std::size_t s = 0; s < pairing.size(); ++s) {
                const auto [i, j] = pairing[s];
                const auto [alpha, beta] = assignment[s];
                factors.push_back(symmetrized_pair(
                    make_mollified(dists[i], ctx, beta, n),
                    make_analytic(dists[j], ctx, alpha, n),
                    make_mollified(dists[j], ctx, beta, n),
                    make_analytic(dists[i], ctx, alpha, n)));
                slot_hints(dists[i], true, alpha, beta, n, hints);
                slot_hints(dists[i], false, alpha, beta, n, hints);
                slot_hints(dists[j], true, alpha, beta, n, hints);
                slot_hints(dists[j], false, alpha, beta, n, hints);
            }
            sum += consume(product_factor(std::move(factors)), hints);
            ++terms;
        } while (std::next_permutation(assignment.begin(), assignment.end()));
    }
    return sum / static_cast<double>(terms);
}

// <T, G * Psi> for the odd-count construction
double exact_pairing(const Distribution& exact, const SmoothFactor& g,
                     const TermContext& ctx, const ScaleHints& hints) {
    if (const auto* d = std::get_if<DeltaDerivative>(&exact)) {
        const int k = d->order;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        // (G Psi)^(k)(0) by Leibniz against the tabulated psi derivatives
        double sum = 0.0;
        for (int a = 0; a <= k; ++a)
            sum += binom(k, a) * g.derivative(a, 0.0) * ctx.psi->derivative_at_zero(k - a);
        return sign * sum;
    }
    const auto& c = std::get<CompactFunction>(exact);
    double a = c.lo, b = c.hi;
    if (g.support()) {
        a = std::max(a, g.support()->first);
        b = std::min(b, g.support()->second);
    }
    if (!(a < b)) return 0.0;
    std::vector<double> splits{0.0};
    for (double s : hints.scales) {
        auto ladder = geometric_splits(s, a, b);
        splits.insert(splits.end(), ladder.begin(), ladder.end());
    }
    const TestFunction& psi = *ctx.psi;
    QuadResult q = integrate(
        [&](double x) { return c.f(x) * g(x) * psi(x); }, a, b, ctx.quad_tol, splits);
    return q.value;
}

template <class TermFn>
LimitVerdict run_schedule(const NSchedule& schedule, const TermFn& term,
                          const ProductOptions& opts) {
    schedule.validate();
    const std::size_t count = schedule.values.size();
    std::vector<double> vals = map_indexed<double>(
        count, [&](std::size_t i) { return term(schedule.values[i]); }, opts.exec);
    std::vector<std::pair<double, double>> seq(count);
    for (std::size_t i = 0; i < count; ++i) seq[i] = {schedule.values[i], vals[i]};
    double early = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, count); ++i)
        early = std::max(early, std::abs(vals[i]));
    return classify_limit(seq, opts.zero_floor_factor * early, opts.rel_tol);
}

} // namespace

void RegParams::validate(std::size_t n_pairs) const {
    if (!(alpha > 0) || !(beta > 0))
        throw std::invalid_argument("RegParams: exponents must be positive");
    for (const auto& [a, b] : pair_params)
        if (!(a > 0) || !(b > 0))
            throw std::invalid_argument("RegParams: exponents must be positive");
    if (!pair_params.empty() && pair_params.size() != n_pairs)
        throw std::invalid_argument("RegParams: pair_params size must equal floor(N/2)");
}

NSchedule NSchedule::geometric(double start, double ratio, int count) {
    NSchedule s;
    double v = start;
    for (int i = 0; i < count; ++i) {
        s.values.push_back(v);
        v *= ratio;
    }
    return s;
}

void NSchedule::validate(std::size_t min_points) const {
    if (values.size() < min_points)
        throw std::invalid_argument("NSchedule: needs at least " +
                                    std::to_string(min_points) + " points");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 1.0))
            throw std::invalid_argument("NSchedule: entries must be >= 1");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw std::invalid_argument("NSchedule: entries must increase");
    }
}

AWeights AWeights::pairwise(double a1, double a2) {
    if (std::abs(a1 + a2 - 2.0) > 1e-12)
        throw std::invalid_argument("AWeights: requires a1 + a2 = 2");
    return AWeights(2, {a1, a2});
}

AWeights AWeights::triple(double b1, double b2) {
    if (std::abs(b1 + b2 - 2.0) > 1e-12)
        throw std::invalid_argument("AWeights: requires b1 + b2 = 2");
    return AWeights(3, {b1, b2});
}

AWeights AWeights::quadruple(double c1, double c2, double c3) {
    if (std::abs(2 * c1 + 3 * c2 + 2 * c3 - 7.0) > 1e-12)
        throw std::invalid_argument("AWeights: requires 2c1 + 3c2 + 2c3 = 7");
    return AWeights(4, {c1, c2, c3});
}

AWeights AWeights::general(int order, std::vector<double> w) {
    if (order < 2)
        throw std::invalid_argument("AWeights: order must be >= 2");
    if (static_cast<int>(w.size()) != order - 1)
        throw std::invalid_argument("AWeights: need order-1 coefficients");
    if (order <= 4) {
        if (order == 2) return pairwise(w[0], w[1]);
        if (order == 3) return triple(w[0], w[1]);
        return quadruple(w[0], w[1], w[2]);
    }
    // w ordered from most-mollified (p = order-1) down to p = 1
    double sum = 0.0;
    for (int p = order - 1; p >= 1; --p) sum += binom(order, p) * w[order - 1 - p];
    const double target = std::pow(2.0, order) - 2.0;
    if (std::abs(sum - target) > 1e-9)
        throw std::invalid_argument("AWeights: sum_p C(l,p) w_p must equal 2^l - 2");
    return AWeights(order, std::move(w));
}

AWeights AWeights::defaults(int order) {
    if (order == 2) return pairwise(1.0, 1.0);
    if (order == 3) return triple(1.0, 1.0);
    if (order == 4) return quadruple(1.0, 1.0, 1.0);
    return general(order, std::vector<double>(order - 1, 1.0));
}

const char* to_string(LimitVerdict::Kind k) {
    switch (k) {
        case LimitVerdict::Kind::converged: return "converged";
        case LimitVerdict::Kind::exact_zero: return "exact_zero";
        case LimitVerdict::Kind::divergent: return "divergent";
        case LimitVerdict::Kind::inconclusive: return "inconclusive";
    }
    return "?";
}

double pair_term(const Distribution& s, const Distribution& t, const RegParams& params,
                 double n, const TestFunction& psi, const MollifierSpec& spec,
                 const ProductOptions& opts) {
    params.validate(1);
    TermContext ctx{&spec, &psi, opts.quad_tol, 0.01 * opts.quad_tol};
    auto one_sided = [&](const Distribution& mol, const Distribution& red) {
        ScaleHints hints;
        slot_hints(mol, true, params.alpha, params.beta, n, hints);
        slot_hints(red, false, params.alpha, params.beta, n, hints);
        std::vector<SmoothFactor> fs;
        fs.push_back(make_mollified(mol, ctx, params.beta, n));
        fs.push_back(make_analytic(red, ctx, params.alpha, n));
        return integrate_term(product_factor(std::move(fs)), ctx, hints);
    };
    return 0.5 * (one_sided(s, t) + one_sided(t, s));
}

LimitVerdict pair_product(const Distribution& s, const Distribution& t,
                          const RegParams& params, const NSchedule& schedule,
                          const TestFunction& psi, const MollifierSpec& spec,
                          const ProductOptions& opts) {
    return run_schedule(
        schedule, [&](double n) { return pair_term(s, t, params, n, psi, spec, opts); },
        opts);
}

double nfold_method1_term(std::span<const Distribution> dists, const RegParams& params,
                          double n, const TestFunction& psi, const MollifierSpec& spec,
                          const ProductOptions& opts) {
    const int count = static_cast<int>(dists.size());
    if (count < 2 || count > opts.max_count)
        throw UnsupportedCount("nfold_method1: supported factor counts are 2.." +
                               std::to_string(opts.max_count));
    TermContext ctx{&spec, &psi, opts.quad_tol, 0.01 * opts.quad_tol};
    if (count % 2 == 0) {
        params.validate(count / 2);
        auto pp = slot_params(params, count / 2);
        return even_product_average(
            dists, pp, n, ctx, [&](const SmoothFactor& g, const ScaleHints& h) {
                return integrate_term(g, ctx, h);
            });
    }
    params.validate((count - 1) / 2);
    auto pp = slot_params(params, (count - 1) / 2);
    // identical factors: the exact slot is interchangeable
    const int exact_choices = all_equal_deltas(dists) ? 1 : count;
    double sum = 0.0;
    for (int e = 0; e < exact_choices; ++e) {
        std::vector<Distribution> rest;
        rest.reserve(count - 1);
        for (int i = 0; i < count; ++i)
            if (i != e) rest.push_back(dists[i]);
        sum += even_product_average(
            rest, pp, n, ctx, [&](const SmoothFactor& g, const ScaleHints& h) {
                return exact_pairing(dists[e], g, ctx, h);
            });
    }
    return sum / exact_choices;
}

LimitVerdict nfold_method1(std::span<const Distribution> dists, const RegParams& params,
                           const NSchedule& schedule, const TestFunction& psi,
                           const MollifierSpec& spec, const ProductOptions& opts) {
    return run_schedule(
        schedule,
        [&](double n) { return nfold_method1_term(dists, params, n, psi, spec, opts); },
        opts);
}

double amethod_term(std::span<const Distribution> dists, const AWeights& weights,
                    const RegParams& params, double n, const TestFunction& psi,
                    const MollifierSpec& spec, const ProductOptions& opts) {
    const int count = static_cast<int>(dists.size());
    if (count < 2 || count > opts.max_count)
        throw UnsupportedCount("amethod: supported factor counts are 2.." +
                               std::to_string(opts.max_count));
    if (weights.order() != count)
        throw std::invalid_argument("amethod: weights order must match factor count");
    params.validate(0);
    TermContext ctx{&spec, &psi, opts.quad_tol, 0.01 * opts.quad_tol};
    // normalization making the limits match the closed forms:
    // 1/2, 1/3, 1/14 for l = 2, 3, 4; 1/l beyond (documented convention)
    double norm;
    switch (count) {
        case 2: norm = 0.5; break;
        case 3: norm = 1.0 / 3.0; break;
        case 4: norm = 1.0 / 14.0; break;
        default: norm = 1.0 / count; break;
    }
    const auto& w = weights.coefficients();
    double sum = 0.0;
    for (unsigned mask = 1; mask + 1 < (1u << count); ++mask) {
        const int p = __builtin_popcount(mask);  // mollified slots
        double weight;
        if (count == 2)
            weight = (mask == 1u) ? w[0] : w[1];
        else
            weight = w[count - 1 - p];  // leading coefficient = most mollified
        if (weight == 0.0) continue;
        std::vector<SmoothFactor> fs;
        ScaleHints hints;
        for (int i = 0; i < count; ++i) {
            const bool mol = (mask >> i) & 1u;
            if (mol)
                fs.push_back(make_mollified(dists[i], ctx, params.beta, n));
            else
                fs.push_back(make_analytic(dists[i], ctx, params.alpha, n));
            slot_hints(dists[i], mol, params.alpha, params.beta, n, hints);
        }
        sum += weight * integrate_term(product_factor(std::move(fs)), ctx, hints);
    }
    return norm * sum;
}

LimitVerdict amethod(std::span<const Distribution> dists, const AWeights& weights,
                     const RegParams& params, const NSchedule& schedule,
                     const TestFunction& psi, const MollifierSpec& spec,
                     const ProductOptions& opts) {
    return run_schedule(
        schedule,
        [&](double n) {
            return amethod_term(dists, weights, params, n, psi, spec, opts);
        },
        opts);
}

LimitVerdict classify_limit(std::span<const std::pair<double, double>> sequence,
                            double floor, double rel_tol) {
    if (sequence.size() < 6)
        throw std::invalid_argument("classify_limit: need at least 6 points");
    const std::size_t count = sequence.size();
    std::vector<double> vals(count);
    for (std::size_t i = 0; i < count; ++i) vals[i] = sequence[i].second;

    LimitVerdict verdict;
    verdict.sequence.assign(sequence.begin(), sequence.end());
    verdict.zero_floor = floor;

    // exact zero: every finite-n value already below the floor
    bool all_below = true;
    for (double v : vals)
        if (std::abs(v) > floor) all_below = false;
    if (all_below) {
        verdict.kind = LimitVerdict::Kind::exact_zero;
        return verdict;
    }

    const std::size_t tail_len = (2 * count + 2) / 3;
    const std::size_t tail_start = count - tail_len;
    auto tail_seq = sequence.subspan(tail_start);

    bool tail_growing = true;
    for (std::size_t i = tail_start + 1; i < count; ++i)
        if (std::abs(vals[i]) < std::abs(vals[i - 1]) * (1.0 - 1e-9))
            tail_growing = false;
    const double tail_first = std::abs(vals[tail_start]);
    const double tail_last = std::abs(vals[count - 1]);

    // fast divergence trigger
    if (tail_growing && tail_last > 10.0 * std::max(tail_first, 1e-300)) {
        verdict.kind = LimitVerdict::Kind::divergent;
        verdict.fit = fit_growth(tail_seq);
        return verdict;
    }

    // Aitken acceleration; converged when the accelerated tail has settled.
    // The settling tolerance references the raw sequence's own scale: an
    // accelerated tail descending to zero spans decades and would never
    // look Cauchy relative to itself.
    std::vector<double> acc = aitken(vals);
    const double limit = acc.back();
    double raw_max = 0.0;
    for (double v : vals) raw_max = std::max(raw_max, std::abs(v));
    const double scale = std::max(raw_max, floor);
    const bool settled =
        std::abs(acc.back() - acc[acc.size() - 2]) <= rel_tol * scale;
    // accept only when the raw residuals actually shrink toward the
    // accelerated limit (Aitken alone is exact on divergent geometric tails)
    const bool residuals_shrink =
        std::abs(vals.back() - limit) <=
        0.55 * std::abs(vals[tail_start] - limit) + rel_tol * scale;
    if (settled && residuals_shrink) {
        verdict.kind = LimitVerdict::Kind::converged;
        verdict.value = limit;
        return verdict;
    }

    // monotone growth counts as divergence only when the increments are not
    // dying away (a convergent sequence approaching its limit from below is
    // also monotone, but with geometrically decaying increments)
    if (tail_growing && tail_last > 1.05 * std::max(tail_first, 1e-300)) {
        double ratio_sum = 0.0;
        int ratio_count = 0;
        for (std::size_t i = tail_start + 2; i < count; ++i) {
            const double d0 = std::abs(vals[i - 1] - vals[i - 2]);
            const double d1 = std::abs(vals[i] - vals[i - 1]);
            if (d0 > 0) {
                ratio_sum += d1 / d0;
                ++ratio_count;
            }
        }
        if (ratio_count > 0 && ratio_sum / ratio_count >= 0.95) {
            verdict.kind = LimitVerdict::Kind::divergent;
            verdict.fit = fit_growth(tail_seq);
            return verdict;
        }
    }

    verdict.kind = LimitVerdict::Kind::inconclusive;
    return verdict;
}

} // namespace distlab
