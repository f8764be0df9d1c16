#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "csolve/model.hpp"

namespace csp {

namespace {

// mt19937_64 with rejection sampling; uniform_int_distribution is not
// portable across standard libraries, so draws are done by hand
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % n;
    }

private:
    std::mt19937_64 eng_;
};

// draws k distinct values from 0..n-1 via partial Fisher-Yates, in draw order
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint64_t> out(k);
    for (std::uint64_t t = 0; t < k; ++t) {
        std::uint64_t j = t + rng.below(n - t);
        std::swap(pool[t], pool[j]);
        out[t] = pool[t];
    }
    return out;
}

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

Problem generate_rb(int n, double alpha, double r, double p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("rb: n must be >= 2");
    if (alpha <= 0 || r <= 0) throw std::invalid_argument("rb: alpha and r must be > 0");
    if (!(p > 0 && p < 1)) throw std::invalid_argument("rb: p must be in (0,1)");
    const long d = std::lround(std::pow(static_cast<double>(n), alpha));
    if (d < 2) throw std::invalid_argument("rb: domain size round(n^alpha) must be >= 2");
    const long m = std::lround(r * n * std::log(static_cast<double>(n)));
    const long q = std::lround(p * static_cast<double>(d) * static_cast<double>(d));
    if (q >= d * d)
        throw std::invalid_argument("rb: round(p*d^2) forbidden tuples would leave no support");
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    if (m > pairs)
        throw std::invalid_argument("rb: round(r*n*ln n) exceeds the number of distinct scopes");

    Rng rng(seed);
    Problem prob;
    prob.name = "rb_n" + std::to_string(n) + "_a" + fmt_g(alpha) + "_r" + fmt_g(r) + "_p" +
                fmt_g(p) + "_s" + std::to_string(seed);

    for (int i = 0; i < n; ++i) {
        VariableDecl v;
        v.id = i;
        v.name = "x" + std::to_string(i);
        for (long a = 0; a < d; ++a) v.initial_domain.push_back(static_cast<Value>(a));
        prob.variables.push_back(std::move(v));
    }

    std::vector<Value> plant(n);
    for (int i = 0; i < n; ++i) plant[i] = static_cast<Value>(rng.below(d));

    auto scopes = sample_distinct(rng, static_cast<std::uint64_t>(pairs),
                                  static_cast<std::uint64_t>(m));
    for (long ci = 0; ci < m; ++ci) {
        // decode pair index to (i, j), i < j, lexicographic
        std::uint64_t code = scopes[ci];
        int i = 0;
        std::uint64_t row = static_cast<std::uint64_t>(n - 1);
        while (code >= row) {
            code -= row;
            ++i;
            --row;
        }
        int j = i + 1 + static_cast<int>(code);

        Constraint c;
        c.id = static_cast<ConId>(ci);
        c.name = "c" + std::to_string(ci);
        c.kind = ConstraintKind::TableForbid;
        c.scope = {i, j};

        const std::uint64_t plant_code =
            static_cast<std::uint64_t>(plant[i]) * d + static_cast<std::uint64_t>(plant[j]);
        auto draws = sample_distinct(rng, static_cast<std::uint64_t>(d) * d - 1,
                                     static_cast<std::uint64_t>(q));
        std::vector<std::uint64_t> codes;
        codes.reserve(q);
        for (std::uint64_t t : draws) codes.push_back(t < plant_code ? t : t + 1);
        std::sort(codes.begin(), codes.end());
        for (std::uint64_t t : codes)
            c.tuples.push_back({static_cast<Value>(t / d), static_cast<Value>(t % d)});
        prob.constraints.push_back(std::move(c));
    }
    prob.finalize();
    return prob;
}

Problem generate_nqueens(int n) {
    if (n < 1) throw std::invalid_argument("queens: n must be >= 1");
    Problem prob;
    prob.name = "queens_" + std::to_string(n);
    for (int i = 0; i < n; ++i) {
        VariableDecl v;
        v.id = i;
        v.name = "q" + std::to_string(i);
        for (int a = 0; a < n; ++a) v.initial_domain.push_back(a);
        prob.variables.push_back(std::move(v));
    }
    ConId cid = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Constraint ne;
            ne.id = cid++;
            ne.name = "ne_" + std::to_string(i) + "_" + std::to_string(j);
            ne.kind = ConstraintKind::Neq;
            ne.scope = {i, j};
            prob.constraints.push_back(std::move(ne));

            Constraint ad;
            ad.id = cid++;
            ad.name = "ad_" + std::to_string(i) + "_" + std::to_string(j);
            ad.kind = ConstraintKind::AbsDiffNe;
            ad.scope = {i, j};
            ad.param = j - i;
            prob.constraints.push_back(std::move(ad));
        }
    }
    prob.finalize();
    return prob;
}

}  // namespace csp
