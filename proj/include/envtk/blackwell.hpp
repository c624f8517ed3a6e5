// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "envtk/errors.hpp"
#include "envtk/rng.hpp"
#include "envtk/simplex.hpp"
#include "envtk/tolerance.hpp"

namespace envtk {

inline constexpr double kBeliefMergeTol = 1e-10;
inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kLpFeasTol = 1e-8;

/// A probability vector over the finite state set.
class Belief {
public:
    explicit Belief(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty())
            throw ArgumentError("Belief: empty state set");
        double sum = 0.0;
        for (double q : probs_) {
            if (!(q >= 0.0))
                throw ArgumentError("Belief: negative probability");
            sum += q;
        }
        if (std::abs(sum - 1.0) > kWeightSumTol)
            throw ArgumentError("Belief: probabilities sum to " + std::to_string(sum));
    }

    std::size_t n_states() const { return probs_.size(); }
    double operator[](std::size_t w) const { return probs_[w]; }
    std::span<const double> values() const { return probs_; }

    bool interior() const {
        for (double q : probs_)
            if (!(q > 0.0)) return false;
        return true;
    }

    static double linf_distance(const Belief& a, const Belief& b) {
        if (a.n_states() != b.n_states())
            throw ArgumentError("Belief: dimension mismatch");
        double d = 0.0;
        for (std::size_t w = 0; w < a.n_states(); ++w)
            d = std::max(d, std::abs(a[w] - b[w]));
        return d;
    }

private:
    std::vector<double> probs_;
};

/// Finite-support distribution of posterior beliefs. Support beliefs closer
/// than kBeliefMergeTol are merged (weights added) at construction, and
/// zero-weight atoms are dropped, so the representation is canonical enough
/// for equality-after-merge comparisons.
class PosteriorDistribution {
public:
    PosteriorDistribution(std::vector<Belief> support, std::vector<double> weights) {
        if (support.size() != weights.size() || support.empty())
            throw ArgumentError("PosteriorDistribution: support/weight mismatch");
        const std::size_t d = support[0].n_states();
        double sum = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (support[i].n_states() != d)
                throw ArgumentError("PosteriorDistribution: mixed state dimensions");
            if (!(weights[i] >= 0.0))
                throw ArgumentError("PosteriorDistribution: negative weight");
            sum += weights[i];
        }
        if (std::abs(sum - 1.0) > kWeightSumTol)
            throw ArgumentError("PosteriorDistribution: weights sum to " +
                                std::to_string(sum));
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (weights[i] == 0.0) continue;
            bool merged = false;
            for (std::size_t j = 0; j < support_.size(); ++j) {
                if (Belief::linf_distance(support_[j], support[i]) <= kBeliefMergeTol) {
                    weights_[j] += weights[i];
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                support_.push_back(support[i]);
                weights_.push_back(weights[i]);
            }
        }
        if (support_.empty())
            throw ArgumentError("PosteriorDistribution: all atoms have zero weight");
    }

    std::size_t size() const { return support_.size(); }
    std::size_t n_states() const { return support_[0].n_states(); }
    const Belief& belief(std::size_t i) const { return support_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const Belief> support() const { return support_; }
    std::span<const double> weights() const { return weights_; }

    /// Barycenter sum_i w_i mu_i.
    Belief mean() const {
        std::vector<double> m(n_states(), 0.0);
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t w = 0; w < n_states(); ++w)
                m[w] += weights_[i] * support_[i][w];
        // rounding can push a coordinate a hair negative or the sum off 1
        double sum = 0.0;
        for (double& q : m) {
            q = std::max(q, 0.0);
            sum += q;
        }
        for (double& q : m) q /= sum;
        return Belief(std::move(m));
    }

    /// Expectation of a pointwise function of the posterior.
    template <class F>
    double expect(F&& f) const {
        double e = 0.0;
        for (std::size_t i = 0; i < size(); ++i) e += weights_[i] * f(support_[i]);
        return e;
    }

    static PosteriorDistribution point_mass(Belief mu0) {
        return PosteriorDistribution({std::move(mu0)}, {1.0});
    }

    /// Fully revealing distribution: vertex beliefs weighted by the prior.
    static PosteriorDistribution full_information(const Belief& mu0) {
        std::vector<Belief> sup;
        std::vector<double> w;
        for (std::size_t s = 0; s < mu0.n_states(); ++s) {
            if (mu0[s] == 0.0) continue;
            std::vector<double> v(mu0.n_states(), 0.0);
            v[s] = 1.0;
            sup.emplace_back(std::move(v));
            w.push_back(mu0[s]);
        }
        return PosteriorDistribution(std::move(sup), std::move(w));
    }

    /// Binary-state symmetric experiment with the given accuracy q in
    /// [1/2, 1], prior (1/2, 1/2).
    static PosteriorDistribution symmetric_binary(double accuracy) {
        if (!(accuracy >= 0.5 && accuracy <= 1.0))
            throw ArgumentError("symmetric_binary: accuracy must lie in [1/2, 1]");
        return PosteriorDistribution(
            {Belief({accuracy, 1.0 - accuracy}), Belief({1.0 - accuracy, accuracy})},
            {0.5, 0.5});
    }

    static bool equal_after_merge(const PosteriorDistribution& a,
                                  const PosteriorDistribution& b, Tolerance tol) {
        if (a.size() != b.size() || a.n_states() != b.n_states()) return false;
        std::vector<bool> used(b.size(), false);
        for (std::size_t i = 0; i < a.size(); ++i) {
            bool found = false;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (used[j]) continue;
                if (Belief::linf_distance(a.belief(i), b.belief(j)) <= kBeliefMergeTol &&
                    tol.within(a.weight(i) - b.weight(j), a.weight(i))) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

private:
    std::vector<Belief> support_;
    std::vector<double> weights_;
};

/// True iff the barycenter of y equals mu0 within tolerance.
inline bool bayes_plausible(const PosteriorDistribution& y, const Belief& mu0,
                            Tolerance tol) {
    if (y.n_states() != mu0.n_states())
        throw ArgumentError("bayes_plausible: dimension mismatch");
    const Belief m = y.mean();
    for (std::size_t w = 0; w < mu0.n_states(); ++w)
        if (std::abs(m[w] - mu0[w]) > tol.abs_tol()) return false;
    return true;
}

/// Martingale coupling witnessing that y is a mean-preserving contraction of
/// y2 (equivalently, y is weakly less informative). feasible == false means
/// the transportation polytope is empty and no such coupling exists.
struct GarblingCertificate {
    std::size_t rows = 0; // support size of y
    std::size_t cols = 0; // support size of y2
    std::vector<double> joint; // row-major coupling masses q[i*cols + j]
    bool feasible = false;

    double at(std::size_t i, std::size_t j) const { return joint[i * cols + j]; }

    /// Largest violation of the marginal and barycenter constraint families,
    /// re-checked by direct multiplication against the two distributions.
    double max_constraint_residual(const PosteriorDistribution& y,
                                   const PosteriorDistribution& y2) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < cols; ++j) row_sum += at(i, j);
            worst = std::max(worst, std::abs(row_sum - y.weight(i)));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            double col_sum = 0.0;
            for (std::size_t i = 0; i < rows; ++i) col_sum += at(i, j);
            worst = std::max(worst, std::abs(col_sum - y2.weight(j)));
        }
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t w = 0; w < y.n_states(); ++w) {
                double acc = 0.0;
                for (std::size_t j = 0; j < cols; ++j) acc += at(i, j) * y2.belief(j)[w];
                worst = std::max(worst, std::abs(acc - y.weight(i) * y.belief(i)[w]));
            }
        }
        for (const double q : joint) worst = std::max(worst, std::max(0.0, -q));
        return worst;
    }
};

/// Decides y <= y2 in the Blackwell order by testing feasibility of the
/// transportation polytope
///   { q >= 0 : row sums = w, column sums = w', sum_j q_ij mu'_j = w_i mu_i }
/// with a phase-1 simplex. Feasibility is equivalent to y being a
/// mean-preserving contraction of y2.
inline GarblingCertificate blackwell_leq(const PosteriorDistribution& y,
                                         const PosteriorDistribution& y2,
                                         Tolerance tol) {
    if (y.n_states() != y2.n_states())
        throw ArgumentError("blackwell_leq: dimension mismatch");
    const Belief m1 = y.mean(), m2 = y2.mean();
    if (Belief::linf_distance(m1, m2) > std::max(tol.abs_tol(), 1e-9))
        throw ArgumentError("blackwell_leq: distributions have different priors");

    const std::size_t n1 = y.size(), n2 = y2.size(), d = y.n_states();
    const std::size_t n_vars = n1 * n2;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    rows.reserve(n1 + n2 + n1 * d);

    for (std::size_t i = 0; i < n1; ++i) {
        std::vector<double> r(n_vars, 0.0);
        for (std::size_t j = 0; j < n2; ++j) r[i * n2 + j] = 1.0;
        rows.push_back(std::move(r));
        rhs.push_back(y.weight(i));
    }
    for (std::size_t j = 0; j < n2; ++j) {
        std::vector<double> r(n_vars, 0.0);
        for (std::size_t i = 0; i < n1; ++i) r[i * n2 + j] = 1.0;
        rows.push_back(std::move(r));
        rhs.push_back(y2.weight(j));
    }
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t w = 0; w < d; ++w) {
            std::vector<double> r(n_vars, 0.0);
            for (std::size_t j = 0; j < n2; ++j) r[i * n2 + j] = y2.belief(j)[w];
            rows.push_back(std::move(r));
            rhs.push_back(y.weight(i) * y.belief(i)[w]);
        }
    }

    const Phase1Result lp = phase1_feasible(n_vars, rows, rhs, kLpFeasTol);
    GarblingCertificate cert;
    cert.rows = n1;
    cert.cols = n2;
    cert.feasible = lp.feasible;
    cert.joint = lp.feasible ? lp.x : std::vector<double>(n_vars, 0.0);
    return cert;
}

/// One-sided randomized refutation oracle for the Blackwell order: samples
/// convex test functions (maxima of up to five random affine functions) and
/// reports false as soon as one gives y a strictly larger expectation than
/// y2. False is conclusive, true is only evidence.
inline bool convex_oracle_leq(const PosteriorDistribution& y,
                              const PosteriorDistribution& y2, std::size_t n_tests,
                              std::uint64_t seed, double tol = 1e-9) {
    if (y.n_states() != y2.n_states())
        throw ArgumentError("convex_oracle_leq: dimension mismatch");
    const std::size_t d = y.n_states();
    std::mt19937_64 gen(seed);
    for (std::size_t trial = 0; trial < n_tests; ++trial) {
        const std::size_t pieces = 1 + uniform_index(gen, 5);
        std::vector<std::vector<double>> affine(pieces, std::vector<double>(d + 1));
        for (auto& a : affine)
            for (double& c : a) c = uniform_real(gen, -1.0, 1.0);
        auto v = [&](const Belief& mu) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& a : affine) {
                double val = a[d];
                for (std::size_t w = 0; w < d; ++w) val += a[w] * mu[w];
                best = std::max(best, val);
            }
            return best;
        };
        if (y.expect(v) > y2.expect(v) + tol) return false;
    }
    return true;
}

/// The conditional signal distribution realizing y from prior mu0:
/// pi[state][atom] = mu_i(state) * w_i / mu0(state). Rows sum to one, and
/// Bayes-updating the signal reproduces the support beliefs.
inline std::vector<std::vector<double>> signal_from_posteriors(
    const PosteriorDistribution& y, const Belief& mu0) {
    if (!mu0.interior())
        throw PreconditionError("signal_from_posteriors: prior must be interior");
    if (!bayes_plausible(y, mu0, Tolerance(1e-9)))
        throw ArgumentError("signal_from_posteriors: y is not Bayes-plausible for mu0");
    std::vector<std::vector<double>> pi(mu0.n_states(),
                                        std::vector<double>(y.size(), 0.0));
    for (std::size_t w = 0; w < mu0.n_states(); ++w)
        for (std::size_t i = 0; i < y.size(); ++i)
            pi[w][i] = y.belief(i)[w] * y.weight(i) / mu0[w];
    return pi;
}

struct SharingReport {
    bool sharing_proof = true;
    std::optional<std::pair<std::size_t, std::size_t>> incomparable_pair{};
};

/// True iff every pair of allocated distributions is Blackwell-comparable in
/// at least one direction. Reports the first incomparable pair otherwise.
inline SharingReport sharing_proof(std::span<const PosteriorDistribution> alloc,
                                   Tolerance tol) {
    if (alloc.empty()) return {true, std::nullopt};
    const Belief mu0 = alloc[0].mean();
    for (const auto& y : alloc)
        if (!bayes_plausible(y, mu0, Tolerance(std::max(tol.abs_tol(), 1e-9))))
            throw ArgumentError("sharing_proof: allocations disagree on the prior");
    for (std::size_t i = 0; i < alloc.size(); ++i) {
        for (std::size_t j = i + 1; j < alloc.size(); ++j) {
            if (blackwell_leq(alloc[i], alloc[j], tol).feasible) continue;
            if (blackwell_leq(alloc[j], alloc[i], tol).feasible) continue;
            return {false, std::make_pair(i, j)};
        }
    }
    return {true, std::nullopt};
}

/// Partial-order law checks for blackwell_leq on a sample set: reflexivity,
/// transitivity on triples whose premises hold, and antisymmetry up to
/// equality after support merging.
struct OrderSanityReport {
    bool reflexive = true;
    bool transitive = true;
    bool antisymmetric = true;
    std::vector<std::string> failures;

    bool pass() const { return reflexive && transitive && antisymmetric; }
};

inline OrderSanityReport order_sanity_suite(std::span<const PosteriorDistribution> samples,
                                            Tolerance tol) {
    OrderSanityReport rep;
    const std::size_t n = samples.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            leq[i][j] = blackwell_leq(samples[i], samples[j], tol).feasible;

    for (std::size_t i = 0; i < n; ++i) {
        if (!leq[i][i]) {
            rep.reflexive = false;
            rep.failures.push_back("not reflexive at sample " + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k]) {
                    rep.transitive = false;
                    rep.failures.push_back("transitivity fails on triple (" +
                                           std::to_string(i) + "," + std::to_string(j) +
                                           "," + std::to_string(k) + ")");
                }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (leq[i][j] && leq[j][i] &&
                !PosteriorDistribution::equal_after_merge(samples[i], samples[j],
                                                          Tolerance(1e-8))) {
                rep.antisymmetric = false;
                rep.failures.push_back("antisymmetry fails on pair (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")");
            }
    return rep;
}

} // namespace envtk
