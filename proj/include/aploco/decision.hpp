#pragma once

// APLOCO ranking pipeline over dense criteria-by-alternatives matrices.
//
// The pipeline is a chain of pure transforms:
//
//   DecisionProblem --spc--> StageMatrix(Spc) --lc--> StageMatrix(Lc)
//                  --weights--> StageMatrix(Wlc) --score--> ScoreReport
//
// Criteria are rows, alternatives are columns. Every function takes its
// inputs by const reference and returns a fresh value; nothing is mutated
// after construction, so all types are safe to share across threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

#include "aploco/errors.hpp"

namespace aploco {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Whether a larger or a smaller raw value is better for a criterion.
enum class Direction { Maximize, Minimize };

/// Pipeline stage a matrix belongs to: starting-point criteria, logarithmic
/// conversion, weighted logarithmic conversion.
enum class Stage { Spc, Lc, Wlc };

inline const char* to_string(Direction d) {
    return d == Direction::Maximize ? "max" : "min";
}

inline const char* to_string(Stage s) {
    switch (s) {
        case Stage::Spc: return "spc";
        case Stage::Lc: return "lc";
        default: return "wlc";
    }
}

struct CriterionSpec {
    std::string id;    ///< short code, unique within a problem (e.g. "C1")
    std::string name;  ///< free text
    Direction direction = Direction::Maximize;
    double weight = 0.0;  ///< nonnegative; weights of a problem sum to 1
};

struct AlternativeSpec {
    std::string id;
    std::string name;
};

namespace detail {

/// FNV-1a over a byte range; used to fingerprint problems so stage matrices
/// can be traced back to the problem that produced them.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    return fnv1a(s.data(), s.size(), h);
}

}  // namespace detail

/// Validated decision matrix plus criterion/alternative metadata (values are
/// criteria x alternatives). Construct through build_problem.
template <typename Scalar = double>
struct DecisionProblem {
    std::vector<CriterionSpec> criteria;
    std::vector<AlternativeSpec> alternatives;
    MatrixX<Scalar> values;
    std::uint64_t tag = 0;  ///< content fingerprint, see build_problem

    Eigen::Index criterion_count() const { return values.rows(); }
    Eigen::Index alternative_count() const { return values.cols(); }

    VectorX<Scalar> weights() const {
        VectorX<Scalar> w(static_cast<Eigen::Index>(criteria.size()));
        for (std::size_t i = 0; i < criteria.size(); ++i)
            w[static_cast<Eigen::Index>(i)] = static_cast<Scalar>(criteria[i].weight);
        return w;
    }
};

/// One matrix of the pipeline, tagged with the stage that produced it and the
/// fingerprint of the source problem.
template <typename Scalar = double>
struct StageMatrix {
    Stage stage = Stage::Spc;
    MatrixX<Scalar> values;
    std::uint64_t problem_tag = 0;
};

/// Scores of one ranking run. All per-alternative vectors are indexed by the
/// problem's alternative order; ranks are 1-based.
template <typename Scalar = double>
struct ScoreReport {
    VectorX<Scalar> beta;    ///< per-criterion optimum (row max of the weighted matrix)
    Scalar beta_s{};         ///< sum of the row optima; the ideal score
    VectorX<Scalar> alpha;   ///< per-alternative column sum
    VectorX<Scalar> theta;   ///< alpha / beta_s, in (0, 1]
    VectorX<Scalar> distance;  ///< beta_s - alpha, >= 0
    std::vector<int> rank;   ///< rank[j] = 1..r, 1 = best

    /// Alternative indices ordered best-first.
    std::vector<int> order() const {
        std::vector<int> idx(rank.size());
        for (std::size_t j = 0; j < rank.size(); ++j) idx[static_cast<std::size_t>(rank[j] - 1)] = static_cast<int>(j);
        return idx;
    }
};

struct BuildOptions {
    /// Divide weights by their sum instead of requiring them to sum to 1.
    bool normalize_weights = false;
};

/// Tolerance for the weight-sum check when normalization is off.
inline constexpr double kWeightSumTolerance = 1e-9;

template <typename Scalar>
std::uint64_t problem_fingerprint(const std::vector<CriterionSpec>& criteria,
                                  const std::vector<AlternativeSpec>& alternatives,
                                  const MatrixX<Scalar>& values) {
    std::uint64_t h = detail::fnv1a("aploco", 6);
    for (const auto& c : criteria) {
        h = detail::fnv1a(c.id, h);
        h = detail::fnv1a(&c.direction, sizeof c.direction, h);
        h = detail::fnv1a(&c.weight, sizeof c.weight, h);
    }
    for (const auto& a : alternatives) h = detail::fnv1a(a.id, h);
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            const double v = static_cast<double>(values(i, j));
            h = detail::fnv1a(&v, sizeof v, h);
        }
    return h;
}

/// Assembles and validates a decision problem: dimensions must agree, values
/// must be finite, ids unique, weights nonnegative and (unless
/// options.normalize_weights) summing to 1 within kWeightSumTolerance.
template <typename Scalar = double>
DecisionProblem<Scalar> build_problem(std::vector<CriterionSpec> criteria,
                                      std::vector<AlternativeSpec> alternatives,
                                      MatrixX<Scalar> values,
                                      const BuildOptions& options = {}) {
    if (criteria.empty() || alternatives.empty())
        throw DimensionMismatch("a decision problem needs at least one criterion and one alternative");
    if (values.rows() != static_cast<Eigen::Index>(criteria.size()) ||
        values.cols() != static_cast<Eigen::Index>(alternatives.size()))
        throw DimensionMismatch("value matrix is " + std::to_string(values.rows()) + "x" +
                                std::to_string(values.cols()) + " but there are " +
                                std::to_string(criteria.size()) + " criteria and " +
                                std::to_string(alternatives.size()) + " alternatives");

    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j)
            if (!std::isfinite(static_cast<double>(values(i, j))))
                throw NonFiniteValue("non-finite value for criterion " + criteria[static_cast<std::size_t>(i)].id +
                                     ", alternative " + alternatives[static_cast<std::size_t>(j)].id);

    std::unordered_set<std::string> seen;
    for (const auto& c : criteria)
        if (!seen.insert(c.id).second) throw DuplicateId("duplicate criterion id '" + c.id + "'");
    seen.clear();
    for (const auto& a : alternatives)
        if (!seen.insert(a.id).second) throw DuplicateId("duplicate alternative id '" + a.id + "'");

    double sum = 0.0;
    for (const auto& c : criteria) {
        if (c.weight < 0.0) throw NegativeWeight("criterion '" + c.id + "' has negative weight");
        sum += c.weight;
    }
    if (options.normalize_weights) {
        if (sum <= 0.0) throw WeightSumViolation("cannot normalize weights with zero sum");
        for (auto& c : criteria) c.weight /= sum;
    } else if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw WeightSumViolation("criterion weights sum to " + std::to_string(sum) + ", expected 1");
    }

    DecisionProblem<Scalar> p;
    p.criteria = std::move(criteria);
    p.alternatives = std::move(alternatives);
    p.values = std::move(values);
    p.tag = problem_fingerprint(p.criteria, p.alternatives, p.values);
    return p;
}

/// Starting-point criteria: per-row deviation from the row's best value.
/// Maximize rows use (row max - x), Minimize rows (x - row min), so the best
/// alternative of every criterion maps to 0 and everything else is >= 0.
template <typename Scalar>
StageMatrix<Scalar> compute_spc(const DecisionProblem<Scalar>& problem) {
    StageMatrix<Scalar> out;
    out.stage = Stage::Spc;
    out.problem_tag = problem.tag;
    out.values.resize(problem.values.rows(), problem.values.cols());
    for (Eigen::Index i = 0; i < problem.values.rows(); ++i) {
        const auto row = problem.values.row(i);
        if (problem.criteria[static_cast<std::size_t>(i)].direction == Direction::Maximize)
            out.values.row(i) = (row.maxCoeff() - row.array()).matrix();
        else
            out.values.row(i) = (row.array() - row.minCoeff()).matrix();
    }
    return out;
}

/// Logarithmic conversion l = 1 / ln(p + 2), mapping deviations to
/// (0, 1/ln 2]; larger means better, the row optimum (p = 0) hits 1/ln 2.
template <typename Scalar>
StageMatrix<Scalar> compute_lc(const StageMatrix<Scalar>& spc) {
    if (spc.stage != Stage::Spc)
        throw StageMismatch(std::string("compute_lc expects an spc matrix, got ") + to_string(spc.stage));
    StageMatrix<Scalar> out;
    out.stage = Stage::Lc;
    out.problem_tag = spc.problem_tag;
    out.values = (spc.values.array() + Scalar(2)).log().inverse().matrix();
    return out;
}

/// Scales every row of the converted matrix by its criterion weight.
template <typename Scalar>
StageMatrix<Scalar> apply_weights(const StageMatrix<Scalar>& lc, const DecisionProblem<Scalar>& problem) {
    if (lc.stage != Stage::Lc)
        throw StageMismatch(std::string("apply_weights expects an lc matrix, got ") + to_string(lc.stage));
    if (lc.problem_tag != problem.tag)
        throw DimensionMismatch("stage matrix does not originate from this problem");
    if (lc.values.rows() != problem.values.rows() || lc.values.cols() != problem.values.cols())
        throw DimensionMismatch("stage matrix shape does not match the problem");
    StageMatrix<Scalar> out;
    out.stage = Stage::Wlc;
    out.problem_tag = problem.tag;
    out.values = (lc.values.array().colwise() * problem.weights().array()).matrix();
    return out;
}

/// Final scoring: row maxima beta, their sum beta_s, column sums alpha,
/// ratios theta = alpha / beta_s and distances beta_s - alpha. Ranks order
/// theta descending at full precision; exact ties keep input order.
template <typename Scalar>
ScoreReport<Scalar> score(const StageMatrix<Scalar>& wlc) {
    if (wlc.stage != Stage::Wlc)
        throw StageMismatch(std::string("score expects a wlc matrix, got ") + to_string(wlc.stage));
    ScoreReport<Scalar> r;
    r.beta = wlc.values.rowwise().maxCoeff();
    r.beta_s = r.beta.sum();
    r.alpha = wlc.values.colwise().sum().transpose();
    r.theta = r.alpha / r.beta_s;
    r.distance = (r.beta_s - r.alpha.array()).matrix();

    const auto n = r.alpha.size();
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return r.theta[a] > r.theta[b]; });
    r.rank.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) r.rank[static_cast<std::size_t>(idx[pos])] = static_cast<int>(pos) + 1;
    return r;
}

/// Whole pipeline; identical to composing the four stage functions.
template <typename Scalar>
ScoreReport<Scalar> rank_pipeline(const DecisionProblem<Scalar>& problem) {
    return score(apply_weights(compute_lc(compute_spc(problem)), problem));
}

/// Upper bound of the logarithmic conversion, attained exactly at p = 0.
template <typename Scalar = double>
Scalar lc_upper_bound() {
    return Scalar(1) / std::log(Scalar(2));
}

/// Postcondition check for a stage matrix; throws InvariantViolation.
template <typename Scalar>
void validate(const StageMatrix<Scalar>& m) {
    const auto& v = m.values;
    switch (m.stage) {
        case Stage::Spc:
            if ((v.array() < Scalar(0)).any()) throw InvariantViolation("spc matrix has a negative entry");
            for (Eigen::Index i = 0; i < v.rows(); ++i)
                if (v.row(i).minCoeff() != Scalar(0))
                    throw InvariantViolation("spc row " + std::to_string(i) + " has no zero entry");
            break;
        case Stage::Lc:
            if ((v.array() <= Scalar(0)).any() || (v.array() > lc_upper_bound<Scalar>()).any())
                throw InvariantViolation("lc matrix entry outside (0, 1/ln 2]");
            break;
        case Stage::Wlc:
            if ((v.array() < Scalar(0)).any()) throw InvariantViolation("wlc matrix has a negative entry");
            break;
    }
}

/// Postcondition check for a score report; throws InvariantViolation.
template <typename Scalar>
void validate(const ScoreReport<Scalar>& r) {
    if (std::abs(static_cast<double>(r.beta_s - r.beta.sum())) > 1e-12)
        throw InvariantViolation("beta_s is not the sum of beta");
    const auto n = r.alpha.size();
    if (r.theta.size() != n || r.distance.size() != n || static_cast<Eigen::Index>(r.rank.size()) != n)
        throw InvariantViolation("score report vectors disagree in length");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int rk : r.rank) {
        if (rk < 1 || rk > n || seen[static_cast<std::size_t>(rk - 1)])
            throw InvariantViolation("ranks are not a permutation of 1..r");
        seen[static_cast<std::size_t>(rk - 1)] = true;
    }
    int best = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (r.theta[j] <= Scalar(0) || r.theta[j] > Scalar(1))
            throw InvariantViolation("theta outside (0, 1]");
        if (r.distance[j] < Scalar(0)) throw InvariantViolation("negative distance");
        if (r.rank[static_cast<std::size_t>(j)] == 1) best = static_cast<int>(j);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (r.theta[j] > r.theta[best]) throw InvariantViolation("rank 1 does not have the maximal theta");
        if (r.distance[j] < r.distance[best]) throw InvariantViolation("rank 1 does not have the minimal distance");
    }
}

}  // namespace aploco
