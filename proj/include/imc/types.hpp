#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace imc {

using numvec = std::vector<double>;
using sizevec = std::vector<std::size_t>;

/// Entries strictly above this count as support (graph) edges. Guards against
/// round-off introduced by row normalisation.
inline constexpr double kSupportEps = 1e-12;

/// Rows whose sum deviates from one by more than this are rejected; smaller
/// drift (typical of decimal round-off in input files) is renormalised.
inline constexpr double kRowSumTol = 1e-6;

/// Absolute tolerance under which an envelope value counts as attained
/// (the row-keeping tiebreak of the upper solver).
inline constexpr double kTieTol = 1e-12;

/// Default residual tolerance for hitting-probability solves.
inline constexpr double kResidualTol = 1e-9;

/**
 * Finite state space of size N with the canonical index order 0..N-1.
 * Labels are optional display names; indices are the identity of a state.
 */
class StateSpace {
public:
    explicit StateSpace(std::size_t size, std::vector<std::string> labels = {});

    std::size_t size() const { return size_; }
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t x) const;

private:
    std::size_t size_;
    std::vector<std::string> labels_;
};

/// Sorted subset of {0..N-1} with O(1) membership tests.
class StateSet {
public:
    StateSet() = default;
    StateSet(std::size_t n_states, sizevec members);

    static StateSet full(std::size_t n_states);
    static StateSet empty_set(std::size_t n_states);

    std::size_t n_states() const { return n_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(std::size_t x) const { return x < n_ && mask_[x] != 0; }
    const sizevec& members() const { return members_; }

    StateSet complement() const;
    bool is_subset_of(const StateSet& other) const;

    friend bool operator==(const StateSet& a, const StateSet& b) {
        return a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    std::size_t n_ = 0;
    sizevec members_;
    std::vector<std::uint8_t> mask_;
};

/// Nonempty target set A; the complement A^c is always derived, never stored.
class TargetSet {
public:
    TargetSet(std::size_t n_states, sizevec members);

    const StateSet& set() const { return set_; }
    std::size_t n_states() const { return set_.n_states(); }
    std::size_t size() const { return set_.size(); }
    bool contains(std::size_t x) const { return set_.contains(x); }
    const sizevec& members() const { return set_.members(); }
    StateSet complement() const { return set_.complement(); }

private:
    StateSet set_;
};

/**
 * Probability mass function over the state space. Weights must be
 * nonnegative; the sum may drift from one by at most kRowSumTol and is
 * renormalised on construction.
 */
class ProbabilityRow {
public:
    explicit ProbabilityRow(numvec weights);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t y) const { return weights_[y]; }
    const numvec& weights() const { return weights_; }

    /// Indices carrying mass above kSupportEps.
    sizevec support() const;

    /// Bitwise equality; used for vertex deduplication.
    friend bool operator==(const ProbabilityRow& a, const ProbabilityRow& b) {
        return a.weights_ == b.weights_;
    }

    static ProbabilityRow point_mass(std::size_t n, std::size_t y);

private:
    numvec weights_;
};

/// Row-stochastic NxN matrix; immutable after construction.
class TransitionMatrix {
public:
    explicit TransitionMatrix(std::vector<ProbabilityRow> rows);
    static TransitionMatrix from_rows(const std::vector<numvec>& rows);
    static TransitionMatrix identity(std::size_t n);

    std::size_t n_states() const { return n_; }
    double operator()(std::size_t x, std::size_t y) const { return data_[x * n_ + y]; }
    std::span<const double> row(std::size_t x) const {
        return std::span<const double>(data_.data() + x * n_, n_);
    }
    numvec row_copy(std::size_t x) const;

    /// Matrix-vector product T f over the full space.
    numvec apply(const numvec& f) const;

    friend bool operator==(const TransitionMatrix& a, const TransitionMatrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

private:
    TransitionMatrix(std::size_t n, numvec data) : n_(n), data_(std::move(data)) {}
    std::size_t n_ = 0;
    numvec data_;
};

/**
 * Real-valued function together with the explicit index set (carrier) it is
 * defined over. Mixing mismatched carriers is a domain error.
 */
class ValueFunction {
public:
    ValueFunction(StateSet carrier, numvec values);
    static ValueFunction full(std::size_t n_states, numvec values);

    const StateSet& carrier() const { return carrier_; }
    const numvec& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    /// Value at a state of the carrier; throws std::domain_error otherwise.
    double at(std::size_t state) const;

    friend bool operator==(const ValueFunction& a, const ValueFunction& b) {
        return a.carrier_ == b.carrier_ && a.values_ == b.values_;
    }

private:
    StateSet carrier_;
    numvec values_;
    sizevec rank_; // state -> position in values_, SIZE_MAX when absent
};

/// Pointwise sum; both operands must share the same carrier.
ValueFunction add(const ValueFunction& a, const ValueFunction& b);

} // namespace imc
