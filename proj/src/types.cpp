#include "imc/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace imc {

StateSpace::StateSpace(std::size_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
    if (size_ == 0) throw std::invalid_argument("StateSpace: size must be positive");
    if (!labels_.empty()) {
        if (labels_.size() != size_)
            throw std::invalid_argument("StateSpace: label count must match size");
        std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size())
            throw std::invalid_argument("StateSpace: labels must be distinct");
    }
}

const std::string& StateSpace::label(std::size_t x) const {
    if (x >= size_) throw std::out_of_range("StateSpace: state index out of range");
    if (labels_.empty()) throw std::domain_error("StateSpace: no labels defined");
    return labels_[x];
}

StateSet::StateSet(std::size_t n_states, sizevec members)
    : n_(n_states), members_(std::move(members)), mask_(n_states, 0) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (std::size_t x : members_) {
        if (x >= n_) throw std::out_of_range("StateSet: member index out of range");
        mask_[x] = 1;
    }
}

StateSet StateSet::full(std::size_t n_states) {
    sizevec all(n_states);
    for (std::size_t i = 0; i < n_states; ++i) all[i] = i;
    return StateSet(n_states, std::move(all));
}

StateSet StateSet::empty_set(std::size_t n_states) { return StateSet(n_states, {}); }

StateSet StateSet::complement() const {
    sizevec rest;
    rest.reserve(n_ - members_.size());
    for (std::size_t x = 0; x < n_; ++x)
        if (!mask_[x]) rest.push_back(x);
    return StateSet(n_, std::move(rest));
}

bool StateSet::is_subset_of(const StateSet& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t x : members_)
        if (!other.contains(x)) return false;
    return true;
}

TargetSet::TargetSet(std::size_t n_states, sizevec members)
    : set_(n_states, std::move(members)) {
    if (set_.empty()) throw std::invalid_argument("TargetSet: target set must be nonempty");
}

ProbabilityRow::ProbabilityRow(numvec weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("ProbabilityRow: empty weight vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) // also rejects NaN
            throw std::invalid_argument("ProbabilityRow: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
        throw std::invalid_argument("ProbabilityRow: weights sum to " + std::to_string(sum) +
                                    ", outside the accepted drift");
    // Renormalisation is a projection: rows already summing to one within
    // accumulated round-off are left untouched, so construction is idempotent
    // and serialised rows survive a round trip bit-identically.
    if (std::abs(sum - 1.0) > 1e-12)
        for (double& w : weights_) w /= sum;
}

sizevec ProbabilityRow::support() const {
    sizevec s;
    for (std::size_t y = 0; y < weights_.size(); ++y)
        if (weights_[y] > kSupportEps) s.push_back(y);
    return s;
}

ProbabilityRow ProbabilityRow::point_mass(std::size_t n, std::size_t y) {
    if (y >= n) throw std::out_of_range("point_mass: index out of range");
    numvec w(n, 0.0);
    w[y] = 1.0;
    return ProbabilityRow(std::move(w));
}

TransitionMatrix::TransitionMatrix(std::vector<ProbabilityRow> rows) {
    if (rows.empty()) throw std::invalid_argument("TransitionMatrix: no rows");
    n_ = rows.size();
    data_.reserve(n_ * n_);
    for (const ProbabilityRow& r : rows) {
        if (r.size() != n_)
            throw std::invalid_argument("TransitionMatrix: row length must equal state count");
        data_.insert(data_.end(), r.weights().begin(), r.weights().end());
    }
}

TransitionMatrix TransitionMatrix::from_rows(const std::vector<numvec>& rows) {
    std::vector<ProbabilityRow> checked;
    checked.reserve(rows.size());
    for (const numvec& r : rows) checked.emplace_back(r);
    return TransitionMatrix(std::move(checked));
}

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
    std::vector<ProbabilityRow> rows;
    rows.reserve(n);
    for (std::size_t x = 0; x < n; ++x) rows.push_back(ProbabilityRow::point_mass(n, x));
    return TransitionMatrix(std::move(rows));
}

numvec TransitionMatrix::row_copy(std::size_t x) const {
    if (x >= n_) throw std::out_of_range("TransitionMatrix: row index out of range");
    return numvec(data_.begin() + x * n_, data_.begin() + (x + 1) * n_);
}

numvec TransitionMatrix::apply(const numvec& f) const {
    if (f.size() != n_)
        throw std::invalid_argument("TransitionMatrix::apply: dimension mismatch");
    numvec out(n_, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
        const double* r = data_.data() + x * n_;
        double acc = 0.0;
        for (std::size_t y = 0; y < n_; ++y) acc += r[y] * f[y];
        out[x] = acc;
    }
    return out;
}

ValueFunction::ValueFunction(StateSet carrier, numvec values)
    : carrier_(std::move(carrier)), values_(std::move(values)),
      rank_(carrier_.n_states(), std::numeric_limits<std::size_t>::max()) {
    if (values_.size() != carrier_.size())
        throw std::invalid_argument("ValueFunction: value count must match carrier size");
    const sizevec& m = carrier_.members();
    for (std::size_t i = 0; i < m.size(); ++i) rank_[m[i]] = i;
}

ValueFunction ValueFunction::full(std::size_t n_states, numvec values) {
    return ValueFunction(StateSet::full(n_states), std::move(values));
}

double ValueFunction::at(std::size_t state) const {
    if (state >= rank_.size() || rank_[state] == std::numeric_limits<std::size_t>::max())
        throw std::domain_error("ValueFunction: state outside carrier");
    return values_[rank_[state]];
}

ValueFunction add(const ValueFunction& a, const ValueFunction& b) {
    if (!(a.carrier() == b.carrier()))
        throw std::domain_error("ValueFunction: arithmetic between mismatched carriers");
    numvec out(a.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.values()[i];
    return ValueFunction(a.carrier(), std::move(out));
}

} // namespace imc
