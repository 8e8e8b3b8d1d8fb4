#include "imc/credal.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace imc {

namespace {

double dot(const numvec& a, const numvec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void validate_row(const CredalRow& row, std::size_t n, std::size_t x) {
    if (std::holds_alternative<VertexRow>(row)) {
        const auto& vr = std::get<VertexRow>(row);
        if (vr.vertices.empty())
            throw std::invalid_argument("CredalSet: row " + std::to_string(x) +
                                        " has no vertices");
        for (const ProbabilityRow& v : vr.vertices)
            if (v.size() != n)
                throw std::invalid_argument("CredalSet: vertex dimension mismatch in row " +
                                            std::to_string(x));
    } else {
        const auto& er = std::get<EpsContamRow>(row);
        if (er.base.size() != n)
            throw std::invalid_argument("CredalSet: base dimension mismatch in row " +
                                        std::to_string(x));
        if (!(er.epsilon > 0.0 && er.epsilon < 1.0))
            throw std::invalid_argument("CredalSet: contamination epsilon must lie in (0,1)");
        if (er.support.n_states() != n || er.support.empty())
            throw std::invalid_argument("CredalSet: contamination support invalid in row " +
                                        std::to_string(x));
        for (std::size_t y = 0; y < n; ++y)
            if (er.base[y] > kSupportEps && !er.support.contains(y))
                throw std::invalid_argument(
                    "CredalSet: base of row " + std::to_string(x) +
                    " carries mass outside the contamination support");
    }
}

VertexRow dedupe(VertexRow vr) {
    std::vector<ProbabilityRow> unique;
    for (ProbabilityRow& v : vr.vertices) {
        bool dup = false;
        for (const ProbabilityRow& u : unique)
            if (u == v) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(std::move(v));
    }
    vr.vertices = std::move(unique);
    return vr;
}

} // namespace

CredalSet::CredalSet(std::size_t n_states, std::vector<CredalRow> rows)
    : n_(n_states), rows_(std::move(rows)) {
    if (n_ == 0) throw std::invalid_argument("CredalSet: empty state space");
    if (rows_.size() != n_)
        throw std::invalid_argument("CredalSet: need exactly one credal row per state");
    for (std::size_t x = 0; x < n_; ++x) {
        validate_row(rows_[x], n_, x);
        if (std::holds_alternative<VertexRow>(rows_[x]))
            rows_[x] = dedupe(std::get<VertexRow>(std::move(rows_[x])));
    }
    supports_.resize(n_);
    for (std::size_t x = 0; x < n_; ++x) {
        std::vector<std::uint8_t> mask(n_, 0);
        if (const auto* vr = std::get_if<VertexRow>(&rows_[x])) {
            for (const ProbabilityRow& v : vr->vertices)
                for (std::size_t y : v.support()) mask[y] = 1;
        } else {
            const auto& er = std::get<EpsContamRow>(rows_[x]);
            for (std::size_t y : er.support.members()) mask[y] = 1;
            for (std::size_t y : er.base.support()) mask[y] = 1;
        }
        for (std::size_t y = 0; y < n_; ++y)
            if (mask[y]) supports_[x].push_back(y);
    }
}

std::size_t CredalSet::extreme_count(std::size_t x) const {
    if (const auto* vr = std::get_if<VertexRow>(&rows_[x])) return vr->vertices.size();
    return std::get<EpsContamRow>(rows_[x]).support.size();
}

ProbabilityRow CredalSet::extreme_point(std::size_t x, std::size_t k) const {
    if (x >= n_ || k >= extreme_count(x))
        throw std::out_of_range("CredalSet::extreme_point: index out of range");
    if (const auto* vr = std::get_if<VertexRow>(&rows_[x])) return vr->vertices[k];
    const auto& er = std::get<EpsContamRow>(rows_[x]);
    numvec w(er.base.weights());
    for (double& v : w) v *= 1.0 - er.epsilon;
    w[er.support.members()[k]] += er.epsilon;
    return ProbabilityRow(std::move(w));
}

double CredalSet::extreme_value(std::size_t x, std::size_t k, const numvec& f) const {
    if (const auto* vr = std::get_if<VertexRow>(&rows_[x]))
        return dot(vr->vertices[k].weights(), f);
    const auto& er = std::get<EpsContamRow>(rows_[x]);
    return (1.0 - er.epsilon) * dot(er.base.weights(), f) +
           er.epsilon * f[er.support.members()[k]];
}

std::vector<sizevec> CredalSet::row_vertex_supports(std::size_t x) const {
    std::set<sizevec> seen;
    if (const auto* vr = std::get_if<VertexRow>(&rows_[x])) {
        for (const ProbabilityRow& v : vr->vertices) seen.insert(v.support());
    } else {
        const auto& er = std::get<EpsContamRow>(rows_[x]);
        const sizevec base_support = er.base.support();
        for (std::size_t y : er.support.members()) {
            sizevec s = base_support;
            if (!std::binary_search(s.begin(), s.end(), y)) {
                s.push_back(y);
                std::sort(s.begin(), s.end());
            }
            seen.insert(std::move(s));
        }
    }
    return std::vector<sizevec>(seen.begin(), seen.end());
}

std::size_t CredalSet::combination_count() const {
    std::size_t total = 1;
    for (std::size_t x = 0; x < n_; ++x) {
        const std::size_t m = extreme_count(x);
        if (total > std::numeric_limits<std::size_t>::max() / m)
            return std::numeric_limits<std::size_t>::max();
        total *= m;
    }
    return total;
}

namespace {

// Lowest index whose value lies within kTieTol of the optimum. Exact ties
// are generic in these models (whole regions of the value function sit at 0
// or 1), and bit-level jitter between iterations must not flip the witness,
// or the selection-repeat convergence test would never fire.
std::size_t first_within(const std::vector<double>& vals, double best, bool maximise) {
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (maximise ? vals[k] >= best - kTieTol : vals[k] <= best + kTieTol) return k;
    }
    return 0;
}

} // namespace

Envelope lower_envelope(const CredalSet& c, const numvec& f) {
    const std::size_t n = c.n_states();
    if (f.size() != n) throw std::invalid_argument("lower_envelope: f must cover the full space");
    Envelope out;
    out.values.resize(n);
    out.witness.choice.resize(n);
    std::vector<double> vals;
    for (std::size_t x = 0; x < n; ++x) {
        vals.clear();
        if (const auto* vr = std::get_if<VertexRow>(&c.row(x))) {
            for (const ProbabilityRow& v : vr->vertices) vals.push_back(dot(v.weights(), f));
            double best = vals[0];
            for (double v : vals) best = std::min(best, v);
            out.values[x] = best;
            out.witness.choice[x] = first_within(vals, best, false);
        } else {
            const auto& er = std::get<EpsContamRow>(c.row(x));
            const double base_dot = dot(er.base.weights(), f);
            for (std::size_t y : er.support.members()) vals.push_back(f[y]);
            double best = vals[0];
            for (double v : vals) best = std::min(best, v);
            out.values[x] = (1.0 - er.epsilon) * base_dot + er.epsilon * best;
            out.witness.choice[x] = first_within(vals, best, false);
        }
    }
    return out;
}

Envelope upper_envelope(const CredalSet& c, const numvec& f, const ExtremeSelection* keep) {
    const std::size_t n = c.n_states();
    if (f.size() != n) throw std::invalid_argument("upper_envelope: f must cover the full space");
    if (keep && keep->choice.size() != n)
        throw std::invalid_argument("upper_envelope: keep selection has the wrong size");
    Envelope out;
    out.values.resize(n);
    out.witness.choice.resize(n);
    std::vector<double> vals;
    for (std::size_t x = 0; x < n; ++x) {
        vals.clear();
        const std::size_t m = c.extreme_count(x);
        if (const auto* er = std::get_if<EpsContamRow>(&c.row(x))) {
            const double base_dot = dot(er->base.weights(), f);
            double top = -std::numeric_limits<double>::infinity();
            for (std::size_t y : er->support.members()) {
                vals.push_back(f[y]);
                top = std::max(top, f[y]);
            }
            out.values[x] = (1.0 - er->epsilon) * base_dot + er->epsilon * top;
        } else {
            double top = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < m; ++k) {
                vals.push_back(c.extreme_value(x, k, f));
                top = std::max(top, vals.back());
            }
            out.values[x] = top;
        }
        double raw_best = vals[0];
        for (double v : vals) raw_best = std::max(raw_best, v);
        std::size_t idx = first_within(vals, raw_best, true);
        if (keep) {
            const std::size_t k0 = keep->choice[x];
            if (k0 >= m)
                throw std::invalid_argument("upper_envelope: keep index out of range");
            // the attainment window is on row-value scale
            if (c.extreme_value(x, k0, f) >= out.values[x] - kTieTol) idx = k0;
        }
        out.witness.choice[x] = idx;
    }
    return out;
}

TransitionMatrix materialize(const CredalSet& c, const ExtremeSelection& sel) {
    const std::size_t n = c.n_states();
    if (sel.choice.size() != n)
        throw std::out_of_range("materialize: selection has the wrong size");
    std::vector<ProbabilityRow> rows;
    rows.reserve(n);
    for (std::size_t x = 0; x < n; ++x) rows.push_back(c.extreme_point(x, sel.choice[x]));
    return TransitionMatrix(std::move(rows));
}

TransitionMatrix center_matrix(const CredalSet& c) {
    const std::size_t n = c.n_states();
    std::vector<ProbabilityRow> rows;
    rows.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (const auto* vr = std::get_if<VertexRow>(&c.row(x))) {
            numvec w(n, 0.0);
            const double share = 1.0 / static_cast<double>(vr->vertices.size());
            for (const ProbabilityRow& v : vr->vertices)
                for (std::size_t y = 0; y < n; ++y) w[y] += share * v[y];
            rows.emplace_back(std::move(w));
        } else {
            const auto& er = std::get<EpsContamRow>(c.row(x));
            numvec w(er.base.weights());
            for (double& v : w) v *= 1.0 - er.epsilon;
            const double share = er.epsilon / static_cast<double>(er.support.size());
            for (std::size_t y : er.support.members()) w[y] += share;
            rows.emplace_back(std::move(w));
        }
    }
    return TransitionMatrix(std::move(rows));
}

bool possible_edge(const CredalSet& c, std::size_t x, std::size_t y) {
    if (x >= c.n_states() || y >= c.n_states())
        throw std::out_of_range("possible_edge: state index out of range");
    const sizevec& s = c.row_support(x);
    return std::binary_search(s.begin(), s.end(), y);
}

bool lower_mass_positive(const CredalSet& c, std::size_t x, const StateSet& d) {
    if (const auto* vr = std::get_if<VertexRow>(&c.row(x))) {
        for (const ProbabilityRow& v : vr->vertices) {
            bool touches = false;
            for (std::size_t y : d.members())
                if (v[y] > kSupportEps) {
                    touches = true;
                    break;
                }
            if (!touches) return false;
        }
        return true;
    }
    // Contamination extreme (1-eps) base + eps delta_y touches d iff the base
    // does or y lies in d; quantifying over all y in the support:
    const auto& er = std::get<EpsContamRow>(c.row(x));
    for (std::size_t y : d.members())
        if (er.base[y] > kSupportEps) return true;
    return er.support.is_subset_of(d);
}

} // namespace imc
