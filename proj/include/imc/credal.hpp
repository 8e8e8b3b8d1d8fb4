#pragma once

#include <variant>
#include <vector>

#include "imc/types.hpp"

namespace imc {

/// Finitely generated credal row: the convex hull of an explicit vertex list.
/// Duplicate vertices (bitwise, after normalisation) are removed.
struct VertexRow {
    std::vector<ProbabilityRow> vertices;
};

/**
 * Epsilon-contamination row: {(1-eps) base + eps s : s any distribution on
 * `support`}. Extreme points place the contamination mass on a single
 * support member: (1-eps) base + eps delta_y for y in support (ascending
 * order). The base must itself be supported within `support`.
 */
struct EpsContamRow {
    ProbabilityRow base;
    double epsilon;
    StateSet support;
};

using CredalRow = std::variant<VertexRow, EpsContamRow>;

/// Per-state choice of an extreme point; materialises to a vertex matrix.
struct ExtremeSelection {
    sizevec choice;

    friend bool operator==(const ExtremeSelection& a, const ExtremeSelection& b) {
        return a.choice == b.choice;
    }
};

/**
 * Credal transition model with separately specified rows: the set of
 * transition matrices is the Cartesian product of the per-state rows.
 * Immutable after construction.
 */
class CredalSet {
public:
    CredalSet(std::size_t n_states, std::vector<CredalRow> rows);

    std::size_t n_states() const { return n_; }
    const CredalRow& row(std::size_t x) const { return rows_[x]; }

    /// Number of extreme points of row x (vertices, or |support| for
    /// contamination rows).
    std::size_t extreme_count(std::size_t x) const;

    /// The k-th extreme point of row x.
    ProbabilityRow extreme_point(std::size_t x, std::size_t k) const;

    /// Dot product of the k-th extreme point of row x with f.
    double extreme_value(std::size_t x, std::size_t k, const numvec& f) const;

    /// Union of the supports of row x's extreme points (sorted).
    const sizevec& row_support(std::size_t x) const { return supports_[x]; }

    /// Distinct supports achievable by single extreme points of row x;
    /// these are the minimal supports of any point of the row.
    std::vector<sizevec> row_vertex_supports(std::size_t x) const;

    /// Product of extreme counts over all rows, saturated at SIZE_MAX.
    std::size_t combination_count() const;

private:
    std::size_t n_;
    std::vector<CredalRow> rows_;
    std::vector<sizevec> supports_;
};

struct Envelope {
    numvec values;
    ExtremeSelection witness;
};

/// [Tf](x) minimised over row x; the witness attains the minimum
/// (lowest extreme index on exact ties).
Envelope lower_envelope(const CredalSet& c, const numvec& f);

/**
 * [Tf](x) maximised over row x. When `keep` is given and its choice for a
 * row already attains the maximum within kTieTol, that choice is kept (the
 * row-keeping tiebreak); otherwise the lowest-index maximiser wins.
 */
Envelope upper_envelope(const CredalSet& c, const numvec& f,
                        const ExtremeSelection* keep = nullptr);

/// Transition matrix whose row x is the sel(x)-th extreme point of row x.
TransitionMatrix materialize(const CredalSet& c, const ExtremeSelection& sel);

/**
 * Matrix in the relative interior of the credal set: per row the uniform
 * average of the vertices, or (1-eps) base + eps uniform-on-support. Its
 * support graph equals the possible-edge graph.
 */
TransitionMatrix center_matrix(const CredalSet& c);

/// True iff some extreme point of row x gives y positive mass.
bool possible_edge(const CredalSet& c, std::size_t x, std::size_t y);

/// Support-level test of [T 1_D](x) > 0 under the lower envelope: true iff
/// every extreme point of row x puts positive mass on d.
bool lower_mass_positive(const CredalSet& c, std::size_t x, const StateSet& d);

} // namespace imc
