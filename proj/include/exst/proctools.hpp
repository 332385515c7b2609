#pragma once

#include <cstdint>
#include <string>

#include "exst/expr.hpp"
#include "exst/statistics.hpp"

namespace exst {

struct SimplifyOptions {
    long long tries = 2000;       // attempts per restart
    int restarts = 8;             // independent descents
    std::uint64_t seed = 0;       // master seed; per-restart streams derived
    double plateau_probability = 0.0;  // accept equal-norm moves with this chance
};

/// Random hill descent on the norm: each attempt adds ± one identity
/// generator column and keeps it iff norm1 strictly decreases (equal norms
/// accepted with plateau_probability). The best representative over all
/// restarts is returned; ties go to the lowest restart index, so the result
/// is deterministic given the seed. The output is always congruent to e
/// modulo the identity lattice.
Expression simplify_randomly(StatisticsEngine& eng, const Expression& e,
                             const SimplifyOptions& opts = {});

/// A process word g with expand_theta(g, base) = e exactly. Each coefficient
/// c on (s,a) becomes |c| traversals of the configuration-graph edge a ->
/// a+∂s (inverse traversals for c < 0); closedness makes every component
/// Eulerian. Components away from base are joined by shortest connector
/// paths walked forward and then exactly backward, which contribute nothing
/// to the expansion. Throws DomainError if e is not closed.
ProcessWord reconstruct_process(const ExcitationModel& m, const Expression& e, int base = 0);

/// Graphviz DOT text for e on the configuration graph: one node per incident
/// configuration (labeled by a shortest process word reaching it from 0),
/// one edge per nonzero term labeled "n×label", red for n > 0 and blue for
/// n < 0.
std::string emit_dot(const ExcitationModel& m, const Expression& e);

}  // namespace exst
