#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fscheme/automaton.hpp"
#include "fscheme/rational.hpp"

namespace fscheme {

struct Step {
    std::size_t from = 0;
    LetterId letter = 0;
    std::size_t to = 0;

    friend bool operator==(const Step&, const Step&) = default;
};

using Path = std::vector<Step>;

/// One path per vertex of the automaton, indexed like its vertices.
struct EvacScheme {
    unsigned K = 1;
    std::vector<Path> paths;
};

/// Number of times each directed edge occurs in the scheme, indexed by slot
/// (v * 2m + letter).
std::vector<std::size_t> edge_usage(const Automaton& y, const EvacScheme& scheme);

/// Throws PreconditionError describing the first violated invariant. Paths
/// must end in `sinks` (the inner boundary when omitted); for K = 1 paths must
/// also be simple and never use an edge together with its inverse.
void validate_scheme(const Automaton& y, const EvacScheme& scheme,
                     std::optional<std::span<const std::size_t>> sinks = std::nullopt);

/// Directed edges leaving the vertex set, boundary slots included.
std::size_t cheeger_boundary(const Automaton& y, std::span<const std::size_t> vertices);

struct Witness {
    std::vector<std::size_t> vertices;
    std::size_t cheeger = 0;
};

struct SolveResult {
    std::optional<EvacScheme> scheme;
    std::optional<Witness> witness;
    /// Maximum flow including the |dY| units drained in place; equals
    /// `demand` = |Y| exactly when a scheme exists.
    std::size_t flow_value = 0;
    std::size_t demand = 0;
};

/// Capacity-K scheme via maximum flow: every internal vertex supplies one
/// unit, inner-boundary vertices drain, each geometric edge carries net flow
/// at most K in one direction. Boundary vertices get empty paths.
///
/// When no scheme exists the witness Z is the set of vertices reachable from
/// the source in the final residual graph. It consists of internal vertices
/// and satisfies K |d*Z| < |Z|.
///
/// Throws NoEvacuationTarget when the inner boundary is empty.
SolveResult solve_with_constant(const Automaton& y, unsigned K);
SolveResult solve_pure(const Automaton& y);

struct HallResult {
    bool exists = true;
    std::optional<Witness> witness;
};

/// Exhaustive check of K |d*Z| >= |Z| over all nonempty sets Z of internal
/// vertices. Throws PreconditionError for more than 20 internal vertices.
HallResult hall_oracle(const Automaton& y, unsigned K = 1);

/// Ordered pair <t(e), i(e)> of a used edge e. Reading it as the directed
/// edge from t(e) back to i(e), `letter` is the inverse of e's letter.
struct PsiPair {
    std::size_t from = 0;
    LetterId letter = 0;
    std::size_t to = 0;

    friend bool operator==(const PsiPair&, const PsiPair&) = default;
};

struct PsiRelation {
    std::vector<PsiPair> pairs;
    /// #preimages - #images: +1 at i(e), -1 at t(e) for every pair.
    std::vector<long> index;
};

PsiRelation scheme_to_relation(const Automaton& y, const EvacScheme& scheme);

/// Peels chains of the relation into paths ending in `sinks`. Each pair
/// is consumed once. Throws PreconditionError naming a non-sink vertex of
/// index < 1, or a pair that is not an edge of y.
EvacScheme relation_to_scheme(const Automaton& y, std::span<const PsiPair> pairs,
                              std::span<const std::size_t> sinks);

struct FlowEntry {
    std::string from;
    std::string letter;
    std::string to;
    Rational value;
};

struct FlowAssignment {
    Rational C;
    Rational eps;
    std::vector<FlowEntry> flow;
    /// Total inflow through the boundary slots of a vertex.
    std::map<std::string, Rational> boundary_inflow;
};

/// {C: "p/q", eps: "p/q", flow: [[u, letter, v, "p/q"], ...],
///  boundary_inflows: {key: "p/q"}}
FlowAssignment flow_from_json(const nlohmann::json& doc);
nlohmann::json flow_to_json(const FlowAssignment& flow);

struct CertificateVerdict {
    bool accepted = false;
    std::vector<std::string> problems;
    /// eps / C, a lower bound on the isoperimetric constant when accepted.
    Rational bound;
    Rational eps_volume;
    Rational cheeger_capacity;
    /// eps |Y| <= C |d*Y|
    bool inequality_holds = false;
};

/// Internal edges missing from the flow carry 0. Checks antisymmetry,
/// |f| <= C, boundary inflow at most C per boundary slot, and inflow >= eps
/// at every vertex (sum over all 2m slots).
CertificateVerdict verify_flow_certificate(const Automaton& y, const FlowAssignment& flow);

struct NamedStep {
    std::string from;
    std::string letter;
    std::string to;

    friend bool operator==(const NamedStep&, const NamedStep&) = default;
};

struct RelabeledScheme {
    GenAlphabet alphabet;
    std::vector<std::string> starts;
    std::vector<std::vector<NamedStep>> paths;
};

/// Conjugation phi(g) = x0 g x0^-1 applied to a pure scheme over {x0, x1, x2}:
/// x0 stays x0, x1 becomes x0 then xb1, x2 becomes x1; inverses mirrored.
/// The result lives over the multiset {x1, xb1, x0, x0}; uses of a geometric
/// x0 edge take the symbols x0 and x0_2 in order of occurrence.
///
/// Vertex names are phi(g) as reduced tree pairs when the keys are group
/// elements, else "phi(<key>)". The midpoint of a substituted x1 edge is
/// phi(g x0), named "phi(<key>)x0" when g x0 is outside Y.
RelabeledScheme conjugate_relabel(const Automaton& y, const EvacScheme& scheme);

struct MultisetUsage {
    std::map<std::string, std::size_t> letters_in;
    std::map<std::string, std::size_t> letters_out;
};

/// Throws PreconditionError unless every x1 or xb1 geometric edge is used at
/// most once, every x0 geometric edge at most twice with each copy at most
/// once, paths are contiguous and start at phi(v), and uses are conserved:
/// x0(out) = x0(in) + x1(in), xb1(out) = x1(in), x1(out) = x2(in).
MultisetUsage validate_multiset_capacity(const Automaton& y, const EvacScheme& scheme,
                                         const RelabeledScheme& relabeled);

nlohmann::json scheme_to_json(const Automaton& y, const EvacScheme& scheme);
EvacScheme scheme_from_json(const Automaton& y, const nlohmann::json& doc);
nlohmann::json witness_to_json(const Automaton& y, const Witness& witness);
nlohmann::json relabeled_to_json(const RelabeledScheme& scheme);

}  // namespace fscheme
