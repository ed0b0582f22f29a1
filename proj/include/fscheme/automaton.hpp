#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "fscheme/alphabet.hpp"
#include "fscheme/rational.hpp"

namespace fscheme {

inline constexpr std::size_t kOutside = static_cast<std::size_t>(-1);

/// Finite labelled Serre graph in which every vertex has exactly one slot per
/// letter of A^{+-1}. A slot either points at a vertex (the letter is
/// accepted) or is a boundary slot (kOutside).
///
/// For Cayley-derived automata the target of (g, a) is g * value(a), and the
/// outer boundary size is recorded at construction. Abstract automata leave
/// it unset.
class Automaton {
public:
    /// `slots` holds keys.size() * 2m entries, row-major by vertex.
    /// Throws SerreViolation, DuplicateSlot or PreconditionError.
    Automaton(GenAlphabet alphabet, std::vector<std::string> keys, std::vector<std::size_t> slots,
              std::optional<std::size_t> outer_boundary = std::nullopt);

    const GenAlphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return keys_.size(); }
    std::size_t letter_count() const noexcept { return alphabet_.letter_count(); }

    const std::string& key(std::size_t v) const { return keys_.at(v); }
    const std::vector<std::string>& keys() const noexcept { return keys_; }
    std::optional<std::size_t> find(std::string_view key) const;

    std::size_t target(std::size_t v, LetterId l) const { return slots_[v * letter_count() + l]; }
    bool accepts(std::size_t v, LetterId l) const { return target(v, l) != kOutside; }
    std::size_t degree(std::size_t v) const;
    bool on_inner_boundary(std::size_t v) const { return degree(v) < letter_count(); }

    std::optional<std::size_t> outer_boundary() const noexcept { return outer_boundary_; }

    /// Induced automaton on a subset of vertices (order as given); the outer
    /// boundary of the result is unknown.
    Automaton restrict_to(std::span<const std::size_t> vertices) const;

    friend bool operator==(const Automaton& a, const Automaton& b)
    {
        return a.alphabet_ == b.alphabet_ && a.keys_ == b.keys_ && a.slots_ == b.slots_ &&
               a.outer_boundary_ == b.outer_boundary_;
    }

private:
    GenAlphabet alphabet_;
    std::vector<std::string> keys_;
    std::vector<std::size_t> slots_;
    std::optional<std::size_t> outer_boundary_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct BoundaryReport {
    std::size_t rank = 0;
    std::size_t vertices = 0;
    std::size_t inner_boundary = 0;
    std::optional<std::size_t> outer_boundary;
    std::size_t cheeger_boundary = 0;
    /// Vertices not accepting each letter, indexed by LetterId.
    std::vector<std::size_t> nu;
    Rational density;
    Rational isoperimetric;
};

/// Throws PreconditionError for an empty automaton.
BoundaryReport boundary_report(const Automaton& automaton);

/// Ball of radius r around the identity in the right Cayley graph.
Automaton ball(unsigned radius, const GenAlphabet& alphabet);

/// Induced subgraph on the given elements (keys are reduced to canonical form;
/// duplicates dropped). Throws ParseError for an undecodable key.
Automaton induced_subgraph(std::span<const std::string> keys, const GenAlphabet& alphabet);

/// File format:
///   {"alphabet": [sym...], "values": {sym: "D|R"}, "vertices": [key...],
///    "edges": [[u, sym, v], ...]}
/// with one directed edge per inverse pair (the positive letter). With
/// "edge_mode": "directed" every directed edge is listed explicitly and each
/// must have its inverse listed.
nlohmann::json automaton_to_json(const Automaton& automaton);
Automaton automaton_from_json(const nlohmann::json& doc);
void save_automaton(const Automaton& automaton, const std::filesystem::path& path);
Automaton load_automaton(const std::filesystem::path& path);

nlohmann::json report_to_json(const BoundaryReport& report, const GenAlphabet& alphabet);
/// Columns: letter,nu
std::string report_to_csv(const BoundaryReport& report, const GenAlphabet& alphabet);

}  // namespace fscheme
