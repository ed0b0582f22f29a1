#include "fscheme/automaton.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fscheme/errors.hpp"

namespace fscheme {

Automaton::Automaton(GenAlphabet alphabet, std::vector<std::string> keys, std::vector<std::size_t> slots,
                     std::optional<std::size_t> outer_boundary)
    : alphabet_(std::move(alphabet)),
      keys_(std::move(keys)),
      slots_(std::move(slots)),
      outer_boundary_(outer_boundary)
{
    const std::size_t width = letter_count();
    if (slots_.size() != keys_.size() * width) throw PreconditionError("automaton: slot table has wrong size");
    index_.reserve(keys_.size());
    for (std::size_t v = 0; v < keys_.size(); ++v)
        if (!index_.emplace(keys_[v], v).second) throw DuplicateSlot("duplicate vertex key '" + keys_[v] + "'");
    for (std::size_t v = 0; v < keys_.size(); ++v) {
        for (LetterId l = 0; l < width; ++l) {
            const std::size_t u = target(v, l);
            if (u == kOutside) continue;
            if (u >= keys_.size()) throw PreconditionError("automaton: slot target out of range");
            if (target(u, inverse_letter(l)) != v)
                throw SerreViolation("edge (" + keys_[v] + ", " + alphabet_.letter_name(l) + ", " + keys_[u] +
                                     ") has no inverse edge");
        }
    }
}

std::optional<std::size_t> Automaton::find(std::string_view key) const
{
    const auto it = index_.find(std::string(key));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Automaton::degree(std::size_t v) const
{
    std::size_t d = 0;
    for (LetterId l = 0; l < letter_count(); ++l) d += accepts(v, l) ? 1 : 0;
    return d;
}

Automaton Automaton::restrict_to(std::span<const std::size_t> vertices) const
{
    const std::size_t width = letter_count();
    std::vector<std::size_t> position(size(), kOutside);
    std::vector<std::string> keys;
    keys.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        position.at(vertices[i]) = i;
        keys.push_back(keys_[vertices[i]]);
    }
    std::vector<std::size_t> slots(vertices.size() * width, kOutside);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (LetterId l = 0; l < width; ++l) {
            const std::size_t u = target(vertices[i], l);
            if (u != kOutside) slots[i * width + l] = position[u];
        }
    return Automaton(alphabet_, std::move(keys), std::move(slots));
}

BoundaryReport boundary_report(const Automaton& automaton)
{
    if (automaton.size() == 0) throw PreconditionError("boundary report of an empty automaton");
    BoundaryReport report;
    report.rank = automaton.alphabet().rank();
    report.vertices = automaton.size();
    report.outer_boundary = automaton.outer_boundary();
    report.nu.assign(automaton.letter_count(), 0);
    for (std::size_t v = 0; v < automaton.size(); ++v) {
        bool boundary = false;
        for (LetterId l = 0; l < automaton.letter_count(); ++l) {
            if (automaton.accepts(v, l)) continue;
            ++report.nu[l];
            ++report.cheeger_boundary;
            boundary = true;
        }
        report.inner_boundary += boundary ? 1 : 0;
    }
    const BigInt n(static_cast<unsigned long>(report.vertices));
    const BigInt cheeger(static_cast<unsigned long>(report.cheeger_boundary));
    const BigInt slots = n * static_cast<unsigned long>(automaton.letter_count());
    report.isoperimetric = make_ratio(cheeger, n);
    report.density = make_ratio(slots - cheeger, n);
    return report;
}

namespace {

struct CayleyClosure {
    std::vector<std::size_t> slots;
    std::size_t outer = 0;
};

// Fills slots of `keys` by right multiplication; targets outside the set are
// boundary slots and counted once each for the outer boundary.
CayleyClosure close_under_letters(const std::vector<FElement>& elements, const std::vector<std::string>& keys,
                                  const GenAlphabet& alphabet)
{
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], i);
    std::vector<FElement> letter_values;
    for (LetterId l = 0; l < alphabet.letter_count(); ++l) letter_values.push_back(alphabet.letter_value(l));

    CayleyClosure out;
    out.slots.assign(keys.size() * alphabet.letter_count(), kOutside);
    std::set<std::string> outside;
    for (std::size_t v = 0; v < elements.size(); ++v) {
        for (LetterId l = 0; l < alphabet.letter_count(); ++l) {
            const std::string next = multiply(elements[v], letter_values[l]).encode();
            const auto it = index.find(next);
            if (it != index.end())
                out.slots[v * alphabet.letter_count() + l] = it->second;
            else
                outside.insert(next);
        }
    }
    out.outer = outside.size();
    return out;
}

}  // namespace

Automaton ball(unsigned radius, const GenAlphabet& alphabet)
{
    if (!alphabet.has_values()) throw PreconditionError("ball needs an alphabet bound to group elements");
    std::vector<FElement> elements{FElement{}};
    std::vector<std::string> keys{FElement{}.encode()};
    std::unordered_map<std::string, std::size_t> seen{{keys.front(), 0}};
    std::size_t layer_begin = 0;
    for (unsigned r = 0; r < radius; ++r) {
        const std::size_t layer_end = elements.size();
        for (std::size_t v = layer_begin; v < layer_end; ++v) {
            for (LetterId l = 0; l < alphabet.letter_count(); ++l) {
                FElement next = multiply(elements[v], alphabet.letter_value(l));
                std::string key = next.encode();
                if (seen.emplace(key, elements.size()).second) {
                    elements.push_back(std::move(next));
                    keys.push_back(std::move(key));
                }
            }
        }
        layer_begin = layer_end;
    }
    auto closure = close_under_letters(elements, keys, alphabet);
    return Automaton(alphabet, std::move(keys), std::move(closure.slots), closure.outer);
}

Automaton induced_subgraph(std::span<const std::string> keys, const GenAlphabet& alphabet)
{
    if (!alphabet.has_values()) throw PreconditionError("induced subgraph needs an alphabet bound to group elements");
    std::vector<FElement> elements;
    std::vector<std::string> canonical;
    std::set<std::string> seen;
    for (const auto& key : keys) {
        FElement g = FElement::decode(key);
        std::string c = g.encode();
        if (!seen.insert(c).second) continue;
        elements.push_back(std::move(g));
        canonical.push_back(std::move(c));
    }
    auto closure = close_under_letters(elements, canonical, alphabet);
    return Automaton(alphabet, std::move(canonical), std::move(closure.slots), closure.outer);
}

nlohmann::json automaton_to_json(const Automaton& automaton)
{
    const GenAlphabet& alphabet = automaton.alphabet();
    nlohmann::json doc;
    doc["alphabet"] = alphabet.symbols();
    nlohmann::json values = nlohmann::json::object();
    for (std::size_t i = 0; i < alphabet.rank(); ++i)
        if (alphabet.value(i)) values[alphabet.symbol(i)] = alphabet.value(i)->encode();
    doc["values"] = std::move(values);
    doc["vertices"] = automaton.keys();
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t v = 0; v < automaton.size(); ++v)
        for (LetterId l = 0; l < automaton.letter_count(); l += 2) {
            const std::size_t u = automaton.target(v, l);
            if (u != kOutside) edges.push_back({automaton.key(v), alphabet.symbol(symbol_of(l)), automaton.key(u)});
        }
    doc["edges"] = std::move(edges);
    return doc;
}

Automaton automaton_from_json(const nlohmann::json& doc)
{
    try {
        const auto symbols = doc.at("alphabet").get<std::vector<std::string>>();
        std::vector<std::optional<FElement>> values(symbols.size());
        if (doc.contains("values")) {
            for (const auto& [sym, text] : doc.at("values").items()) {
                const auto it = std::find(symbols.begin(), symbols.end(), sym);
                if (it == symbols.end()) throw ParseError("value for unknown symbol '" + sym + "'");
                values[static_cast<std::size_t>(it - symbols.begin())] = FElement::decode(text.get<std::string>());
            }
        }
        GenAlphabet alphabet(symbols, values);
        auto keys = doc.at("vertices").get<std::vector<std::string>>();
        const std::string mode = doc.value("edge_mode", std::string("pairs"));
        if (mode != "pairs" && mode != "directed") throw ParseError("edge_mode must be 'pairs' or 'directed'");
        const bool directed = mode == "directed";

        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (!index.emplace(keys[i], i).second) throw DuplicateSlot("duplicate vertex key '" + keys[i] + "'");
        const std::size_t width = alphabet.letter_count();
        std::vector<std::size_t> slots(keys.size() * width, kOutside);
        auto lookup = [&](const std::string& key) {
            const auto it = index.find(key);
            if (it == index.end()) throw ParseError("edge references unknown vertex '" + key + "'");
            return it->second;
        };
        for (const auto& edge : doc.at("edges")) {
            if (!edge.is_array() || edge.size() != 3) throw ParseError("edge must be [from, letter, to]");
            const std::size_t u = lookup(edge[0].get<std::string>());
            const std::size_t v = lookup(edge[2].get<std::string>());
            const std::string name = edge[1].get<std::string>();
            const auto letter = alphabet.find_letter(name);
            if (!letter) throw ParseError("edge uses unknown letter '" + name + "'");
            std::size_t& slot = slots[u * width + *letter];
            if (slot != kOutside && slot != v)
                throw DuplicateSlot("slot (" + keys[u] + ", " + name + ") assigned twice");
            slot = v;
            if (directed) continue;
            std::size_t& back = slots[v * width + inverse_letter(*letter)];
            if (back != kOutside && back != u)
                throw SerreViolation("edge (" + keys[u] + ", " + name + ", " + keys[v] +
                                     ") conflicts with an existing inverse slot");
            back = u;
        }

        bool ambient = alphabet.has_values();
        std::vector<std::string> canonical;
        if (ambient) {
            try {
                for (const auto& k : keys) canonical.push_back(FElement::decode(k).encode());
                ambient = canonical == keys;
            } catch (const ParseError&) {
                ambient = false;
            }
        }
        if (!ambient) return Automaton(std::move(alphabet), std::move(keys), std::move(slots));

        Automaton induced = induced_subgraph(keys, alphabet);
        Automaton listed(alphabet, keys, std::move(slots), induced.outer_boundary());
        if (!(listed == induced)) throw ParseError("edges do not match the induced Cayley subgraph of the vertices");
        return induced;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed automaton file: ") + e.what());
    }
}

void save_automaton(const Automaton& automaton, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << automaton_to_json(automaton).dump(2) << '\n';
}

Automaton load_automaton(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return automaton_from_json(doc);
}

nlohmann::json report_to_json(const BoundaryReport& report, const GenAlphabet& alphabet)
{
    nlohmann::json doc;
    doc["rank"] = report.rank;
    doc["vertices"] = report.vertices;
    doc["inner_boundary"] = report.inner_boundary;
    doc["outer_boundary"] = report.outer_boundary ? nlohmann::json(*report.outer_boundary) : nlohmann::json();
    doc["cheeger_boundary"] = report.cheeger_boundary;
    nlohmann::json nu = nlohmann::json::object();
    for (LetterId l = 0; l < report.nu.size(); ++l) nu[alphabet.letter_name(l)] = report.nu[l];
    doc["nu"] = std::move(nu);
    doc["delta"] = to_fraction_string(report.density);
    doc["iota"] = to_fraction_string(report.isoperimetric);
    doc["delta_decimal"] = to_decimal(report.density);
    doc["iota_decimal"] = to_decimal(report.isoperimetric);
    return doc;
}

std::string report_to_csv(const BoundaryReport& report, const GenAlphabet& alphabet)
{
    std::ostringstream out;
    out << "letter,nu\n";
    for (LetterId l = 0; l < report.nu.size(); ++l) out << alphabet.letter_name(l) << ',' << report.nu[l] << '\n';
    return out.str();
}

}  // namespace fscheme
