#include "fscheme/evac.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

#include "fscheme/errors.hpp"

namespace fscheme {

namespace {

class Dinic {
public:
    explicit Dinic(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

    std::size_t add(std::size_t u, std::size_t v, std::int64_t cap, std::int64_t back_cap = 0)
    {
        const std::size_t id = arcs_.size();
        arcs_.push_back({v, cap, cap});
        arcs_.push_back({u, back_cap, back_cap});
        adj_[u].push_back(id);
        adj_[v].push_back(id + 1);
        return id;
    }

    /// Net flow along arc `id` in its own direction.
    std::int64_t flow(std::size_t id) const { return arcs_[id].initial - arcs_[id].cap; }

    std::int64_t max_flow(std::size_t s, std::size_t t)
    {
        std::int64_t total = 0;
        while (levels(s, t)) {
            std::fill(next_.begin(), next_.end(), 0);
            while (const std::int64_t pushed = push(s, t, std::numeric_limits<std::int64_t>::max())) total += pushed;
        }
        return total;
    }

    std::vector<bool> reachable(std::size_t s) const
    {
        std::vector<bool> seen(adj_.size(), false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t id : adj_[u]) {
                const Arc& a = arcs_[id];
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    stack.push_back(a.to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        std::int64_t cap;
        std::int64_t initial;
    };

    bool levels(std::size_t s, std::size_t t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> queue;
        level_[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop();
            for (std::size_t id : adj_[u]) {
                const Arc& a = arcs_[id];
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[u] + 1;
                    queue.push(a.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t push(std::size_t u, std::size_t t, std::int64_t limit)
    {
        if (u == t) return limit;
        for (std::size_t& i = next_[u]; i < adj_[u].size(); ++i) {
            const std::size_t id = adj_[u][i];
            Arc& a = arcs_[id];
            if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
            if (const std::int64_t got = push(a.to, t, std::min(limit, a.cap))) {
                a.cap -= got;
                arcs_[id ^ 1U].cap += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
};

std::vector<std::size_t> key_order(const Automaton& y)
{
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y.key(a) < y.key(b); });
    return order;
}

std::vector<bool> membership(std::size_t n, std::span<const std::size_t> vertices)
{
    std::vector<bool> in(n, false);
    for (std::size_t v : vertices) {
        if (v >= n) throw PreconditionError("vertex index out of range");
        in[v] = true;
    }
    return in;
}

std::vector<bool> inner_boundary(const Automaton& y)
{
    std::vector<bool> out(y.size());
    for (std::size_t v = 0; v < y.size(); ++v) out[v] = y.on_inner_boundary(v);
    return out;
}

// Walks from `start` consuming one unit of `remaining` per step until a sink.
// A walk that closes a cycle drops the cycle; its units stay consumed.
Path walk(const Automaton& y, std::size_t start, const std::vector<bool>& sink,
          const std::function<std::optional<Step>(std::size_t)>& take, std::vector<long>& position)
{
    Path path;
    std::vector<std::size_t> visited{start};
    position[start] = 0;
    std::size_t x = start;
    while (!sink[x]) {
        const auto step = take(x);
        if (!step) throw std::logic_error("walk stuck at vertex " + y.key(x));
        const std::size_t next = step->to;
        if (position[next] >= 0) {
            const auto keep = static_cast<std::size_t>(position[next]);
            for (std::size_t i = keep; i < path.size(); ++i) position[path[i].to] = -1;
            position[next] = static_cast<long>(keep);
            path.resize(keep);
        } else {
            path.push_back(*step);
            position[next] = static_cast<long>(path.size());
            visited.push_back(next);
        }
        x = next;
    }
    for (std::size_t v : visited) position[v] = -1;
    return path;
}

}  // namespace

std::vector<std::size_t> edge_usage(const Automaton& y, const EvacScheme& scheme)
{
    std::vector<std::size_t> usage(y.size() * y.letter_count(), 0);
    for (const auto& path : scheme.paths)
        for (const Step& s : path) ++usage.at(s.from * y.letter_count() + s.letter);
    return usage;
}

void validate_scheme(const Automaton& y, const EvacScheme& scheme, std::optional<std::span<const std::size_t>> sinks)
{
    if (scheme.K < 1) throw PreconditionError("scheme constant K must be >= 1");
    if (scheme.paths.size() != y.size())
        throw PreconditionError("scheme has " + std::to_string(scheme.paths.size()) + " paths for " +
                                std::to_string(y.size()) + " vertices");
    std::vector<bool> target;
    if (sinks) {
        target = membership(y.size(), *sinks);
    } else {
        target = inner_boundary(y);
    }
    const std::size_t width = y.letter_count();
    for (std::size_t v = 0; v < y.size(); ++v) {
        const Path& path = scheme.paths[v];
        std::size_t at = v;
        for (const Step& s : path) {
            if (s.from != at) throw PreconditionError("path of " + y.key(v) + " is not contiguous");
            if (s.letter >= width || s.from >= y.size() || y.target(s.from, s.letter) != s.to)
                throw PreconditionError("path of " + y.key(v) + " uses a missing edge");
            at = s.to;
        }
        if (!target[at]) throw PreconditionError("path of " + y.key(v) + " does not end on a sink");
        if (path.empty() && !target[v]) throw PreconditionError("internal vertex " + y.key(v) + " has an empty path");
        if (scheme.K == 1) {
            std::set<std::size_t> seen{v};
            for (const Step& s : path)
                if (!seen.insert(s.to).second) throw PreconditionError("path of " + y.key(v) + " is not simple");
        }
    }
    const auto usage = edge_usage(y, scheme);
    for (std::size_t v = 0; v < y.size(); ++v)
        for (LetterId l = 0; l < width; ++l) {
            const std::size_t used = usage[v * width + l];
            if (used > scheme.K)
                throw PreconditionError("edge (" + y.key(v) + ", " + y.alphabet().letter_name(l) + ") used " +
                                        std::to_string(used) + " times");
            if (scheme.K == 1 && used > 0) {
                const std::size_t w = y.target(v, l);
                if (usage[w * width + inverse_letter(l)] > 0)
                    throw PreconditionError("edge (" + y.key(v) + ", " + y.alphabet().letter_name(l) +
                                            ") used together with its inverse");
            }
        }
}

std::size_t cheeger_boundary(const Automaton& y, std::span<const std::size_t> vertices)
{
    const auto in = membership(y.size(), vertices);
    std::size_t count = 0;
    for (std::size_t v = 0; v < y.size(); ++v) {
        if (!in[v]) continue;
        for (LetterId l = 0; l < y.letter_count(); ++l) {
            const std::size_t w = y.target(v, l);
            if (w == kOutside || !in[w]) ++count;
        }
    }
    return count;
}

SolveResult solve_with_constant(const Automaton& y, unsigned K)
{
    if (K < 1) throw PreconditionError("K must be >= 1");
    const std::size_t n = y.size();
    const std::size_t width = y.letter_count();
    const auto boundary = inner_boundary(y);
    const auto boundary_count = static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), true));
    if (boundary_count == 0) throw NoEvacuationTarget("no evacuation target: automaton has no boundary slots");

    const std::size_t source = n, sink = n + 1;
    Dinic net(n + 2);
    const std::int64_t unbounded = static_cast<std::int64_t>(n) + 1;
    for (std::size_t v = 0; v < n; ++v) {
        if (boundary[v])
            net.add(v, sink, unbounded);
        else
            net.add(source, v, 1);
    }
    struct GeoEdge {
        std::size_t from;
        LetterId letter;
        std::size_t to;
        std::size_t arc;
    };
    std::vector<GeoEdge> edges;
    for (std::size_t v = 0; v < n; ++v)
        for (LetterId l = 0; l < width; l += 2) {
            const std::size_t w = y.target(v, l);
            if (w == kOutside || w == v) continue;
            edges.push_back({v, l, w, net.add(v, w, K, K)});
        }

    const std::size_t internal = n - boundary_count;
    const auto flow = static_cast<std::size_t>(net.max_flow(source, sink));

    SolveResult result;
    result.demand = n;
    result.flow_value = flow + boundary_count;

    if (flow < internal) {
        const auto seen = net.reachable(source);
        Witness witness;
        for (std::size_t v = 0; v < n; ++v)
            if (seen[v]) witness.vertices.push_back(v);
        witness.cheeger = cheeger_boundary(y, witness.vertices);
        result.witness = std::move(witness);
        return result;
    }

    std::vector<std::int64_t> remaining(n * width, 0);
    for (const auto& e : edges) {
        const std::int64_t f = net.flow(e.arc);
        if (f > 0) remaining[e.from * width + e.letter] = f;
        if (f < 0) remaining[e.to * width + inverse_letter(e.letter)] = -f;
    }
    auto take = [&](std::size_t x) -> std::optional<Step> {
        for (LetterId l = 0; l < width; ++l) {
            std::int64_t& r = remaining[x * width + l];
            if (r > 0) {
                --r;
                return Step{x, l, y.target(x, l)};
            }
        }
        return std::nullopt;
    };

    EvacScheme scheme;
    scheme.K = K;
    scheme.paths.resize(n);
    std::vector<long> position(n, -1);
    for (std::size_t v : key_order(y))
        if (!boundary[v]) scheme.paths[v] = walk(y, v, boundary, take, position);
    result.scheme = std::move(scheme);
    return result;
}

SolveResult solve_pure(const Automaton& y) { return solve_with_constant(y, 1); }

HallResult hall_oracle(const Automaton& y, unsigned K)
{
    std::vector<std::size_t> internal;
    for (std::size_t v = 0; v < y.size(); ++v)
        if (!y.on_inner_boundary(v)) internal.push_back(v);
    const std::size_t count = internal.size();
    if (count > 20) throw PreconditionError("hall oracle limited to 20 internal vertices, got " + std::to_string(count));

    std::vector<long> local(y.size(), -1);
    for (std::size_t i = 0; i < count; ++i) local[internal[i]] = static_cast<long>(i);
    const long width = static_cast<long>(y.letter_count());
    // links[i][j]: slots of internal[i] pointing at internal[j]
    std::vector<std::vector<long>> links(count, std::vector<long>(count, 0));
    for (std::size_t i = 0; i < count; ++i)
        for (LetterId l = 0; l < y.letter_count(); ++l) {
            const std::size_t w = y.target(internal[i], l);
            if (w != kOutside && local[w] >= 0) ++links[i][static_cast<std::size_t>(local[w])];
        }

    // Gray-code walk over subsets; inside[i] = sum of links[i][j] over j in Z
    std::vector<long> inside(count, 0);
    std::vector<bool> in(count, false);
    long cheeger = 0, size = 0;
    const std::uint64_t total = std::uint64_t{1} << count;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto b = static_cast<std::size_t>(std::countr_zero(step));
        if (!in[b]) {
            cheeger += width - links[b][b] - 2 * inside[b];
            in[b] = true;
            ++size;
            for (std::size_t i = 0; i < count; ++i) inside[i] += links[i][b];
        } else {
            for (std::size_t i = 0; i < count; ++i) inside[i] -= links[i][b];
            in[b] = false;
            --size;
            cheeger -= width - links[b][b] - 2 * inside[b];
        }
        if (static_cast<long>(K) * cheeger < size) {
            Witness witness;
            for (std::size_t i = 0; i < count; ++i)
                if (in[i]) witness.vertices.push_back(internal[i]);
            witness.cheeger = static_cast<std::size_t>(cheeger);
            return {false, std::move(witness)};
        }
    }
    return {true, std::nullopt};
}

PsiRelation scheme_to_relation(const Automaton& y, const EvacScheme& scheme)
{
    PsiRelation rel;
    rel.index.assign(y.size(), 0);
    for (const auto& path : scheme.paths)
        for (const Step& s : path) {
            rel.pairs.push_back({s.to, inverse_letter(s.letter), s.from});
            ++rel.index.at(s.from);
            --rel.index.at(s.to);
        }
    return rel;
}

EvacScheme relation_to_scheme(const Automaton& y, std::span<const PsiPair> pairs, std::span<const std::size_t> sinks)
{
    const std::size_t n = y.size();
    const auto sink = membership(n, sinks);
    std::vector<long> index(n, 0);
    // escape[v]: edges from v to the images it was paired with, in input order
    std::vector<std::vector<Step>> escape(n);
    for (const PsiPair& p : pairs) {
        if (p.from >= n || p.to >= n || p.letter >= y.letter_count() || y.target(p.from, p.letter) != p.to)
            throw PreconditionError("pair does not span an edge of the automaton");
        escape[p.to].push_back({p.to, inverse_letter(p.letter), p.from});
        ++index[p.to];
        --index[p.from];
    }
    for (std::size_t v : key_order(y))
        if (!sink[v] && index[v] < 1)
            throw PreconditionError("vertex " + y.key(v) + " is not a sink and has index " + std::to_string(index[v]));

    std::vector<std::size_t> used(n, 0);
    auto take = [&](std::size_t x) -> std::optional<Step> {
        if (used[x] >= escape[x].size()) return std::nullopt;
        return escape[x][used[x]++];
    };
    EvacScheme scheme;
    scheme.paths.resize(n);
    std::vector<long> position(n, -1);
    for (std::size_t v : key_order(y))
        if (!sink[v]) scheme.paths[v] = walk(y, v, sink, take, position);
    const auto usage = edge_usage(y, scheme);
    scheme.K = 1;
    for (std::size_t u : usage) scheme.K = std::max(scheme.K, static_cast<unsigned>(u));
    return scheme;
}

namespace {

Rational rational_field(const nlohmann::json& value)
{
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    throw ParseError("expected a rational \"p/q\"");
}

}  // namespace

FlowAssignment flow_from_json(const nlohmann::json& doc)
{
    try {
        FlowAssignment out;
        out.C = rational_field(doc.at("C"));
        out.eps = rational_field(doc.at("eps"));
        if (doc.contains("flow"))
            for (const auto& entry : doc.at("flow")) {
                if (!entry.is_array() || entry.size() != 4) throw ParseError("flow entry must be [u, letter, v, value]");
                out.flow.push_back({entry[0].get<std::string>(), entry[1].get<std::string>(),
                                    entry[2].get<std::string>(), rational_field(entry[3])});
            }
        if (doc.contains("boundary_inflows"))
            for (const auto& [key, value] : doc.at("boundary_inflows").items()) out.boundary_inflow[key] = rational_field(value);
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad certificate: ") + e.what());
    }
}

nlohmann::json flow_to_json(const FlowAssignment& flow)
{
    nlohmann::json doc;
    doc["C"] = to_fraction_string(flow.C);
    doc["eps"] = to_fraction_string(flow.eps);
    doc["flow"] = nlohmann::json::array();
    for (const auto& e : flow.flow) doc["flow"].push_back({e.from, e.letter, e.to, to_fraction_string(e.value)});
    doc["boundary_inflows"] = nlohmann::json::object();
    for (const auto& [key, value] : flow.boundary_inflow) doc["boundary_inflows"][key] = to_fraction_string(value);
    return doc;
}

CertificateVerdict verify_flow_certificate(const Automaton& y, const FlowAssignment& flow)
{
    CertificateVerdict verdict;
    auto& problems = verdict.problems;
    if (flow.C <= 0) problems.push_back("C must be positive");
    if (flow.eps <= 0) problems.push_back("eps must be positive");

    const std::size_t width = y.letter_count();
    std::vector<Rational> value(y.size() * width);
    std::vector<bool> given(y.size() * width, false);
    for (const auto& e : flow.flow) {
        const auto u = y.find(e.from);
        const auto v = y.find(e.to);
        const auto l = y.alphabet().find_letter(e.letter);
        if (!u || !v || !l || y.target(*u, *l) != *v) {
            problems.push_back("no edge (" + e.from + ", " + e.letter + ", " + e.to + ")");
            continue;
        }
        const std::size_t slot = *u * width + *l;
        const std::size_t back = *v * width + inverse_letter(*l);
        if (given[slot] && value[slot] != e.value) {
            problems.push_back("conflicting values on (" + e.from + ", " + e.letter + ")");
            continue;
        }
        if (given[back] && value[back] != -e.value) {
            problems.push_back("antisymmetry violated on (" + e.from + ", " + e.letter + ", " + e.to + ")");
            continue;
        }
        given[slot] = true;
        value[slot] = e.value;
        if (!given[back]) value[back] = -e.value;
        if (abs(e.value) > flow.C)
            problems.push_back("|f| > C on (" + e.from + ", " + e.letter + ", " + e.to + ")");
    }

    std::vector<Rational> outside(y.size());
    for (const auto& [key, amount] : flow.boundary_inflow) {
        const auto v = y.find(key);
        if (!v) {
            problems.push_back("boundary inflow for unknown vertex " + key);
            continue;
        }
        const std::size_t slots = width - y.degree(*v);
        if (abs(amount) > flow.C * static_cast<unsigned long>(slots))
            problems.push_back("boundary inflow at " + key + " exceeds C per boundary slot");
        outside[*v] = amount;
    }

    for (std::size_t v = 0; v < y.size(); ++v) {
        Rational inflow = outside[v];
        for (LetterId l = 0; l < width; ++l)
            if (y.accepts(v, l)) inflow -= value[v * width + l];
        if (inflow < flow.eps)
            problems.push_back("inflow at " + y.key(v) + " is " + to_fraction_string(inflow) + " < eps");
    }

    const auto report = boundary_report(y);
    verdict.eps_volume = flow.eps * static_cast<unsigned long>(y.size());
    verdict.cheeger_capacity = flow.C * static_cast<unsigned long>(report.cheeger_boundary);
    verdict.inequality_holds = verdict.eps_volume <= verdict.cheeger_capacity;
    if (flow.C > 0) {
        verdict.bound = flow.eps / flow.C;
        verdict.bound.canonicalize();
    }
    verdict.accepted = problems.empty();
    return verdict;
}

namespace {

class Conjugation {
public:
    explicit Conjugation(const Automaton& y) : y_(y)
    {
        for (std::size_t i = 0; i < y.alphabet().rank(); ++i) {
            const std::string base = y.alphabet().base(i);
            if (base != "x0" && base != "x1" && base != "x2")
                throw PreconditionError("conjugate_relabel needs an alphabet over {x0, x1, x2}, got " +
                                        y.alphabet().symbol(i));
            if (base == "x0" && !x0_) x0_ = 2 * i;
        }
        if (y.alphabet().has_values()) {
            try {
                for (const auto& key : y.keys()) elements_.push_back(FElement::decode(key));
            } catch (const ParseError&) {
                elements_.clear();
            }
        }
    }

    std::string phi(std::size_t v) const
    {
        if (!elements_.empty()) return multiply(multiply(x0(), elements_[v]), invert(x0())).encode();
        return "phi(" + y_.key(v) + ")";
    }

    // phi(g x0) = x0 g
    std::string shifted(std::size_t v) const
    {
        if (!elements_.empty()) return multiply(x0(), elements_[v]).encode();
        if (x0_ && y_.accepts(v, *x0_)) return phi(y_.target(v, *x0_));
        return "phi(" + y_.key(v) + ")x0";
    }

private:
    static const FElement& x0()
    {
        static const FElement value = generator_x(0);
        return value;
    }

    const Automaton& y_;
    std::optional<LetterId> x0_;
    std::vector<FElement> elements_;
};

std::string with_sign(const std::string& symbol, bool inverse) { return inverse ? symbol + "^-1" : symbol; }

std::pair<std::string, std::string> unordered(const std::string& a, const std::string& b)
{
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

RelabeledScheme conjugate_relabel(const Automaton& y, const EvacScheme& scheme)
{
    const Conjugation phi(y);
    if (scheme.K != 1) throw PreconditionError("conjugate_relabel needs a pure scheme");
    validate_scheme(y, scheme);

    RelabeledScheme out{GenAlphabet::parse("x1,xb1,x0,x0"), {}, {}};
    std::map<std::pair<std::string, std::string>, std::size_t> x0_uses;
    auto x0_step = [&](const std::string& from, const std::string& to, bool inverse) {
        const std::size_t copy = ++x0_uses[unordered(from, to)];
        const std::string symbol = copy == 1 ? "x0" : "x0_" + std::to_string(copy);
        return NamedStep{from, with_sign(symbol, inverse), to};
    };

    for (std::size_t v = 0; v < y.size(); ++v) {
        out.starts.push_back(phi.phi(v));
        std::vector<NamedStep> path;
        for (const Step& s : scheme.paths[v]) {
            const std::string base = y.alphabet().base(symbol_of(s.letter));
            const bool inverse = is_inverse_letter(s.letter);
            const std::string from = phi.phi(s.from), to = phi.phi(s.to);
            if (base == "x0") {
                path.push_back(x0_step(from, to, inverse));
            } else if (base == "x2") {
                path.push_back({from, with_sign("x1", inverse), to});
            } else if (!inverse) {
                const std::string mid = phi.shifted(s.from);
                path.push_back(x0_step(from, mid, false));
                path.push_back({mid, "xb1", to});
            } else {
                const std::string mid = phi.shifted(s.to);
                path.push_back({from, "xb1^-1", mid});
                path.push_back(x0_step(mid, to, true));
            }
        }
        out.paths.push_back(std::move(path));
    }
    return out;
}

MultisetUsage validate_multiset_capacity(const Automaton& y, const EvacScheme& scheme, const RelabeledScheme& relabeled)
{
    const Conjugation phi(y);
    if (relabeled.paths.size() != y.size() || relabeled.starts.size() != y.size())
        throw PreconditionError("relabeled scheme has the wrong number of paths");

    MultisetUsage usage;
    for (const auto& path : scheme.paths)
        for (const Step& s : path) ++usage.letters_in[y.alphabet().base(symbol_of(s.letter))];

    const GenAlphabet& alphabet = relabeled.alphabet;
    // (symbol, tail, head) of the positive orientation
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> per_symbol;
    std::map<std::pair<std::string, std::string>, std::size_t> per_x0_edge;
    for (std::size_t v = 0; v < y.size(); ++v) {
        if (relabeled.starts[v] != phi.phi(v)) throw PreconditionError("path " + std::to_string(v) + " starts at the wrong vertex");
        std::string at = relabeled.starts[v];
        for (const NamedStep& s : relabeled.paths[v]) {
            if (s.from != at) throw PreconditionError("relabeled path of " + y.key(v) + " is not contiguous");
            at = s.to;
            const auto l = alphabet.find_letter(s.letter);
            if (!l) throw PreconditionError("letter " + s.letter + " is not in the multiset alphabet");
            const std::size_t i = symbol_of(*l);
            const std::string base = alphabet.base(i);
            ++usage.letters_out[base];
            const auto oriented = is_inverse_letter(*l) ? std::make_tuple(alphabet.symbol(i), s.to, s.from)
                                                        : std::make_tuple(alphabet.symbol(i), s.from, s.to);
            if (++per_symbol[oriented] > 1)
                throw PreconditionError("edge " + s.from + " -" + s.letter + "-> " + s.to + " used twice");
            if (base == "x0" && ++per_x0_edge[unordered(s.from, s.to)] > 2)
                throw PreconditionError("x0 edge at " + s.from + " used more than twice");
        }
    }

    auto in = [&](const char* name) { return usage.letters_in.count(name) ? usage.letters_in.at(name) : 0; };
    auto out = [&](const char* name) { return usage.letters_out.count(name) ? usage.letters_out.at(name) : 0; };
    if (out("x0") != in("x0") + in("x1") || out("xb1") != in("x1") || out("x1") != in("x2"))
        throw PreconditionError("letter usage not conserved under relabeling");
    return usage;
}

nlohmann::json scheme_to_json(const Automaton& y, const EvacScheme& scheme)
{
    nlohmann::json doc;
    doc["K"] = scheme.K;
    doc["paths"] = nlohmann::json::object();
    for (std::size_t v = 0; v < scheme.paths.size(); ++v) {
        auto steps = nlohmann::json::array();
        for (const Step& s : scheme.paths[v])
            steps.push_back({y.key(s.from), y.alphabet().letter_name(s.letter), y.key(s.to)});
        doc["paths"][y.key(v)] = std::move(steps);
    }
    return doc;
}

EvacScheme scheme_from_json(const Automaton& y, const nlohmann::json& doc)
{
    try {
        EvacScheme scheme;
        const long K = doc.at("K").get<long>();
        if (K < 1) throw ParseError("scheme constant K must be >= 1");
        scheme.K = static_cast<unsigned>(K);
        scheme.paths.resize(y.size());
        std::vector<bool> seen(y.size(), false);
        for (const auto& [key, steps] : doc.at("paths").items()) {
            const auto v = y.find(key);
            if (!v) throw ParseError("scheme names unknown vertex " + key);
            seen[*v] = true;
            for (const auto& step : steps) {
                if (!step.is_array() || step.size() != 3) throw ParseError("scheme step must be [from, letter, to]");
                const auto from = y.find(step[0].get<std::string>());
                const auto to = y.find(step[2].get<std::string>());
                const auto l = y.alphabet().find_letter(step[1].get<std::string>());
                if (!from || !to || !l) throw ParseError("scheme step names an unknown vertex or letter");
                scheme.paths[*v].push_back({*from, *l, *to});
            }
        }
        for (std::size_t v = 0; v < y.size(); ++v)
            if (!seen[v]) throw ParseError("scheme has no path for " + y.key(v));
        return scheme;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad scheme: ") + e.what());
    }
}

nlohmann::json witness_to_json(const Automaton& y, const Witness& witness)
{
    std::vector<std::string> keys;
    for (std::size_t v : witness.vertices) keys.push_back(y.key(v));
    std::sort(keys.begin(), keys.end());
    return {{"Z", keys}, {"cheeger", witness.cheeger}};
}

nlohmann::json relabeled_to_json(const RelabeledScheme& scheme)
{
    nlohmann::json doc;
    doc["alphabet"] = scheme.alphabet.spec();
    doc["K"] = 1;
    doc["paths"] = nlohmann::json::object();
    for (std::size_t v = 0; v < scheme.paths.size(); ++v) {
        auto steps = nlohmann::json::array();
        for (const auto& s : scheme.paths[v]) steps.push_back({s.from, s.letter, s.to});
        doc["paths"][scheme.starts[v]] = std::move(steps);
    }
    return doc;
}

}  // namespace fscheme
