#include "fscheme/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fscheme/automaton.hpp"
#include "fscheme/counting.hpp"
#include "fscheme/errors.hpp"
#include "fscheme/evac.hpp"
#include "fscheme/forests.hpp"

namespace fscheme::cli {

namespace {

struct Options {
    std::string out;
    std::string format = "json";
    std::size_t budget = kDefaultBudget;
    unsigned threads = 1;
    bool no_timestamp = false;

    unsigned radius = 0;
    std::string alphabet = "x0,x1";
    std::size_t n = 1;
    int k = 0;
    std::string mode = "count";

    int k_min = 1, k_max = 4;
    std::size_t n_min = 2, n_max = 50, n_step = 1;
    std::vector<std::string> alphabets;
    bool no_exact = false;

    std::string automaton_path;
    std::string certificate_path;
    unsigned K = 1;
    bool relabel = false;
};

struct Infeasible : Error {
    using Error::Error;
};

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream out;
    out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void emit(const Options& opt, const std::string& text)
{
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out);
    if (!file) throw Error("cannot write " + opt.out);
    file << text;
}

void emit_json(const Options& opt, nlohmann::json doc)
{
    if (!opt.no_timestamp) doc["timestamp"] = timestamp();
    emit(opt, doc.dump(2) + "\n");
}

void require_json(const Options& opt, const std::string& command)
{
    if (opt.format != "json") throw PreconditionError(command + " supports only --format=json");
}

void emit_automaton(const Options& opt, const Automaton& automaton)
{
    const auto report = boundary_report(automaton);
    if (opt.format == "csv") {
        emit(opt, report_to_csv(report, automaton.alphabet()));
        return;
    }
    auto doc = automaton_to_json(automaton);
    doc["report"] = report_to_json(report, automaton.alphabet());
    emit_json(opt, std::move(doc));
}

bool is_symmetric_alphabet(const GenAlphabet& alphabet)
{
    std::vector<std::string> bases;
    for (std::size_t i = 0; i < alphabet.rank(); ++i) bases.push_back(alphabet.base(i));
    std::sort(bases.begin(), bases.end());
    return bases == std::vector<std::string>{"x0", "x1", "xb1"};
}

// One sweep row as ordered (column, value) cells.
using Row = std::vector<std::pair<std::string, std::string>>;

Row density_row(const CountTable& table, std::size_t n, const GenAlphabet& alphabet, bool exact)
{
    const DensityRecord rec = density_report(table, n, alphabet);
    Row row{{"n", std::to_string(n)}, {"k", std::to_string(rec.k)}, {"alphabet", rec.alphabet}};
    if (exact) {
        row.emplace_back("size", rec.size.get_str());
        for (std::size_t i = 0; i < rec.letters.size(); ++i) row.emplace_back("nu_" + rec.letters[i], rec.nu[i].get_str());
    }
    auto both = [&](const std::string& name, const Rational& value) {
        if (exact) row.emplace_back(name, to_fraction_string(value));
        row.emplace_back(name + "_decimal", to_decimal(value));
    };
    both("delta", rec.density);
    both("iota", rec.isoperimetric);
    both("p", rec.p);
    both("xi", rec.xi);
    if (is_symmetric_alphabet(alphabet) && rec.k >= 1) {
        both("trimmed", trimmed_formula(rec.density, rec.p));
    } else {
        if (exact) row.emplace_back("trimmed", "");
        row.emplace_back("trimmed_decimal", "");
    }
    if (n >= 2) {
        both("xi_diff", xi_estimate(table, n).difference);
    } else {
        if (exact) row.emplace_back("xi_diff", "");
        row.emplace_back("xi_diff_decimal", "");
    }
    return row;
}

std::string csv_escape(const std::string& cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

std::string rows_to_csv(const std::vector<Row>& rows)
{
    std::vector<std::string> columns;
    for (const auto& row : rows)
        for (const auto& [name, value] : row)
            if (std::find(columns.begin(), columns.end(), name) == columns.end()) columns.push_back(name);
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ",";
            const auto it = std::find_if(row.begin(), row.end(), [&](const auto& cell) { return cell.first == columns[i]; });
            if (it != row.end()) out << csv_escape(it->second);
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::json row_to_json(const Row& row)
{
    nlohmann::ordered_json ordered;
    for (const auto& [name, value] : row) {
        if (name == "n" || name == "k")
            ordered[name] = std::stol(value);
        else if (value.empty())
            ordered[name] = nullptr;
        else
            ordered[name] = value;
    }
    return nlohmann::json::parse(ordered.dump());
}

int cmd_ball(const Options& opt)
{
    emit_automaton(opt, ball(opt.radius, GenAlphabet::parse(opt.alphabet)));
    return kExitOk;
}

int cmd_bb(const Options& opt)
{
    const GenAlphabet alphabet = GenAlphabet::parse(opt.alphabet);
    if (opt.k < 0) throw PreconditionError("k must be >= 0");
    if (opt.n < 1) throw PreconditionError("n must be >= 1");
    if (opt.mode == "enumerate") {
        emit_automaton(opt, bb_automaton(opt.n, opt.k, alphabet, opt.budget));
        return kExitOk;
    }
    const CountTable table(opt.k, opt.n);
    const Row row = density_row(table, opt.n, alphabet, true);
    if (opt.format == "csv")
        emit(opt, rows_to_csv({row}));
    else
        emit_json(opt, row_to_json(row));
    return kExitOk;
}

int cmd_sweep(const Options& opt)
{
    if (opt.k_min < 0 || opt.k_max < opt.k_min) throw PreconditionError("need 0 <= k-min <= k-max");
    if (opt.n_min < 1 || opt.n_max < opt.n_min || opt.n_step < 1) throw PreconditionError("need 1 <= n-min <= n-max and n-step >= 1");
    std::vector<GenAlphabet> alphabets;
    for (const auto& spec : opt.alphabets.empty() ? std::vector<std::string>{"x0,x1"} : opt.alphabets)
        alphabets.push_back(GenAlphabet::parse(spec));

    const std::size_t count = static_cast<std::size_t>(opt.k_max - opt.k_min + 1);
    std::vector<std::vector<Row>> per_k(count);
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                const CountTable table(opt.k_min + static_cast<int>(i), opt.n_max);
                for (std::size_t n = opt.n_min; n <= opt.n_max; n += opt.n_step)
                    for (const auto& alphabet : alphabets) per_k[i].push_back(density_row(table, n, alphabet, !opt.no_exact));
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1U, opt.threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    std::vector<Row> rows;
    for (auto& block : per_k) rows.insert(rows.end(), block.begin(), block.end());
    if (opt.format == "csv") {
        emit(opt, rows_to_csv(rows));
        return kExitOk;
    }
    nlohmann::json doc;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : rows) doc["rows"].push_back(row_to_json(row));
    emit_json(opt, std::move(doc));
    return kExitOk;
}

int cmd_evac(const Options& opt)
{
    require_json(opt, "evac");
    const Automaton y = load_automaton(opt.automaton_path);
    const SolveResult result = solve_with_constant(y, opt.K);
    nlohmann::json doc;
    doc["exists"] = result.scheme.has_value();
    doc["K"] = opt.K;
    doc["flow_value"] = result.flow_value;
    doc["demand"] = result.demand;
    if (result.scheme) {
        validate_scheme(y, *result.scheme);
        doc["paths"] = scheme_to_json(y, *result.scheme)["paths"];
        if (opt.relabel) {
            const auto relabeled = conjugate_relabel(y, *result.scheme);
            validate_multiset_capacity(y, *result.scheme, relabeled);
            doc["relabeled"] = relabeled_to_json(relabeled);
        }
    } else {
        doc["witness"] = witness_to_json(y, *result.witness);
    }
    emit_json(opt, std::move(doc));
    return kExitOk;
}

int cmd_certify(const Options& opt)
{
    require_json(opt, "certify");
    const Automaton y = load_automaton(opt.automaton_path);
    std::ifstream in(opt.certificate_path);
    if (!in) throw ParseError("cannot read " + opt.certificate_path);
    nlohmann::json cert;
    try {
        in >> cert;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(opt.certificate_path + ": " + e.what());
    }
    const auto verdict = verify_flow_certificate(y, flow_from_json(cert));
    nlohmann::json doc;
    doc["accepted"] = verdict.accepted;
    doc["problems"] = verdict.problems;
    doc["bound"] = to_fraction_string(verdict.bound);
    doc["bound_decimal"] = to_decimal(verdict.bound);
    doc["eps_volume"] = to_fraction_string(verdict.eps_volume);
    doc["cheeger_capacity"] = to_fraction_string(verdict.cheeger_capacity);
    doc["inequality_holds"] = verdict.inequality_holds;
    emit_json(opt, std::move(doc));
    if (!verdict.accepted) throw Infeasible("certificate rejected");
    return kExitOk;
}

int cmd_selftest(const Options& opt)
{
    std::vector<std::pair<std::string, bool>> checks;
    auto check = [&](const std::string& name, auto&& body) {
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception&) {
            ok = false;
        }
        checks.emplace_back(name, ok);
    };
    check("group relations", [] {
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned j = i + 1; j < 4; ++j)
                if (multiply(generator_x(j), generator_x(i)) != multiply(generator_x(i), generator_x(j + 1))) return false;
        return true;
    });
    check("counts match enumeration", [] {
        const GenAlphabet alphabet = GenAlphabet::parse("x0,x1,xb1,x2");
        for (int k = 0; k <= 2; ++k)
            for (std::size_t n = 1; n <= 5; ++n) {
                const auto report = boundary_report(bb_automaton(n, k, alphabet));
                if (bb_count(n, k) != report.vertices) return false;
                const auto nu = nu_counts(n, k, alphabet);
                for (LetterId l = 0; l < alphabet.letter_count(); ++l)
                    if (nu[l] != report.nu[l]) return false;
            }
        return true;
    });
    check("pure scheme on ball(1)", [] {
        const Automaton y = ball(1, GenAlphabet::parse("x0,x1"));
        const auto result = solve_pure(y);
        if (!result.scheme) return false;
        validate_scheme(y, *result.scheme);
        return true;
    });
    check("bound 517/518", [] { return isoperimetric_bound(Rational(1, 260)).closed_form == Rational(517, 518); });

    bool all = true;
    std::ostringstream out;
    for (const auto& [name, ok] : checks) {
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
        all = all && ok;
    }
    emit(opt, out.str());
    return all ? kExitOk : 1;
}

}  // namespace

int run(int argc, char** argv)
{
    Options opt;
    CLI::App app{"Evacuation schemes and Brown-Belk set statistics for Thompson's group F"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", opt.out, "Write output to this file instead of stdout");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--budget", opt.budget, "Maximum number of forests to enumerate");
    app.add_option("--threads", opt.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--no-timestamp", opt.no_timestamp, "Omit the timestamp field from JSON output");

    auto* ball_cmd = app.add_subcommand("ball", "Ball of radius r in the Cayley graph with its boundary report");
    ball_cmd->add_option("-r,--radius", opt.radius)->required();
    ball_cmd->add_option("-a,--alphabet", opt.alphabet, "Generators, e.g. x0,x1");

    auto* bb_cmd = app.add_subcommand("bb", "Brown-Belk set BB(n, k): automaton or exact counts");
    bb_cmd->add_option("-n", opt.n)->required();
    bb_cmd->add_option("-k", opt.k)->required();
    bb_cmd->add_option("-a,--alphabet", opt.alphabet);
    bb_cmd->add_option("--mode", opt.mode)->check(CLI::IsMember({"enumerate", "count"}));

    auto* sweep_cmd = app.add_subcommand("sweep", "Exact density, xi and p over ranges of k and n");
    sweep_cmd->add_option("--k-min", opt.k_min);
    sweep_cmd->add_option("--k-max", opt.k_max);
    sweep_cmd->add_option("--n-min", opt.n_min);
    sweep_cmd->add_option("--n-max", opt.n_max);
    sweep_cmd->add_option("--n-step", opt.n_step);
    sweep_cmd->add_option("-a,--alphabet", opt.alphabets, "Repeat for several alphabets");
    sweep_cmd->add_flag("--no-exact", opt.no_exact, "Only decimal columns");

    auto* evac_cmd = app.add_subcommand("evac", "Evacuation scheme or witness for an automaton file");
    evac_cmd->add_option("automaton", opt.automaton_path)->required();
    evac_cmd->add_option("-K", opt.K)->check(CLI::PositiveNumber);
    evac_cmd->add_flag("--relabel", opt.relabel, "Also emit the conjugated scheme over x1,xb1,x0,x0");

    auto* certify_cmd = app.add_subcommand("certify", "Verify a flow certificate");
    certify_cmd->add_option("automaton", opt.automaton_path)->required();
    certify_cmd->add_option("certificate", opt.certificate_path)->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "Quick internal consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (ball_cmd->parsed()) return cmd_ball(opt);
        if (bb_cmd->parsed()) return cmd_bb(opt);
        if (sweep_cmd->parsed()) return cmd_sweep(opt);
        if (evac_cmd->parsed()) return cmd_evac(opt);
        if (certify_cmd->parsed()) return cmd_certify(opt);
        if (selftest_cmd->parsed()) return cmd_selftest(opt);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Infeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace fscheme::cli
