// trop1: command-line front end.
//
// Exit codes: 0 = yes (well-spaced, descends, configuration exists),
// 1 = no, 2 = invalid input or internal error.

#include "trop1/complex.hpp"
#include "trop1/descent.hpp"
#include "trop1/enumerate.hpp"
#include "trop1/instance.hpp"
#include "trop1/moduli.hpp"
#include "trop1/wellspaced.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trop1;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInvalid = 2;
constexpr std::string_view kCorpusPrefix = "corpus:";

/// A path, or "corpus:<name>" for a bundled example.
Instance load_instance(const std::string& where) {
    if (where.starts_with(kCorpusPrefix)) return corpus_instance(where.substr(kCorpusPrefix.size()));
    return parse_instance(where);
}

json load_json(const std::string& path) {
    if (path.starts_with(kCorpusPrefix)) return json::parse(corpus_text(path.substr(kCorpusPrefix.size())));
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": malformed JSON: " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json optional_rational(const std::optional<Rational>& value) {
    return value ? json(format_rational(*value)) : json(nullptr);
}

json line_json(const TropicalMap& map, const LineVerdict& line) {
    const auto& g = map.graph();
    json flags = json::array();
    for (const auto& f : line.flags) {
        flags.push_back({{"flag", f.name},
                         {"vertex", g.vertices()[f.base].id},
                         {"lambda", format_rational(f.lambda)},
                         {"slope", format_rational(f.slope)}});
    }
    return {{"well_spaced", line.well_spaced},
            {"speyer", line.speyer},
            {"circuit_moves", line.circuit_moves},
            {"constant", line.constant},
            {"radius", optional_rational(line.radius)},
            {"minimal_flags", line.minimal_flags},
            {"minimal_vertices", line.minimal_vertices},
            {"flags", flags}};
}

// --- check ---------------------------------------------------------------

struct CheckOptions {
    std::string file;
    std::vector<std::string> params;
    std::string chi;
    bool speyer = false;
    std::string report;
    std::string batch;
};

struct CheckResult {
    int code = kInvalid;
    std::string summary;
    json report;
};

CheckResult check_map(const std::string& label, const TropicalMap& map, const CheckOptions& opt) {
    CheckResult out;
    std::ostringstream text;
    json doc{{"instance", label}};
    bool verdict = false;
    if (!opt.chi.empty()) {
        const auto chi = parse_vector(opt.chi);
        if (chi.dim() != map.dim()) throw InvalidInput("--chi: expected " + std::to_string(map.dim()) + " coordinates");
        if (chi.is_zero()) throw InvalidInput("--chi: the character must be nonzero");
        const auto line = well_spaced_line(map, chi);
        verdict = opt.speyer ? line.speyer : line.well_spaced;
        doc["chi"] = to_json(chi);
        doc["line"] = line_json(map, line);
        text << label << ": chi " << chi.to_string() << (line.well_spaced ? " well-spaced" : " not well-spaced")
             << (line.speyer ? ", Speyer holds" : ", Speyer fails") << (line.constant ? " (constant near the circuit)" : "")
             << "\n";
    } else {
        const auto report = well_spacedness_report(map);
        const bool speyer = std::all_of(report.flats.begin(), report.flats.end(),
                                        [](const FlatVerdict& f) { return f.line.speyer; });
        verdict = opt.speyer ? speyer : report.well_spaced;
        json flats = json::array();
        for (const auto& f : report.flats) {
            auto entry = line_json(map, f.line);
            entry["zero_set"] = to_json(f.flat.zero_set);
            entry["chi"] = to_json(f.flat.chi);
            flats.push_back(std::move(entry));
        }
        const auto sa = superabundance(map.type());
        const auto mp = m_plus_two(map);
        doc["well_spaced"] = report.well_spaced;
        doc["speyer"] = speyer;
        doc["flats"] = flats;
        doc["warnings"] = report.warnings;
        doc["superabundance"] = {{"span_test", sa.span_test},
                                 {"dimension_test", sa.dimension_test ? json(*sa.dimension_test) : json(nullptr)},
                                 {"dim", sa.dim},
                                 {"expected", sa.expected},
                                 {"circuit_span", to_json(sa.circuit_span)}};
        doc["m_plus_two"] = {{"holds", mp.holds},
                             {"vacuous", mp.vacuous},
                             {"m", mp.m},
                             {"delta", optional_rational(mp.delta)},
                             {"exiting_flags", mp.exiting_flags}};
        doc["contraction_radius"] = optional_rational(contraction_radius(map));
        text << label << ": " << (report.well_spaced ? "well-spaced" : "not well-spaced")
             << (speyer ? ", Speyer holds" : ", Speyer fails") << "\n";
        for (const auto& f : report.flats) {
            text << "  chi " << f.flat.chi.to_string() << ": ";
            if (f.line.circuit_moves) {
                text << "circuit moves";
            } else if (f.line.constant) {
                text << "constant near the circuit";
            } else {
                text << f.line.minimal_flags << " flag(s) at radius " << format_rational(*f.line.radius) << " on "
                     << f.line.minimal_vertices << " vertex(es)";
            }
            text << (f.line.well_spaced ? "" : "  [fails]") << "\n";
        }
        for (const auto& w : report.warnings) text << "  warning: " << w << "\n";
    }
    out.code = verdict ? kYes : kNo;
    out.summary = text.str();
    out.report = std::move(doc);
    return out;
}

CheckResult check_file(const std::string& path, const CheckOptions& opt) {
    try {
        const auto inst = load_instance(path);
        return check_map(inst.name, inst.tropical_map(parse_overrides(opt.params)), opt);
    } catch (const Error& e) {
        const std::string msg = e.what();
        const auto where = msg.starts_with(path) ? msg : path + ": " + msg;
        return {kInvalid, "error: " + where + "\n", json{{"instance", path}, {"error", msg}}};
    }
}

std::size_t thread_cap() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TROP1_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) n = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw InvalidInput("TROP1_THREADS must be a positive integer");
        }
    }
    return n;
}

int run_check(const CheckOptions& opt) {
    if (opt.batch.empty()) {
        if (opt.file.empty()) throw InvalidInput("check: an instance file is required");
        auto result = check_file(opt.file, opt);
        const bool quiet = result.code == kInvalid || opt.report == "-";
        (quiet ? std::cerr : std::cout) << result.summary;
        if (!opt.report.empty()) write_text(opt.report, dump(result.report));
        return result.code;
    }
    if (!fs::is_directory(opt.batch)) throw InvalidInput("--batch: '" + opt.batch + "' is not a directory");
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(opt.batch)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<CheckResult> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) results[i] = check_file(files[i], opt);
    };
    std::vector<std::jthread> pool;
    const auto n = std::min(thread_cap(), std::max<std::size_t>(files.size(), 1));
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    pool.clear();

    int code = kYes;
    json reports = json::array();
    for (auto& r : results) {
        (opt.report == "-" ? std::cerr : std::cout) << r.summary;
        code = std::max(code, r.code);
        reports.push_back(std::move(r.report));
    }
    if (!opt.report.empty()) write_text(opt.report, dump(reports));
    return code;
}

// --- moduli / export -----------------------------------------------------

struct ComplexOptions {
    std::string out;
    std::string dot;
    bool well_spaced = false;
};

int emit_complex(const ConeComplex& full, const ComplexOptions& opt) {
    const auto cx = opt.well_spaced ? well_spaced_subcomplex(full) : full;
    const auto& s = cx.stats;
    std::cerr << s.num_cells << " cells, " << s.num_arrows << " arrows, max dim " << s.max_dim << ", "
              << s.maximal_cells.size() << " maximal, " << (s.pure ? "pure" : "not pure") << "\n";
    write_text(opt.out.empty() ? "-" : opt.out, dump(to_json(cx)));
    if (!opt.dot.empty()) write_text(opt.dot, to_dot(cx));
    return kYes;
}

int run_moduli(const std::string& recession_file, std::size_t max_vertices, const ComplexOptions& opt) {
    const auto spec = parse_recession_json(load_json(recession_file));
    const auto types = enumerate_types(spec.recession, max_vertices, spec.fan);
    if (types.empty()) throw InvalidInput("no genus-1 types with at most " + std::to_string(max_vertices) + " vertices");
    std::vector<RadialType> cells;
    for (const auto& t : types) {
        for (auto& r : radial_types(t)) cells.push_back(std::move(r));
    }
    std::cerr << types.size() << " types\n";
    return emit_complex(assemble_complex(std::move(cells)), opt);
}

int run_export(const std::string& file, const ComplexOptions& opt) {
    return emit_complex(complex_of(load_instance(file).type()), opt);
}

// --- descent -------------------------------------------------------------

/// "k:a1,...,ak;..." with one group per branch.
std::vector<std::vector<int>> parse_parts(const std::string& text) {
    std::vector<std::vector<int>> branches;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        const auto colon = group.find(':');
        if (colon == std::string::npos) throw InvalidInput("--parts: expected 'k:a1,...,ak' but got '" + group + "'");
        std::vector<int> slopes;
        try {
            const auto k = std::stoul(group.substr(0, colon));
            const auto v = parse_vector(group.substr(colon + 1));
            for (std::size_t i = 0; i < v.dim(); ++i) {
                if (!is_integer(v[i])) throw InvalidInput("--parts: slopes must be integers");
                slopes.push_back(static_cast<int>(numerator_of(v[i])));
            }
            if (slopes.size() != k) throw InvalidInput("--parts: branch '" + group + "' does not have " + std::to_string(k) + " slopes");
        } catch (const std::logic_error&) {
            throw InvalidInput("--parts: bad branch '" + group + "'");
        }
        branches.push_back(std::move(slopes));
    }
    return branches;
}

int run_descent(const std::string& instance_file, bool search, const std::string& parts, const std::string& constants) {
    if (search) {
        if (parts.empty() || constants.empty()) throw InvalidInput("descent --search needs --parts and --c");
        const auto c = parse_vector(constants);
        const std::vector<Rational> cs(c.begin(), c.end());
        const auto result = configuration_exists(parse_parts(parts), cs);
        json doc{{"exists", result.exists}, {"attempts", result.attempts}};
        if (result.witness) doc["witness"] = to_json(*result.witness);
        std::cout << dump(doc);
        return result.exists ? kYes : kNo;
    }
    if (instance_file.empty()) throw InvalidInput("descent needs --instance or --search");
    const auto inst = parse_descent_json(load_json(instance_file));
    json b = json::array();
    for (const auto& x : linear_parts(inst)) b.push_back(format_rational(x));
    const bool ok = descends(inst);
    std::cout << dump({{"linear_parts", b}, {"descends", ok}});
    return ok ? kYes : kNo;
}

// --- corpus --------------------------------------------------------------

int run_corpus(const std::string& name) {
    if (name.empty()) {
        for (const auto& n : corpus_names()) std::cout << n << "\n";
    } else {
        std::cout << corpus_text(name);
    }
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Realizability of genus-1 tropical stable maps"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Decide well-spacedness of a map (exit 0 yes, 1 no, 2 invalid)");
    check_cmd->add_option("file", check.file, "Instance file, or corpus:<name>");
    check_cmd->add_option("--param", check.params, "Parameter override name=value")->take_all();
    check_cmd->add_option("--chi", check.chi, "Single character query c1,...,cr");
    check_cmd->add_flag("--speyer", check.speyer, "Exit code reflects Speyer's condition");
    check_cmd->add_option("--report", check.report, "Write the JSON report ('-' for stdout)");
    check_cmd->add_option("--batch", check.batch, "Check every .json file in a directory");

    std::string recession_file;
    std::size_t max_vertices = 2;
    ComplexOptions moduli_opt;
    auto* moduli_cmd = app.add_subcommand("moduli", "Enumerate types of a recession type and assemble their complex");
    moduli_cmd->add_option("--recession", recession_file, "Recession file or instance file")->required();
    moduli_cmd->add_option("--max-vertices", max_vertices, "Vertex bound")->capture_default_str();
    moduli_cmd->add_option("--out", moduli_opt.out, "Complex JSON output (default stdout)");
    moduli_cmd->add_option("--dot", moduli_opt.dot, "Face poset in DOT format");
    moduli_cmd->add_flag("--well-spaced", moduli_opt.well_spaced, "Keep only the well-spaced subcomplex");

    std::string export_file;
    ComplexOptions export_opt;
    auto* export_cmd = app.add_subcommand("export", "Complex of the faces of an instance's type");
    export_cmd->add_option("file", export_file, "Instance file, or corpus:<name>")->required();
    export_cmd->add_option("--out", export_opt.out, "Complex JSON output (default stdout)");
    export_cmd->add_option("--dot", export_opt.dot, "Face poset in DOT format");
    export_cmd->add_flag("--well-spaced", export_opt.well_spaced, "Keep only the well-spaced subcomplex");

    std::string descent_file, parts, constants;
    bool search = false;
    auto* descent_cmd = app.add_subcommand("descent", "Residue descent condition");
    descent_cmd->add_option("--instance", descent_file, "Descent instance file");
    descent_cmd->add_flag("--search", search, "Search for a descending configuration");
    descent_cmd->add_option("--parts", parts, "Branches as k:a1,...,ak separated by ';'");
    descent_cmd->add_option("--c", constants, "Residue constants c1,...,cm");

    std::string corpus_name;
    auto* corpus_cmd = app.add_subcommand("corpus", "List the bundled examples or print one");
    corpus_cmd->add_option("name", corpus_name, "Example to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInvalid;
    }

    try {
        if (*check_cmd) return run_check(check);
        if (*moduli_cmd) return run_moduli(recession_file, max_vertices, moduli_opt);
        if (*export_cmd) return run_export(export_file, export_opt);
        if (*descent_cmd) return run_descent(descent_file, search, parts, constants);
        if (*corpus_cmd) return run_corpus(corpus_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kInvalid;
}
