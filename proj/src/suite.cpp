#include "bergspec/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "bergspec/error.hpp"
#include "bergspec/svg.hpp"

namespace bergspec {

namespace fs = std::filesystem;

std::string read_text_file(fs::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(fs::path const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::evaluation, "cannot write " + path.string());
    out << text;
}

namespace {

struct Entry {
    std::string name;
    fs::path config;
    std::vector<double> ts;
    std::vector<cplx> lambdas;
    bool truncate = false;
    double truncate_t = 1.0;
    int N = 60;
    int n_max = 24;
};

struct EntryResult {
    Json json;
    bool failed = false;
    std::vector<std::pair<std::string, std::string>> files;  // name, contents
};

std::vector<Entry> load_suite(fs::path const& suite_file, std::string& suite_name) {
    Json j;
    try {
        j = Json::parse(read_text_file(suite_file));
    } catch (Json::parse_error const& e) {
        throw ConfigError(suite_file.string() + ": " + e.what());
    }
    suite_name = j.value("name", suite_file.stem().string());
    if (!j.contains("entries") || !j["entries"].is_array()) throw ConfigError("suite needs an 'entries' array");
    std::vector<Entry> entries;
    for (Json const& e : j["entries"]) {
        Entry en;
        en.name = e.at("name").get<std::string>();
        en.config = suite_file.parent_path() / e.at("config").get<std::string>();
        for (Json const& t : e.value("t", Json::array())) en.ts.push_back(t.get<double>());
        for (Json const& l : e.value("lambda", Json::array()))
            en.lambdas.push_back(l.is_number() ? cplx(l.get<double>()) : parse_complex(l.get<std::string>()));
        if (e.contains("truncate")) {
            Json const& tr = e["truncate"];
            en.truncate = true;
            en.truncate_t = tr.value("t", 1.0);
            en.N = tr.value("N", 60);
            en.n_max = tr.value("n_max", 24);
        }
        for (char ch : en.name)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
                throw ConfigError("suite entry names may use letters, digits, '_' and '-' only: " + en.name);
        entries.push_back(std::move(en));
    }
    return entries;
}

EntryResult run_entry(Entry const& e, SuiteOptions const& options) {
    EntryResult out;
    Json j;
    j["name"] = e.name;
    j["config"] = e.config.filename().string();
    auto start = std::chrono::steady_clock::now();
    try {
        Scenario s = parse_scenario(read_text_file(e.config));
        RunStatus status;
        j["classify"] = classify_report(s, e.ts, status);
        GammaProfile g = gammas_from(s.fixed_points(), s.p());
        try {
            SpectralRegion gen = generator_spectrum(g);
            out.files.emplace_back(e.name + ".generator.svg",
                                   render_svg(gen, generator_viewport(gen), e.name + ": generator spectrum"));
            for (double t : e.ts) {
                if (!(t > 0)) continue;
                SpectralRegion op = operator_spectrum(g, t);
                char tag[32];
                std::snprintf(tag, sizeof tag, "%g", t);
                out.files.emplace_back(e.name + ".operator.t" + tag + ".svg",
                                       render_svg(op, operator_viewport(op), e.name + ": operator spectrum, t = " + tag));
            }
        } catch (CoverageError const&) {
            // Recorded in the classify block already.
        }
        if (s.evaluable()) j["verify"] = verify_report(s, e.lambdas, e.ts, options.tolerances, status);
        if (e.truncate) j["truncate"] = truncate_report(s, e.truncate_t, e.N, e.n_max, options.tolerances, status);
        j["exit_code"] = exit_code(status);
        out.failed = status.verification_failed;
    } catch (ConfigError const& err) {
        j["exit_code"] = 2;
        j["error"] = {{"kind", "config"}, {"message", err.what()}};
        out.failed = true;
    } catch (Error const& err) {
        j["exit_code"] = 1;
        j["error"] = {{"kind", to_string(err.kind())}, {"message", err.what()}};
        out.failed = true;
    }
    if (options.wall_time)
        j["wall_time_s"] = number(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    out.json = std::move(j);
    return out;
}

}  // namespace

SuiteResult run_suite(fs::path const& suite_file, fs::path const& out_dir, SuiteOptions const& options) {
    std::string suite_name;
    std::vector<Entry> entries = load_suite(suite_file, suite_name);
    std::vector<EntryResult> results(entries.size());

    int jobs = options.jobs > 0 ? options.jobs : int(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
    jobs = std::min<int>(jobs, std::max<std::size_t>(1, entries.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) results[i] = run_entry(entries[i], options);
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    SuiteResult out;
    Json report;
    report["suite"] = suite_name;
    report["provenance"] = provenance_json(options.tolerances, QuadratureGrid{});
    Json list = Json::array();
    fs::create_directories(out_dir);
    for (EntryResult& r : results) {
        out.verification_failed = out.verification_failed || r.failed;
        for (auto const& [name, text] : r.files) write_text_file(out_dir / name, text);
        list.push_back(std::move(r.json));
    }
    report["entries"] = list;
    write_text_file(out_dir / "report.json", dump(report));
    out.report = std::move(report);
    return out;
}

}  // namespace bergspec
