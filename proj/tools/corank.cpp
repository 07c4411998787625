// Command-line front end. Links only the C interface.
//
//   corank check FILE      run the file's analyses, print the JSON report
//   corank render FILE     print the canonical text of the file's structures
//   corank corpus [DIR]    run every *.problem file in DIR and compare exit
//                          codes with DIR/manifest
//
// Exit codes: 0 success, 1 analysis failure, 2 validation or usage error.

#include "corank/corank.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef CORANK_CORPUS_DIR
#define CORANK_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInvalid = 2;

struct Flags {
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> tolerance;
    std::string output;
    bool timing = false;
};

crk_options to_options(const Flags& f)
{
    crk_options o;
    crk_options_init(&o);
    if (f.seed) {
        o.seed = *f.seed;
        o.has_seed = 1;
    }
    if (f.trials) {
        o.trials = *f.trials;
        o.has_trials = 1;
    }
    if (f.tolerance) {
        o.tolerance = *f.tolerance;
        o.has_tolerance = 1;
    }
    o.timing = f.timing ? 1 : 0;
    return o;
}

bool emit(const std::string& text, const std::string& output)
{
    if (output.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream out(output, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "corank: cannot write " << output << "\n";
        return false;
    }
    return true;
}

int status_exit(crk_status s)
{
    std::cerr << "corank: " << crk_last_error() << "\n";
    return s == CRK_ERR_VALIDATION || s == CRK_ERR_IO ? kInvalid : kFailed;
}

struct CheckResult {
    int exit = kOk;
    std::string report;
    std::string error;
};

CheckResult check_file(const std::string& path, const crk_options& options)
{
    CheckResult r;
    crk_problem* problem = nullptr;
    crk_status s = crk_problem_load(path.c_str(), &problem);
    if (s != CRK_OK) {
        r.exit = s == CRK_ERR_VALIDATION || s == CRK_ERR_IO ? kInvalid : kFailed;
        r.error = crk_last_error();
        return r;
    }
    crk_report* report = nullptr;
    s = crk_problem_analyze(problem, &options, &report);
    crk_problem_free(problem);
    if (s != CRK_OK) {
        r.exit = kFailed;
        r.error = crk_last_error();
        return r;
    }
    r.report = crk_report_json(report);
    r.exit = crk_report_failed(report) ? kFailed : kOk;
    crk_report_free(report);
    return r;
}

int run_check(const std::string& path, const Flags& flags)
{
    const CheckResult r = check_file(path, to_options(flags));
    if (!r.error.empty()) std::cerr << "corank: " << r.error << "\n";
    if (!r.report.empty() && !emit(r.report, flags.output)) return kInvalid;
    return r.exit;
}

int run_render(const std::string& path, const Flags& flags)
{
    crk_problem* problem = nullptr;
    crk_status s = crk_problem_load(path.c_str(), &problem);
    if (s != CRK_OK) return status_exit(s);
    char* text = nullptr;
    s = crk_problem_render(problem, &text);
    crk_problem_free(problem);
    if (s != CRK_OK) return status_exit(s);
    const bool ok = emit(text, flags.output);
    crk_string_free(text);
    return ok ? kOk : kInvalid;
}

// "<file> <expected exit>" per line; '#' comments.
std::map<std::string, int> read_manifest(const fs::path& dir)
{
    std::map<std::string, int> expected;
    std::ifstream in(dir / "manifest");
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream ss(line);
        std::string name;
        int code = 0;
        if (ss >> name >> code) expected[name] = code;
    }
    return expected;
}

int run_corpus(const std::string& dir, const Flags& flags)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        std::cerr << "corank: " << dir << " is not a directory\n";
        return kInvalid;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".problem") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    const auto expected = read_manifest(dir);
    const crk_options options = to_options(flags);

    // Files are independent; run them concurrently, report in file order.
    std::vector<std::future<CheckResult>> jobs;
    for (const auto& f : files) {
        jobs.push_back(std::async(std::launch::async, [f, options] { return check_file(f.string(), options); }));
    }

    nlohmann::ordered_json doc;
    doc["schema"] = "corank-corpus/1";
    doc["version"] = crk_version();
    doc["seed"] = options.seed;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    int mismatches = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const CheckResult r = jobs[i].get();
        const std::string name = files[i].filename().string();
        const auto it = expected.find(name);
        const int want = it == expected.end() ? kOk : it->second;
        nlohmann::ordered_json entry = {{"problem", name}, {"exit", r.exit}, {"expected", want}};
        if (!r.report.empty()) entry["summary"] = nlohmann::ordered_json::parse(r.report)["summary"];
        if (!r.error.empty()) entry["error"] = r.error;
        if (r.exit != want) ++mismatches;
        entries.push_back(std::move(entry));
    }
    doc["entries"] = entries;
    doc["mismatches"] = mismatches;
    if (!emit(doc.dump(2) + "\n", flags.output)) return kInvalid;
    return mismatches == 0 ? kOk : kFailed;
}

void add_flags(CLI::App* cmd, Flags& flags)
{
    cmd->add_option("--seed", flags.seed, "seed for randomized zero tests");
    cmd->add_option("--trials", flags.trials, "random samples per zero test")->check(CLI::Range(1, 100000));
    cmd->add_option("--tolerance", flags.tolerance, "relative tolerance of sampled zero tests")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--output,-o", flags.output, "write to this file instead of standard output");
    cmd->add_flag("--timing", flags.timing, "record elapsed time per analysis");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symbolic analysis of corank-one Poisson structures", "corank"};
    app.set_version_flag("--version", std::string(crk_version()));
    app.require_subcommand(1);

    Flags flags;
    std::string file;
    std::string dir = CORANK_CORPUS_DIR;

    CLI::App* check = app.add_subcommand("check", "run the analyses of a problem file");
    check->add_option("file", file, "problem file")->required();
    add_flags(check, flags);

    CLI::App* render = app.add_subcommand("render", "pretty-print the structures of a problem file");
    render->add_option("file", file, "problem file")->required();
    render->add_option("--output,-o", flags.output, "write to this file instead of standard output");

    CLI::App* corpus = app.add_subcommand("corpus", "run every bundled problem file");
    corpus->add_option("dir", dir, "directory of *.problem files");
    add_flags(corpus, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    if (check->parsed()) return run_check(file, flags);
    if (render->parsed()) return run_render(file, flags);
    return run_corpus(dir, flags);
}
