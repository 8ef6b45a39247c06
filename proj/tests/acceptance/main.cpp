// Runs the nine acceptance criteria at full size and prints one line each.
// --cli PATH runs the determinism commands through the executable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polyapprox/acceptance.hpp"

namespace {

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::string run_process(const std::string& exe, const std::vector<std::string>& args) {
    std::string cmd = quote(exe);
    for (const std::string& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    if (status != 0) throw std::runtime_error("exit status " + std::to_string(status) + " from " + args.front());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance"};
    std::string cli, json_out;
    polyapprox::SuiteOptions o;
    app.add_option("--cli", cli, "polyapprox executable for the determinism check");
    app.add_option("--scale", o.scale, "fraction of the instance counts")->check(CLI::Range(0.001, 1.0));
    app.add_option("--seed", o.seed);
    app.add_option("--json", json_out, "write the full report here");
    CLI11_PARSE(app, argc, argv);
    if (!cli.empty()) {
        o.runner = [cli](const std::vector<std::string>& args) { return run_process(cli, args); };
        o.include_selftest = true;
    }

    bool ok = true;
    polyapprox::Json report = polyapprox::Json::array();
    polyapprox::run_acceptance(o, [&](const polyapprox::CriterionReport& r) {
        std::cout << polyapprox::summary_line(r) << std::endl;
        report.push_back(polyapprox::to_json(r, true));
        ok = ok && r.passed;
    });
    std::cout << (ok ? "ALL PASS" : "SOME FAILED") << std::endl;
    if (!json_out.empty()) std::ofstream(json_out) << report.dump(2) << "\n";
    return ok ? 0 : 1;
}
