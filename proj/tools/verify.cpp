#include "sl3ext/report/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace sl3ext;

namespace {

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) return false;
    f << content;
    return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification runner for the sl(3) contact structure catalogue"};
    std::string suite = "all", case_name, format = "text", output, dump;
    std::vector<std::string> sets;
    std::vector<std::string> choices{"all"};
    for (auto& s : report::suite_names()) choices.push_back(s);
    app.add_option("--suite", suite, "suite to run")->check(CLI::IsMember(choices));
    app.add_option("--case", case_name, "case id: O I0 I1 I2 I2prime II0 II1 II2");
    app.add_option("--set", sets, "parameter override NAME=RATIONAL (repeatable)");
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", output, "write the report to PATH");
    app.add_option("--dump-matrices", dump, "write embedding matrices to PATH");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    report::Options opt;
    try {
        if (suite != "all") opt.suites = {suite};
        else if (case_name.empty()) opt.suites = report::suite_names();
        if (!case_name.empty()) {
            auto id = casebook::parse_case(case_name);
            if (!id) throw casebook::ConfigError("unknown case " + case_name);
            opt.case_id = id;
        }
        for (auto& s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw casebook::ConfigError("malformed --set " + s);
            try {
                opt.params[s.substr(0, eq)] = Rational::parse(s.substr(eq + 1));
            } catch (const std::invalid_argument&) {
                throw casebook::ConfigError("malformed --set " + s);
            }
        }
        opt.with_dossier_matrices = true;
        auto rep = report::run(opt);

        if (!dump.empty() && !write_file(dump, report::matrices_json(opt.case_id, opt.params).dump(2) + "\n")) {
            std::cerr << "cannot write " << dump << "\n";
            return 2;
        }
        std::string body = format == "json" ? rep.to_json().dump(2) + "\n" : rep.text();
        if (output.empty()) std::cout << body;
        else {
            if (!write_file(output, body)) {
                std::cerr << "cannot write " << output << "\n";
                return 2;
            }
            std::cout << "summary: " << rep.count(report::Status::Pass) << " pass, " << rep.count(report::Status::Fail)
                      << " fail, " << rep.count(report::Status::Skipped) << " skipped\n";
        }
        return rep.ok() ? 0 : 1;
    } catch (const casebook::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
