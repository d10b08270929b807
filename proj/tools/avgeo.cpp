#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "avgeo/verification.hpp"

namespace {

int emit(const avgeo::Report& rep, const std::string& format, const std::string& out_path) {
    std::string payload;
    if (format == "json")
        payload = avgeo::render_json(rep).dump(2) + "\n";
    else
        payload = avgeo::render_text(rep);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output file " << out_path << "\n";
            return 2;
        }
        out << payload;
    }
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"avgeo: affine-value differential geometry toolkit"};
    app.require_subcommand(1);

    std::string script_path, format = "text", out_path, suite = "all";

    CLI::App* run = app.add_subcommand("run", "execute a script");
    run->add_option("file", script_path, "script file")->required();
    run->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--out", out_path, "write the report to a file");

    CLI::App* check = app.add_subcommand("check", "run a built-in verification suite");
    check->add_option("--suite", suite, "all|affspace|avbundle|algebroids|avbrackets|mechanics")
        ->check(CLI::IsMember(
            {"all", "affspace", "avbundle", "algebroids", "avbrackets", "mechanics"}));
    check->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    check->add_option("--out", out_path, "write the report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream in(script_path);
            if (!in) {
                std::cerr << "cannot open " << script_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            avgeo::Report rep = avgeo::dsl::run_script(buf.str());
            return emit(rep, format, out_path);
        }
        return emit(avgeo::verify::run_suite(suite), format, out_path);
    } catch (const avgeo::dsl::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
