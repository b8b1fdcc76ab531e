// Command-line front end: one subcommand per job kind, a JSON request from a
// file or stdin, a JSON report on stdout, errors as JSON on stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "gcr/io.hpp"

namespace {

using gcr::io::Command;
using gcr::io::ExitCode;
using gcr::io::Json;

int report_error(const char* kind, const std::string& message, int code) {
    Json err;
    err["error"] = kind;
    err["message"] = message;
    std::cerr << err.dump(2) << '\n';
    return code;
}

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw gcr::InvalidArgument("cannot open input file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete reducibility and instability for subgroups of GL_n over Q and F_p"};
    app.require_subcommand(1);

    std::string input;
    unsigned threads = 1;
    std::optional<std::uint64_t> budget;
    bool compact = false;
    app.add_option("-i,--input", input, "Request JSON file, or - for stdin")->type_name("FILE");
    app.add_option("-t,--threads", threads, "Worker threads for exhaustive searches")->check(CLI::Range(1u, 256u));
    app.add_option("-b,--budget", budget, "Enumeration budget; overrides the request's budget");
    app.add_flag("--compact", compact, "Print the report on one line");

    const std::pair<Command, const char*> commands[] = {
        {Command::check, "Decide complete reducibility; report decomposition and witness"},
        {Command::limit, "Limit of a matrix or tuple under a cocharacter"},
        {Command::optimize, "Optimal destabilising cocharacter of a weight set"},
        {Command::semisimplify, "Semisimplification as a cocharacter limit"},
        {Command::borel_tits, "Fixed-point flag of a unipotent tuple"},
        {Command::witness, "Heuristic destabilising cocharacter for a tuple"},
        {Command::orbit_dim, "Dimension of the conjugacy orbit of a tuple"},
        {Command::selftest, "Run the bundled corpus of examples and oracle checks"},
    };
    std::optional<Command> chosen;
    for (const auto& [command, help] : commands) {
        CLI::App* sub = app.add_subcommand(std::string(gcr::io::command_name(command)), help);
        sub->fallthrough();
        sub->callback([&chosen, command = command] { chosen = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return ExitCode::invalid_input;
    }

    gcr::SearchOptions options;
    options.threads = threads;
    try {
        gcr::io::JobRequest request;
        if (input.empty()) {
            if (*chosen != Command::selftest) throw gcr::InvalidArgument("--input is required for this command");
            request.command = Command::selftest;
        } else {
            request = gcr::io::parse_request_text(read_input(input), *chosen);
        }
        if (budget) request.budget = *budget;

        int code = ExitCode::ok;
        Json report;
        if (request.command == Command::selftest) {
            const auto start = std::chrono::steady_clock::now();
            if (request.budget) options.budget = *request.budget;
            report["command"] = "selftest";
            Json body = gcr::io::selftest(request, options, code);
            for (auto& [key, value] : body.items()) report[key] = value;
            report["timing_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        } else {
            report = gcr::io::run(request, options);
        }
        std::cout << (compact ? report.dump() : report.dump(2)) << '\n';
        return code;
    } catch (const gcr::BudgetExceeded& e) {
        return report_error("budget exceeded", e.what(), ExitCode::budget_exceeded);
    } catch (const gcr::InvalidArgument& e) {
        return report_error("invalid input", e.what(), ExitCode::invalid_input);
    } catch (const std::exception& e) {
        return report_error("internal error", e.what(), ExitCode::internal_error);
    }
}
