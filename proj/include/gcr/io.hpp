#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gcr/gcr.hpp"

namespace gcr::io {

/// Key order is preserved so that reports are byte-for-byte reproducible.
using Json = nlohmann::ordered_json;

enum class Command { check, limit, optimize, semisimplify, borel_tits, witness, orbit_dim, selftest };

std::string_view command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

/// One validated job. Which payload members are present depends on the
/// command; parse_request enforces the shape.
struct JobRequest {
    Command command = Command::check;
    std::optional<Field> field;
    std::optional<MatrixTuple> generators;
    /// limit: a single matrix instead of a tuple.
    std::optional<Matrix> matrix;
    /// limit: exponents plus optional conjugator.
    std::optional<Cocharacter> lambda;
    /// optimize.
    std::optional<WeightSet> weights;
    /// optimize: radius of an optional brute-force cross-check.
    std::optional<std::int64_t> box;
    /// limit: also search R_u(P_lambda) for a conjugator onto the limit.
    bool ru_search = false;
    std::optional<std::uint64_t> budget;
    /// selftest: a replacement corpus.
    std::optional<Json> corpus;

    bool operator==(const JobRequest&) const = default;
};

/// Exit codes shared by the CLI and the self-test.
enum ExitCode : int { ok = 0, invalid_input = 1, budget_exceeded = 2, internal_error = 3 };

/// Parses and validates a request. Errors name the first offending JSON
/// path, e.g. "/generators/1: generator not invertible". When `expected` is
/// given, a "command" member is optional but must agree with it.
JobRequest parse_request(const Json& doc, std::optional<Command> expected = std::nullopt);
JobRequest parse_request_text(std::string_view text, std::optional<Command> expected = std::nullopt);

/// Canonical JSON form; parse_request(serialize(r)) == r.
Json serialize(const JobRequest& request);

/// Runs a job. The report starts with the command echo and ends with
/// "timing_ms", the only field that varies between identical runs.
Json run(const JobRequest& request, const SearchOptions& options = {});

/// Runs the bundled corpus (or the request's replacement corpus). Sets
/// exit_code to the worst outcome: internal error, budget exceeded, a
/// mismatching case, or ok.
Json selftest(const JobRequest& request, const SearchOptions& options, int& exit_code);

/// The bundled corpus of worked examples and oracle cross-checks.
const Json& default_corpus();

/// Report without the "timing_ms" member, for determinism comparisons.
Json strip_timing(Json report);

// Literal helpers shared with the bindings and tests.
Json to_json(const Field& f);
Json to_json(const Matrix& m);
Json to_json(const MatrixTuple& h);
Json to_json(const Subspace& s);
Json to_json(const Cocharacter& c);
Json to_json(const WitnessParabolic& w);
Json to_json(const InstabilityReport& r);
Json to_json(const ModuleDecomposition& d);

}  // namespace gcr::io
