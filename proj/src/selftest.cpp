#include <chrono>

#include "gcr/io.hpp"

namespace gcr::io {

namespace {

// Worked examples with expected report fragments (keyed by JSON pointer) and
// oracle cases that cross-check two independent computations.
constexpr const char* corpus_text = R"json([
  {"name": "unipotent limit along the positive direction",
   "request": {"command": "limit", "field": {"kind": "rationals"},
               "matrix": [["1", "1"], ["0", "1"]], "lambda": [1, -1]},
   "expect": {"/verdict": "limit exists", "/limit": [["1", "0"], ["0", "1"]], "/mu": 0, "/fixed": false}},
  {"name": "unipotent limit over F2",
   "request": {"command": "limit", "field": {"kind": "prime_field", "p": 2},
               "matrix": [["1", "1"], ["0", "1"]], "lambda": [1, -1]},
   "expect": {"/verdict": "limit exists", "/limit": [["1", "0"], ["0", "1"]]}},
  {"name": "unipotent limit along the negative direction",
   "request": {"command": "limit", "field": {"kind": "rationals"},
               "matrix": [["1", "1"], ["0", "1"]], "lambda": [-1, 1]},
   "expect": {"/verdict": "no limit", "/limit": null, "/mu": -2}},
  {"name": "conjugated cocharacter limit",
   "request": {"command": "limit", "field": {"kind": "rationals"},
               "matrix": [["1", "0"], ["1", "1"]], "lambda": [1, -1],
               "conjugator": [["0", "1"], ["1", "0"]]},
   "expect": {"/verdict": "limit exists", "/limit": [["1", "0"], ["0", "1"]]}},
  {"name": "adjoint SL2 over F2 splits as scalars plus a 2-dimensional module",
   "request": {"command": "check", "field": {"kind": "prime_field", "p": 2},
               "generators": [[["1", "1", "0"], ["0", "1", "0"], ["0", "1", "1"]],
                              [["1", "0", "0"], ["1", "1", "0"], ["1", "0", "1"]]]},
   "expect": {"/verdict": "completely reducible", "/decomposition/factor_dimensions": [1, 2],
              "/decomposition/series/1/basis": [["0", "0", "1"]], "/witness": null}},
  {"name": "adjoint transvection over F2 is not completely reducible",
   "request": {"command": "check", "field": {"kind": "prime_field", "p": 2},
               "generators": [[["1", "1", "0"], ["0", "1", "0"], ["0", "1", "1"]]]},
   "expect": {"/verdict": "not completely reducible", "/witness_verified": true}},
  {"name": "adjoint SL2 over F3 is irreducible",
   "request": {"command": "check", "field": {"kind": "prime_field", "p": 3},
               "generators": [[["1", "2", "1"], ["0", "1", "0"], ["0", "1", "1"]],
                              [["1", "0", "0"], ["2", "1", "2"], ["2", "0", "1"]]]},
   "expect": {"/verdict": "completely reducible", "/decomposition/factor_dimensions": [3],
              "/decomposition/factor_commutant_dimensions": [1], "/witness": null}},
  {"name": "corner transvection over Q",
   "request": {"command": "check", "field": {"kind": "rationals"},
               "generators": [[["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]]]},
   "expect": {"/verdict": "not completely reducible", "/decomposition/socle_series/1/dimension": 2}},
  {"name": "rotation over Q is irreducible but not absolutely",
   "request": {"command": "check", "field": {"kind": "rationals"},
               "generators": [[["0", "-1"], ["1", "0"]]]},
   "expect": {"/verdict": "completely reducible", "/decomposition/factor_commutant_dimensions": [2],
              "/decomposition/not_absolutely_irreducible_factors": [0]}},
  {"name": "semisimplification of the corner transvection",
   "request": {"command": "semisimplify", "field": {"kind": "rationals"},
               "generators": [[["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]]]},
   "expect": {"/semisimplification/0": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
              "/cocharacter/exponents": [1, 1, 0], "/already_semisimple": false}},
  {"name": "Borel-Tits flag of a transvection",
   "request": {"command": "borel-tits", "field": {"kind": "rationals"},
               "generators": [[["1", "1"], ["0", "1"]]]},
   "expect": {"/witness/flag/0/basis": [["1", "0"]], "/witness/reason": "borel-tits", "/witness_verified": true}},
  {"name": "optimal cocharacter of a simple-root pair",
   "request": {"command": "optimize", "weights": [[1, -1, 0], [0, 1, -1]]},
   "expect": {"/verdict": "unstable", "/min_norm_point": ["1/2", "0", "-1/2"],
              "/optimal_value_squared": "1/2", "/optimal_cocharacter": [1, 0, -1], "/mu": 1,
              "/certificate_verified": true}},
  {"name": "optimal cocharacter of a diagonal pair",
   "request": {"command": "optimize", "weights": [[2, 0], [0, 2]]},
   "expect": {"/optimal_cocharacter": [1, 1], "/optimal_value_squared": "2", "/min_norm_point": ["1", "1"]}},
  {"name": "opposite weights are semistable",
   "request": {"command": "optimize", "weights": [[1, -1], [-1, 1]]},
   "expect": {"/verdict": "semistable", "/optimal_cocharacter": null, "/certificate_verified": true}},
  {"name": "orbit dimension of a regular unipotent",
   "request": {"command": "orbit-dim", "field": {"kind": "rationals"},
               "generators": [[["1", "1"], ["0", "1"]]]},
   "expect": {"/orbit_dimension": 2, "/commutant_dimension": 2}},
  {"name": "tuple witness for the corner transvection",
   "request": {"command": "witness", "field": {"kind": "rationals"},
               "generators": [[["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]]]},
   "expect": {"/verdict": "not completely reducible", "/heuristic": true, "/witness_verified": true}},
  {"name": "box oracle on an unstable triple",
   "oracle": "optimize-vs-box",
   "request": {"command": "optimize", "weights": [[2, -1, -1], [0, 1, -1], [1, 0, -1]], "box": 6}},
  {"name": "box oracle on a semistable triple",
   "oracle": "optimize-vs-box",
   "request": {"command": "optimize", "weights": [[1, -1, 0], [0, 1, -1], [-1, 0, 1]], "box": 6}},
  {"name": "radical conjugator matches exhaustive search (no conjugate)",
   "oracle": "ru-vs-conjugacy",
   "request": {"command": "limit", "field": {"kind": "prime_field", "p": 2},
               "generators": [[["1", "1"], ["0", "1"]]], "lambda": [1, 0]}},
  {"name": "radical conjugator matches exhaustive search (conjugate)",
   "oracle": "ru-vs-conjugacy",
   "request": {"command": "limit", "field": {"kind": "prime_field", "p": 3},
               "generators": [[["1", "1"], ["0", "2"]]], "lambda": [1, 0]}},
  {"name": "complete reducibility matches closed orbit (adjoint F2)",
   "oracle": "cr-vs-semisimplify",
   "request": {"command": "check", "field": {"kind": "prime_field", "p": 2},
               "generators": [[["1", "1", "0"], ["0", "1", "0"], ["0", "1", "1"]],
                              [["1", "0", "0"], ["1", "1", "0"], ["1", "0", "1"]]]}},
  {"name": "complete reducibility matches closed orbit (adjoint F3)",
   "oracle": "cr-vs-semisimplify",
   "request": {"command": "check", "field": {"kind": "prime_field", "p": 3},
               "generators": [[["1", "2", "1"], ["0", "1", "0"], ["0", "1", "1"]],
                              [["1", "0", "0"], ["2", "1", "2"], ["2", "0", "1"]]]}},
  {"name": "complete reducibility matches closed orbit (diagonal F3)",
   "oracle": "cr-vs-semisimplify",
   "request": {"command": "check", "field": {"kind": "prime_field", "p": 3},
               "generators": [[["2", "0"], ["0", "1"]]]}}
])json";

Json mismatch(const std::string& path, const Json& expected, const Json& actual) {
    Json m;
    m["path"] = path;
    m["expected"] = expected;
    m["actual"] = actual;
    return m;
}

// Returns the list of failed checks; empty means the case passed.
Json run_case(const Json& spec, const SearchOptions& options) {
    Json failures = Json::array();
    JobRequest req = parse_request(spec.at("request"));
    SearchOptions opts = options;
    if (req.budget) opts.budget = *req.budget;

    if (!spec.contains("oracle")) {
        Json report = run(req, opts);
        for (const auto& [pointer, expected] : spec.at("expect").items()) {
            const Json::json_pointer ptr(pointer);
            const Json actual = report.contains(ptr) ? report.at(ptr) : Json("<missing>");
            if (actual != expected) failures.push_back(mismatch(pointer, expected, actual));
        }
        return failures;
    }

    const std::string oracle = spec.at("oracle").get<std::string>();
    if (oracle == "optimize-vs-box") {
        if (req.command != Command::optimize || !req.box) throw InvalidArgument("optimize-vs-box needs an optimize request with a box");
        Json report = run(req, opts);
        if (report["certificate_verified"] != true) failures.push_back(mismatch("/certificate_verified", true, report["certificate_verified"]));
        if (report["oracle"]["agrees"] != true) failures.push_back(mismatch("/oracle/agrees", true, report["oracle"]));
    } else if (oracle == "ru-vs-conjugacy") {
        if (req.command != Command::limit || !req.generators) throw InvalidArgument("ru-vs-conjugacy needs a limit request on generators");
        const MatrixTuple& h = *req.generators;
        auto lim = limit_tuple(*req.lambda, h);
        if (!lim) {
            failures.push_back(mismatch("/limit", "a limit", nullptr));
            return failures;
        }
        auto u = ru_conjugator(h, *req.lambda, opts);
        auto g = find_conjugator_exhaustive(h, *lim, opts);
        if (u.has_value() != g.has_value()) {
            failures.push_back(mismatch("/ru_conjugator", g.has_value(), u.has_value()));
        } else if (u && h.conjugated(*u) != *lim) {
            failures.push_back(mismatch("/ru_conjugator", to_json(*lim), to_json(h.conjugated(*u))));
        }
    } else if (oracle == "cr-vs-semisimplify") {
        if (!req.generators) throw InvalidArgument("cr-vs-semisimplify needs generators");
        const MatrixTuple& h = *req.generators;
        const bool cr = is_completely_reducible(h, opts).completely_reducible;
        Semisimplification s = semisimplify(h, opts);
        const bool closed = find_conjugator_exhaustive(h, s.tuple, opts).has_value();
        if (cr != closed) failures.push_back(mismatch("/completely_reducible", closed, cr));
        if (!is_completely_reducible(s.tuple, opts).completely_reducible) {
            failures.push_back(mismatch("/semisimplification/completely_reducible", true, false));
        }
    } else {
        throw InvalidArgument("unknown oracle \"" + oracle + "\"");
    }
    return failures;
}

}  // namespace

const Json& default_corpus() {
    static const Json corpus = Json::parse(corpus_text);
    return corpus;
}

Json selftest(const JobRequest& request, const SearchOptions& options, int& exit_code) {
    const Json& corpus = request.corpus ? *request.corpus : default_corpus();
    exit_code = ExitCode::ok;
    auto worsen = [&](int code) {
        // Severity order: internal error > budget > mismatch or bad case > ok.
        auto rank = [](int c) { return c == ExitCode::internal_error ? 3 : c == ExitCode::budget_exceeded ? 2 : c; };
        if (rank(code) > rank(exit_code)) exit_code = code;
    };
    Json cases = Json::array();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Json& spec = corpus[i];
        Json entry;
        entry["name"] = spec.is_object() && spec.contains("name") ? spec["name"] : Json("case " + std::to_string(i));
        const auto start = std::chrono::steady_clock::now();
        try {
            if (!spec.is_object() || !spec.contains("request")) throw InvalidArgument("case needs a \"request\"");
            if (!spec.contains("oracle") && !(spec.contains("expect") && spec["expect"].is_object())) {
                throw InvalidArgument("case needs \"expect\" or \"oracle\"");
            }
            Json failures = run_case(spec, options);
            if (failures.empty()) {
                entry["status"] = "pass";
                ++passed;
            } else {
                entry["status"] = "fail";
                entry["failures"] = failures;
                worsen(ExitCode::invalid_input);
            }
        } catch (const BudgetExceeded& e) {
            entry["status"] = "budget exceeded";
            entry["message"] = e.what();
            worsen(ExitCode::budget_exceeded);
        } catch (const InvalidArgument& e) {
            entry["status"] = "invalid case";
            entry["message"] = e.what();
            worsen(ExitCode::invalid_input);
        } catch (const nlohmann::json::exception& e) {
            entry["status"] = "invalid case";
            entry["message"] = e.what();
            worsen(ExitCode::invalid_input);
        } catch (const std::exception& e) {
            entry["status"] = "internal error";
            entry["message"] = e.what();
            worsen(ExitCode::internal_error);
        }
        entry["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        cases.push_back(entry);
    }
    Json r;
    r["passed"] = passed;
    r["failed"] = corpus.size() - passed;
    r["cases"] = cases;
    return r;
}

}  // namespace gcr::io
