#include "gcr/io.hpp"

#include <chrono>
#include <set>

namespace gcr::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw InvalidArgument((path.empty() ? std::string("/") : path) + ": " + message);
}

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const std::set<std::string, std::less<>> known_members = {"command", "field",    "generators", "matrix",
                                                          "lambda",  "conjugator", "weights",  "box",
                                                          "ru_search", "budget",   "cases"};

std::int64_t parse_int(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        fail(path, "malformed integer \"" + s + "\"");
    }
    fail(path, "expected an integer");
}

std::uint64_t parse_nonnegative(const Json& j, const std::string& path) {
    const std::int64_t v = parse_int(j, path);
    if (v < 0) fail(path, "must be non-negative");
    return static_cast<std::uint64_t>(v);
}

Field parse_field(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object {\"kind\": ...}");
    if (!j.contains("kind") || !j["kind"].is_string()) fail(child(path, "kind"), "expected \"rationals\" or \"prime_field\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals") {
        if (j.contains("p")) fail(child(path, "p"), "the rationals take no modulus");
        return Field::rationals();
    }
    if (kind != "prime_field") fail(child(path, "kind"), "unknown field kind \"" + kind + "\"");
    if (!j.contains("p")) fail(child(path, "p"), "missing modulus");
    const std::int64_t p = parse_int(j["p"], child(path, "p"));
    if (p < 0) fail(child(path, "p"), "modulus not prime");
    try {
        return Field::prime(static_cast<std::uint64_t>(p));
    } catch (const InvalidArgument& e) {
        fail(child(path, "p"), e.what());
    }
}

Scalar parse_scalar(const Field& f, const Json& j, const std::string& path) {
    try {
        if (j.is_string()) return f.parse(j.get<std::string>());
        if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    }
    fail(path, "expected a field element as a decimal string");
}

Matrix parse_matrix(const Field& f, const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rp = child(path, i);
        if (!j[i].is_array() || j[i].empty()) fail(rp, "expected a nonempty row");
        if (i > 0 && j[i].size() != j[0].size()) fail(rp, "jagged matrix");
        Vector row;
        for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(parse_scalar(f, j[i][k], child(rp, k)));
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(f, rows);
}

Matrix parse_invertible(const Field& f, const Json& j, const std::string& path, std::size_t n, const char* what) {
    Matrix m = parse_matrix(f, j, path);
    if (!m.is_square()) fail(path, std::string(what) + " not square");
    if (n != 0 && m.rows() != n) fail(path, std::string(what) + " has dimension " + std::to_string(m.rows()) +
                                               ", expected " + std::to_string(n));
    if (!is_invertible(m)) fail(path, std::string(what) + " not invertible");
    return m;
}

MatrixTuple parse_generators(const Field& f, const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of matrices");
    std::vector<Matrix> gens;
    std::size_t n = 0;
    for (std::size_t k = 0; k < j.size(); ++k) {
        gens.push_back(parse_invertible(f, j[k], child(path, k), n, "generator"));
        n = gens.front().rows();
    }
    return MatrixTuple(f, n, std::move(gens));
}

std::vector<std::int64_t> parse_int_array(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty integer array");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int(j[i], child(path, i)));
    return out;
}

WeightSet parse_weights(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of weights (the zero vector has no support)");
    std::vector<Character> ws;
    std::set<Character> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Character chi = parse_int_array(j[i], child(path, i));
        if (!ws.empty() && chi.size() != ws.front().size()) {
            fail(child(path, i), "weight length does not match torus rank");
        }
        if (!seen.insert(chi).second) fail(child(path, i), "weights must be pairwise distinct");
        ws.push_back(std::move(chi));
    }
    return WeightSet(std::move(ws));
}

void require(const Json& doc, const char* key) {
    if (!doc.contains(key)) fail(child("", key), "missing member required by this command");
}

void forbid_except(const Json& doc, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : doc.items()) {
        if (key == "command" || key == "budget") continue;
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(child("", key), "member not used by this command");
    }
}

Json scalar_json(const Field& f, const Scalar& s) { return f.format(s); }

Json rationals_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const Rational& q : v) out.push_back(to_string(q));
    return out;
}

Json weights_json(const WeightSet& w) {
    Json out = Json::array();
    for (const Character& chi : w.weights()) out.push_back(chi);
    return out;
}

Json support_mu(const std::vector<Matrix>& mats, const Cocharacter& lambda) {
    const Field& f = mats.front().field();
    const std::size_t n = lambda.dimension();
    std::optional<Matrix> g_inv;
    if (lambda.conjugator) g_inv = inverse(*lambda.conjugator);
    std::set<Character> weights;
    for (const Matrix& x : mats) {
        const Matrix y = lambda.conjugator ? *g_inv * x * *lambda.conjugator : x;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (f.is_zero(y(i, j))) continue;
                Character chi(n, 0);
                chi[i] += 1;
                chi[j] -= 1;
                weights.insert(chi);
            }
        }
    }
    if (weights.empty()) return nullptr;
    return mu(WeightSet(n, std::vector<Character>(weights.begin(), weights.end())), lambda.exponents);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Json run_check(const JobRequest& req, const SearchOptions& opts) {
    const MatrixTuple& h = *req.generators;
    CrResult cr = is_completely_reducible(h, opts);
    Json r;
    r["verdict"] = cr.completely_reducible ? "completely reducible" : "not completely reducible";
    r["completely_reducible"] = cr.completely_reducible;
    r["decomposition"] = to_json(cr.decomposition);
    if (cr.witness) {
        r["witness"] = to_json(*cr.witness);
        r["witness_verified"] = verify_witness(h, *cr.witness);
    } else {
        r["witness"] = nullptr;
    }
    return r;
}

Json run_limit(const JobRequest& req, const SearchOptions& opts) {
    const Cocharacter& lambda = *req.lambda;
    Json r;
    if (req.matrix) {
        auto lim = limit_conj(lambda, *req.matrix);
        r["verdict"] = lim ? "limit exists" : "no limit";
        r["limit"] = lim ? to_json(*lim) : Json(nullptr);
        r["fixed"] = lim && *lim == *req.matrix;
        r["mu"] = support_mu({*req.matrix}, lambda);
        return r;
    }
    const MatrixTuple& h = *req.generators;
    auto lim = limit_tuple(lambda, h);
    r["verdict"] = lim ? "limit exists" : "no limit";
    r["limit"] = lim ? to_json(*lim) : Json(nullptr);
    r["fixed"] = lim && *lim == h;
    r["mu"] = mu_conjugated(h, lambda);
    if (req.ru_search) {
        if (!lim) {
            r["ru_conjugator"] = nullptr;
        } else {
            auto u = ru_conjugator(h, lambda, opts);
            r["ru_conjugator"] = u ? to_json(*u) : Json(nullptr);
            r["limit_in_ru_orbit"] = u.has_value();
        }
    }
    return r;
}

Json run_optimize(const JobRequest& req, const SearchOptions& opts) {
    const WeightSet& w = *req.weights;
    InstabilityReport report = optimal_cocharacter(w);
    Json r;
    r["weights"] = weights_json(w);
    r["verdict"] = report.semistable ? "semistable" : "unstable";
    Json body = to_json(report);
    for (auto& [key, value] : body.items()) r[key] = value;
    r["certificate_verified"] = verify_certificate(w, report);
    if (req.box) {
        BoxOptimum best = brute_force_optimum(w, *req.box, opts.budget);
        Json oracle;
        oracle["box"] = *req.box;
        oracle["lambda"] = best.lambda;
        oracle["mu"] = best.mu;
        oracle["norm_squared"] = best.norm_squared;
        oracle["agrees"] = report.semistable
                               ? best.mu <= 0
                               : f_compare(w, *report.optimal_cocharacter, best.lambda) != std::strong_ordering::less;
        r["oracle"] = oracle;
    }
    return r;
}

Json run_semisimplify(const JobRequest& req, const SearchOptions& opts) {
    Semisimplification s = semisimplify(*req.generators, opts);
    Json r;
    r["semisimplification"] = to_json(s.tuple);
    r["cocharacter"] = to_json(s.lambda);
    Json flag = Json::array();
    for (const Subspace& v : s.flag) flag.push_back(to_json(v));
    r["flag"] = flag;
    r["already_semisimple"] = s.tuple == *req.generators;
    return r;
}

Json run_borel_tits(const JobRequest& req) {
    WitnessParabolic w = borel_tits_flag(*req.generators);
    Json r;
    r["witness"] = to_json(w);
    r["witness_verified"] = verify_witness(*req.generators, w);
    return r;
}

Json run_witness(const JobRequest& req, const SearchOptions& opts) {
    const MatrixTuple& h = *req.generators;
    auto found = tuple_witness_search(h, opts);
    Json r;
    r["verdict"] = found ? "not completely reducible" : "completely reducible";
    r["heuristic"] = true;
    if (!found) {
        r["witness"] = nullptr;
        return r;
    }
    r["witness"] = to_json(found->witness);
    r["witness_verified"] = verify_witness(h, found->witness);
    r["optimal_cocharacter"] = to_json(found->optimal);
    r["mu"] = mu_conjugated(h, found->optimal);
    r["block_optimisation"] = to_json(found->report);
    return r;
}

Json run_orbit_dim(const JobRequest& req) {
    const MatrixTuple& h = *req.generators;
    auto basis = commutant(h);
    Json r;
    r["orbit_dimension"] = h.dimension() * h.dimension() - basis.size();
    r["commutant_dimension"] = basis.size();
    Json mats = Json::array();
    for (const Matrix& m : basis) mats.push_back(to_json(m));
    r["commutant_basis"] = mats;
    return r;
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::check: return "check";
        case Command::limit: return "limit";
        case Command::optimize: return "optimize";
        case Command::semisimplify: return "semisimplify";
        case Command::borel_tits: return "borel-tits";
        case Command::witness: return "witness";
        case Command::orbit_dim: return "orbit-dim";
        case Command::selftest: return "selftest";
    }
    return "?";
}

std::optional<Command> command_from_name(std::string_view name) {
    for (Command c : {Command::check, Command::limit, Command::optimize, Command::semisimplify, Command::borel_tits,
                      Command::witness, Command::orbit_dim, Command::selftest}) {
        if (command_name(c) == name) return c;
    }
    return std::nullopt;
}

JobRequest parse_request_text(std::string_view text, std::optional<Command> expected) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
    return parse_request(doc, expected);
}

JobRequest parse_request(const Json& doc, std::optional<Command> expected) {
    if (!doc.is_object()) fail("", "request must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!known_members.count(key)) fail(child("", key), "unknown member");
    }
    JobRequest req;
    if (doc.contains("command")) {
        if (!doc["command"].is_string()) fail("/command", "expected a command name");
        auto c = command_from_name(doc["command"].get<std::string>());
        if (!c) fail("/command", "unknown command \"" + doc["command"].get<std::string>() + "\"");
        if (expected && *c != *expected) {
            fail("/command", "request is for \"" + std::string(command_name(*c)) + "\" but \"" +
                                 std::string(command_name(*expected)) + "\" was invoked");
        }
        req.command = *c;
    } else if (expected) {
        req.command = *expected;
    } else {
        fail("/command", "missing command");
    }
    if (doc.contains("budget")) req.budget = parse_nonnegative(doc["budget"], "/budget");

    switch (req.command) {
        case Command::optimize:
            forbid_except(doc, {"weights", "box"});
            require(doc, "weights");
            req.weights = parse_weights(doc["weights"], "/weights");
            if (doc.contains("box")) {
                req.box = parse_int(doc["box"], "/box");
                if (*req.box < 1) fail("/box", "box radius must be at least 1");
            }
            return req;
        case Command::selftest:
            forbid_except(doc, {"cases"});
            if (doc.contains("cases")) {
                if (!doc["cases"].is_array()) fail("/cases", "expected an array of cases");
                req.corpus = doc["cases"];
            }
            return req;
        case Command::limit: {
            forbid_except(doc, {"field", "lambda", "conjugator", "matrix", "generators", "ru_search"});
            require(doc, "field");
            require(doc, "lambda");
            req.field = parse_field(doc["field"], "/field");
            if (doc.contains("matrix") == doc.contains("generators")) {
                fail("/matrix", "exactly one of \"matrix\" and \"generators\" is required");
            }
            std::size_t n = 0;
            if (doc.contains("matrix")) {
                req.matrix = parse_matrix(*req.field, doc["matrix"], "/matrix");
                if (!req.matrix->is_square()) fail("/matrix", "matrix not square");
                n = req.matrix->rows();
            } else {
                req.generators = parse_generators(*req.field, doc["generators"], "/generators");
                n = req.generators->dimension();
            }
            auto exps = parse_int_array(doc["lambda"], "/lambda");
            if (exps.size() != n) fail("/lambda", "cocharacter length does not match matrix dimension");
            std::optional<Matrix> g;
            if (doc.contains("conjugator")) g = parse_invertible(*req.field, doc["conjugator"], "/conjugator", n, "conjugator");
            req.lambda = Cocharacter(std::move(exps), std::move(g));
            if (doc.contains("ru_search")) {
                if (!doc["ru_search"].is_boolean()) fail("/ru_search", "expected a boolean");
                req.ru_search = doc["ru_search"].get<bool>();
                if (req.ru_search && !req.field->is_finite()) fail("/ru_search", "requires a finite base field");
                if (req.ru_search && !req.generators) fail("/ru_search", "requires \"generators\"");
            }
            return req;
        }
        default:
            forbid_except(doc, {"field", "generators"});
            require(doc, "field");
            require(doc, "generators");
            req.field = parse_field(doc["field"], "/field");
            req.generators = parse_generators(*req.field, doc["generators"], "/generators");
            return req;
    }
}

Json serialize(const JobRequest& req) {
    Json doc;
    doc["command"] = command_name(req.command);
    if (req.field) doc["field"] = to_json(*req.field);
    if (req.generators) doc["generators"] = to_json(*req.generators);
    if (req.matrix) doc["matrix"] = to_json(*req.matrix);
    if (req.lambda) {
        doc["lambda"] = req.lambda->exponents;
        if (req.lambda->conjugator) doc["conjugator"] = to_json(*req.lambda->conjugator);
    }
    if (req.weights) doc["weights"] = weights_json(*req.weights);
    if (req.box) doc["box"] = *req.box;
    if (req.ru_search) doc["ru_search"] = true;
    if (req.budget) doc["budget"] = *req.budget;
    if (req.corpus) doc["cases"] = *req.corpus;
    return doc;
}

Json run(const JobRequest& req, const SearchOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    SearchOptions opts = options;
    if (req.budget) opts.budget = *req.budget;
    Json body;
    switch (req.command) {
        case Command::check: body = run_check(req, opts); break;
        case Command::limit: body = run_limit(req, opts); break;
        case Command::optimize: body = run_optimize(req, opts); break;
        case Command::semisimplify: body = run_semisimplify(req, opts); break;
        case Command::borel_tits: body = run_borel_tits(req); break;
        case Command::witness: body = run_witness(req, opts); break;
        case Command::orbit_dim: body = run_orbit_dim(req); break;
        case Command::selftest: {
            int code = ExitCode::ok;
            body = selftest(req, opts, code);
            break;
        }
    }
    Json report;
    report["command"] = command_name(req.command);
    if (req.field) report["field"] = req.field->describe();
    if (req.generators) report["dimension"] = req.generators->dimension();
    for (auto& [key, value] : body.items()) report[key] = value;
    report["timing_ms"] = elapsed_ms(start);
    return report;
}

Json strip_timing(Json report) {
    report.erase("timing_ms");
    if (report.contains("cases")) {
        for (Json& c : report["cases"]) c.erase("timing_ms");
    }
    return report;
}

Json to_json(const Field& f) {
    Json j;
    if (f.is_finite()) {
        j["kind"] = "prime_field";
        j["p"] = f.characteristic();
    } else {
        j["kind"] = "rationals";
    }
    return j;
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m.field(), m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const MatrixTuple& h) {
    Json out = Json::array();
    for (const Matrix& m : h) out.push_back(to_json(m));
    return out;
}

Json to_json(const Subspace& s) {
    Json j;
    j["dimension"] = s.dim();
    Json basis = Json::array();
    for (const Vector& v : s.basis()) {
        Json row = Json::array();
        for (const Scalar& x : v) row.push_back(scalar_json(s.field(), x));
        basis.push_back(row);
    }
    j["basis"] = basis;
    return j;
}

Json to_json(const Cocharacter& c) {
    Json j;
    j["exponents"] = c.exponents;
    j["conjugator"] = c.conjugator ? to_json(*c.conjugator) : Json(nullptr);
    return j;
}

Json to_json(const WitnessParabolic& w) {
    Json j;
    Json flag = Json::array();
    for (const Subspace& s : w.flag) flag.push_back(to_json(s));
    j["flag"] = flag;
    j["cocharacter"] = to_json(w.cocharacter);
    if (w.reason == WitnessParabolic::Reason::no_complement) {
        j["reason"] = "no invariant complement";
        j["step"] = w.step;
    } else {
        j["reason"] = "borel-tits";
        j["step"] = nullptr;
    }
    return j;
}

Json to_json(const InstabilityReport& r) {
    Json j;
    j["semistable"] = r.semistable;
    j["min_norm_point"] = rationals_json(r.min_norm_point);
    j["optimal_value_squared"] = to_string(r.optimal_value_squared);
    if (r.optimal_cocharacter) {
        j["optimal_cocharacter"] = *r.optimal_cocharacter;
        j["mu"] = r.mu_at_optimum;
        j["norm_squared"] = r.norm_squared;
    } else {
        j["optimal_cocharacter"] = nullptr;
        j["mu"] = nullptr;
        j["norm_squared"] = nullptr;
    }
    Json cert;
    cert["hull_coefficients"] = rationals_json(r.hull_coefficients);
    cert["margins"] = rationals_json(r.margins);
    j["certificate"] = cert;
    return j;
}

Json to_json(const ModuleDecomposition& d) {
    Json j;
    Json series = Json::array();
    for (const Subspace& s : d.series) series.push_back(to_json(s));
    j["series"] = series;
    Json socle = Json::array();
    for (const Subspace& s : d.socle_series) socle.push_back(to_json(s));
    j["socle_series"] = socle;
    j["factor_dimensions"] = d.factor_dimensions;
    j["factor_commutant_dimensions"] = d.factor_commutant_dimensions;
    j["factor_certified"] = d.factor_certified;
    Json advisory = Json::array();
    for (std::size_t i = 0; i < d.factor_commutant_dimensions.size(); ++i) {
        if (d.factor_commutant_dimensions[i] > 1) advisory.push_back(i);
    }
    j["not_absolutely_irreducible_factors"] = advisory;
    Json complements = Json::array();
    for (const auto& c : d.complements) complements.push_back(c ? to_json(*c) : Json(nullptr));
    j["complements"] = complements;
    j["semisimple"] = d.semisimple;
    return j;
}

}  // namespace gcr::io
