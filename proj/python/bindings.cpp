#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcr/io.hpp"

namespace py = pybind11;

namespace {

gcr::SearchOptions options_of(unsigned threads, std::optional<std::uint64_t> budget) {
    gcr::SearchOptions options;
    options.threads = threads == 0 ? 1 : threads;
    if (budget) options.budget = *budget;
    return options;
}

// The request's own budget applies unless the caller overrides it.
std::string run_json(const std::string& request, unsigned threads, std::optional<std::uint64_t> budget) {
    gcr::io::JobRequest job = gcr::io::parse_request_text(request);
    if (budget) job.budget = *budget;
    const gcr::SearchOptions options = options_of(threads, budget);
    py::gil_scoped_release release;
    return gcr::io::run(job, options).dump();
}

py::tuple selftest_json(unsigned threads, std::optional<std::uint64_t> budget) {
    gcr::io::JobRequest job;
    job.command = gcr::io::Command::selftest;
    job.budget = budget;
    int code = gcr::io::ExitCode::ok;
    std::string report;
    {
        py::gil_scoped_release release;
        report = gcr::io::selftest(job, options_of(threads, budget), code).dump();
    }
    return py::make_tuple(code, report);
}

}  // namespace

PYBIND11_MODULE(_gcr, m) {
    m.doc() = "Exact complete-reducibility and instability computations over Q and F_p.";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> budget_exceeded;
    budget_exceeded.call_once_and_store_result(
        [&]() { return py::exception<gcr::BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const gcr::BudgetExceeded& e) {
            py::set_error(budget_exceeded.get_stored(), e.what());
        } catch (const gcr::InvalidArgument& e) {
            py::set_error(PyExc_ValueError, e.what());
        } catch (const gcr::InternalError& e) {
            py::set_error(PyExc_RuntimeError, e.what());
        }
    });

    m.def("run", &run_json, py::arg("request"), py::arg("threads") = 1, py::arg("budget") = py::none(),
          "Run one JSON job and return the JSON report.");
    m.def("selftest", &selftest_json, py::arg("threads") = 1, py::arg("budget") = py::none(),
          "Run the bundled corpus; returns (exit_code, JSON report).");
    m.def("default_corpus", [] { return gcr::io::default_corpus().dump(); });
}
