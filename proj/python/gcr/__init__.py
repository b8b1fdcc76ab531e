"""Exact complete-reducibility and instability computations over Q and F_p.

Requests and reports use the same JSON documents as the ``gcr`` command line
tool; these helpers accept and return plain Python objects.
"""

import json

from ._gcr import BudgetExceeded, default_corpus as _default_corpus, run as _run, selftest as _selftest

__all__ = [
    "BudgetExceeded",
    "run",
    "check",
    "limit",
    "optimize",
    "semisimplify",
    "borel_tits",
    "witness",
    "orbit_dim",
    "selftest",
    "default_corpus",
    "rationals",
    "prime_field",
]


def rationals():
    return {"kind": "rationals"}


def prime_field(p):
    return {"kind": "prime_field", "p": p}


def _literal(matrix):
    return [[str(x) for x in row] for row in matrix]


def run(request, threads=1, budget=None):
    """Run a request (dict or JSON text) and return the report as a dict."""
    text = request if isinstance(request, str) else json.dumps(request)
    return json.loads(_run(text, threads, budget))


def _tuple_job(command, field, generators, **kwargs):
    request = {"command": command, "field": field, "generators": [_literal(g) for g in generators]}
    return run(request, **kwargs)


def check(field, generators, **kwargs):
    return _tuple_job("check", field, generators, **kwargs)


def semisimplify(field, generators, **kwargs):
    return _tuple_job("semisimplify", field, generators, **kwargs)


def borel_tits(field, generators, **kwargs):
    return _tuple_job("borel-tits", field, generators, **kwargs)


def witness(field, generators, **kwargs):
    return _tuple_job("witness", field, generators, **kwargs)


def orbit_dim(field, generators, **kwargs):
    return _tuple_job("orbit-dim", field, generators, **kwargs)


def limit(field, lambda_, matrix=None, generators=None, conjugator=None, ru_search=False, **kwargs):
    request = {"command": "limit", "field": field, "lambda": list(lambda_)}
    if matrix is not None:
        request["matrix"] = _literal(matrix)
    if generators is not None:
        request["generators"] = [_literal(g) for g in generators]
    if conjugator is not None:
        request["conjugator"] = _literal(conjugator)
    if ru_search:
        request["ru_search"] = True
    return run(request, **kwargs)


def optimize(weights, box=None, **kwargs):
    request = {"command": "optimize", "weights": [list(w) for w in weights]}
    if box is not None:
        request["box"] = box
    return run(request, **kwargs)


def selftest(threads=1, budget=None):
    """Run the bundled corpus; returns (exit_code, report dict)."""
    code, text = _selftest(threads, budget)
    return code, json.loads(text)


def default_corpus():
    return json.loads(_default_corpus())
