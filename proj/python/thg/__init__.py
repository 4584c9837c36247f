"""Torus homotopy groups, Rhodes groups and their Gottlieb subgroups.

The algebra kernel is exposed directly; model-level commands return the
parsed JSON document produced by the command line tool.
"""

import json

from ._core import (
    ThgError,
    cokernel,
    invariant_factors,
    multiplicities,
    run,
    smith_diagonal,
    subgroup_index,
)

__all__ = [
    "ThgError",
    "CommandError",
    "cokernel",
    "invariant_factors",
    "multiplicities",
    "run",
    "smith_diagonal",
    "subgroup_index",
    "command",
    "tau",
    "sigma",
    "gtau",
    "gsigma",
    "g0",
    "classify",
    "verify",
    "audit",
    "show",
    "catalog",
]


class CommandError(RuntimeError):
    """A command exited with a usage or computation error."""

    def __init__(self, code, message):
        super().__init__(message.strip())
        self.code = code


def command(*args, catalog_dir=None):
    """Runs a thg command with JSON output and returns the parsed document.

    Check commands that find a failure still return their document; its "ok"
    field is false.
    """
    argv = [str(a) for a in args] + ["--format", "json"]
    if catalog_dir is not None:
        argv += ["--catalog-dir", str(catalog_dir)]
    code, out, err = run(argv)
    if code in (1, 2):
        raise CommandError(code, err)
    return json.loads(out)


def _degree(verb, target, n, **kw):
    return command(verb, target, "--n", n, **kw)["result"]


def tau(target, n, **kw):
    return _degree("tau", target, n, **kw)


def sigma(target, n, **kw):
    return _degree("sigma", target, n, **kw)


def gtau(target, n, **kw):
    return _degree("gtau", target, n, **kw)


def gsigma(target, n, **kw):
    return _degree("gsigma", target, n, **kw)


def g0(target, **kw):
    return command("g0", target, **kw)["result"]


def show(target, **kw):
    return command("show", target, **kw)["result"]


def catalog(**kw):
    return command("list", **kw)["result"]


def _bounded(verb, target, max_n, **kw):
    args = [verb] + (["--all"] if target is None else [target])
    if max_n is not None:
        args += ["--max-n", max_n]
    return command(*args, **kw)


def classify(target, max_n=None, **kw):
    return _bounded("classify", target, max_n, **kw)["result"]


def verify(target=None, max_n=None, **kw):
    """Whole catalog when target is None."""
    return _bounded("verify", target, max_n, **kw)


def audit(target, max_n=None, **kw):
    return _bounded("audit", target, max_n, **kw)
