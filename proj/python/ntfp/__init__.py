"""n-tupled fixed point laboratory.

Thin dict-returning wrappers over the compiled core, which reports in JSON
text. Works both installed as a wheel (extension inside the package) and from
a build tree (extension on sys.path).
"""

import json as _json

try:
    from . import _ntfp as _impl
except ImportError:  # build-tree layout: extension next to the interpreter path
    import _ntfp as _impl

NtfpError = _impl.NtfpError
ParseError = _impl.ParseError
IoError = _impl.IoError
SizeLimitError = _impl.SizeLimitError

__version__ = _impl.__version__

preset_names = _impl.preset_names


def _as_text(instance):
    if isinstance(instance, (dict, list)):
        return _json.dumps(instance)
    return instance


def classify_matrix(rows, A, B):
    return _json.loads(_impl.classify_matrix(rows, A, B))


def classify_preset(name, n=None):
    return _json.loads(_impl.classify_preset(name, n))


def solve(instance, tol=1e-10, max_iters=1000, stall_window=50):
    return _json.loads(_impl.solve(_as_text(instance), tol, max_iters, stall_window))


def verify(instance, theorem, cap=10_000_000):
    return _json.loads(_impl.verify(_as_text(instance), theorem, cap))


def lemma_suite(min_n=2, max_n=3, max_size=4, trials=200, op_samples=10_000, seed=7):
    return _json.loads(
        _impl.lemma_suite(min_n, max_n, max_size, trials, op_samples, seed)
    )


def validate_space(instance):
    return _json.loads(_impl.validate_space(_as_text(instance)))
