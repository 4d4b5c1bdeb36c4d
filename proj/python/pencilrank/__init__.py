"""Exact orbit-equivalence decisions for tuples of matrices.

Tuples, pencils and verdicts are JSON documents. Every function accepts
either a JSON string or the equivalent dict and returns parsed dicts.
"""

import json

from . import _core
from ._core import Error, FormatError, InternalError, ParseError

__all__ = [
    "Error",
    "FormatError",
    "InternalError",
    "ParseError",
    "decompose",
    "demo",
    "linearize",
    "lr_equiv",
    "ncpoly_rank",
    "pencil_rank",
    "similar",
    "sl_equiv",
    "tuple_document",
    "verify",
    "witness",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def tuple_document(matrices, field="Q"):
    """Builds a tuple document from nested lists of entries."""
    if not matrices:
        raise ValueError("at least one matrix is needed to infer the shape")
    p, q = len(matrices[0]), len(matrices[0][0]) if matrices[0] else 0
    rows = [[[str(x) for x in row] for row in mat] for mat in matrices]
    return {"field": field, "m": len(matrices), "p": p, "q": q, "matrices": rows}


def similar(a, b, seed=0, involution=None):
    return json.loads(_core.similar(_text(a), _text(b), seed, involution))


def lr_equiv(a, b, seed=0):
    return json.loads(_core.lr_equiv(_text(a), _text(b), seed))


def sl_equiv(a, b, seed=0, outside_nullcone=False):
    return json.loads(_core.sl_equiv(_text(a), _text(b), seed, outside_nullcone))


def witness(a, b, seed=0):
    return json.loads(_core.witness(_text(a), _text(b), seed))


def verify(verdict):
    """Returns None when the verdict checks out, otherwise the reason."""
    reason = _core.verify(_text(verdict))
    return reason or None


def pencil_rank(pencil, a):
    return _core.pencil_rank(_text(pencil), _text(a))


def ncpoly_rank(expr, a):
    return _core.ncpoly_rank(expr, _text(a))


def linearize(expr, m, field="Q"):
    return json.loads(_core.linearize(expr, m, field))


def decompose(a, quiver=False, seed=0):
    return json.loads(_core.decompose(_text(a), quiver, seed))


def demo(name, seed=0):
    return json.loads(_core.demo(name, seed))
