"""JSON instance files.

Rationals are written as ``"p/q"`` strings (or ``"p"``); JSON numbers are
refused wherever a rational is expected so nothing passes through a float.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .chains import ChainComplexData, ComplexError, SimplicialComplex, SparseMatrix
from .embedded import VoidData
from .flows import make_network
from .generators import Expected, InstanceBundle

__all__ = [
    "FORMAT_VERSION",
    "InstanceFormatError",
    "parse_rational",
    "format_rational",
    "bundle_to_dict",
    "bundle_from_dict",
    "dumps",
    "loads",
    "load",
    "save",
]

FORMAT_VERSION = 1


class InstanceFormatError(ValueError):
    """The file is not a well-formed instance (as opposed to an invalid network)."""


def parse_rational(x) -> Fraction:
    if not isinstance(x, str):
        raise InstanceFormatError(f"rational values must be strings like \"1/2\", got {x!r}")
    try:
        q = Fraction(x.strip())
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"not a rational: {x!r}") from None
    if any(c in x for c in ".eE"):
        raise InstanceFormatError(f"decimal notation is not accepted: {x!r}")
    return q


def format_rational(q) -> str:
    return str(Fraction(q))


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InstanceFormatError(f"{what} must be an integer, got {x!r}")
    return x


def _get(obj: dict, key: str, what: str = "instance"):
    try:
        return obj[key]
    except (KeyError, TypeError):
        raise InstanceFormatError(f"{what} is missing {key!r}") from None


def bundle_to_dict(b: InstanceBundle) -> dict[str, Any]:
    net = b.network
    out: dict[str, Any] = {"format": FORMAT_VERSION, "name": b.name}
    if b.description:
        out["description"] = b.description
    sc = b.simplicial
    if sc is not None:
        out["kind"] = "simplicial"
        out["n_vertices"] = sc.n_vertices
        out["simplices"] = [[list(s) for s in dim] for dim in sc.simplices]
        out["reversed"] = sorted(sc.orientation)
        if sc.vertex_labels is not None:
            out["vertex_labels"] = list(sc.vertex_labels)
        faces = sc.simplices[net.d - 1]
        out["gamma"] = [
            {"coefficient": format_rational(g), "simplex": list(faces[i])} for i, g in enumerate(net.gamma) if g
        ]
    else:
        cx = net.complex
        out["kind"] = "chain"
        out["dims"] = list(cx.dims)
        out["boundaries"] = [[[i, j, format_rational(v)] for i, j, v in m.entries] for m in cx.boundaries]
        if cx.labels is not None:
            out["labels"] = [list(x) for x in cx.labels]
        out["gamma"] = [{"coefficient": format_rational(g), "index": i} for i, g in enumerate(net.gamma) if g]
    out["capacities"] = [format_rational(c) for c in net.capacities]
    if b.voids is not None:
        v = b.voids
        out["voids"] = {
            "count": v.n_voids,
            "unbounded": v.unbounded,
            "sides": [list(s) for s in v.sides],
            "source": v.source,
            "gamma1": sorted(v.gamma1),
            "gamma2": sorted(v.gamma2),
        }
    if b.expected:
        out["expected"] = {
            k: {"value": format_rational(e.value), "provenance": e.provenance} for k, e in b.expected.items()
        }
    if b.parts:
        out["parts"] = {k: list(v) for k, v in b.parts.items()}
    return out


def bundle_from_dict(obj: dict) -> InstanceBundle:
    """Parse a decoded instance.

    Structural problems raise :class:`InstanceFormatError`; a well-formed
    file describing an invalid complex or network raises the library's own
    validation errors.
    """
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance must be a JSON object")
    if obj.get("format") != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported format version {obj.get('format')!r}")
    kind = _get(obj, "kind")
    simplicial = None
    try:
        if kind == "simplicial":
            n = _int(_get(obj, "n_vertices"), "n_vertices")
            simplices = tuple(
                tuple(tuple(_int(v, "vertex") for v in s) for s in dim) for dim in _get(obj, "simplices")
            )
            orientation = {_int(i, "reversed index"): -1 for i in obj.get("reversed", [])}
            labels = obj.get("vertex_labels")
            simplicial = SimplicialComplex(n, simplices, orientation, tuple(labels) if labels else None)
            cx = simplicial.to_chain_complex()
        elif kind == "chain":
            dims = tuple(_int(x, "dimension size") for x in _get(obj, "dims"))
            mats = []
            for k, entries in enumerate(_get(obj, "boundaries"), start=1):
                ents = tuple((_int(i, "row"), _int(j, "column"), parse_rational(v)) for i, j, v in entries)
                if k >= len(dims):
                    raise InstanceFormatError("more boundary matrices than dimensions")
                mats.append(SparseMatrix(dims[k - 1], dims[k], ents))
            labels = obj.get("labels")
            cx = ChainComplexData(dims, tuple(mats), tuple(tuple(x) for x in labels) if labels else None)
        else:
            raise InstanceFormatError(f"unknown instance kind {kind!r}")
    except (InstanceFormatError, ComplexError):
        raise
    except (TypeError, ValueError) as e:
        raise InstanceFormatError(f"malformed complex: {e}") from None
    d = cx.dimension
    gamma = [Fraction(0)] * cx.dims[d - 1] if d >= 1 else []
    for term in _get(obj, "gamma"):
        coef = parse_rational(_get(term, "coefficient", "gamma term"))
        if "simplex" in term:
            if simplicial is None:
                raise InstanceFormatError("gamma terms of a chain instance must use 'index'")
            i = simplicial.index([_int(v, "vertex") for v in term["simplex"]])
        else:
            i = _int(_get(term, "index", "gamma term"), "gamma index")
            if not 0 <= i < len(gamma):
                raise InstanceFormatError(f"gamma index {i} out of range")
        gamma[i] += coef
    caps = [parse_rational(c) for c in _get(obj, "capacities")]
    net = make_network(cx, caps, gamma)
    voids = None
    if "voids" in obj:
        v = obj["voids"]
        voids = VoidData(
            _int(_get(v, "count", "voids"), "void count"),
            _int(_get(v, "unbounded", "voids"), "unbounded void"),
            tuple((_int(a, "void"), _int(b, "void")) for a, b in _get(v, "sides", "voids")),
            _int(_get(v, "source", "voids"), "source void"),
            frozenset(_int(j, "simplex index") for j in _get(v, "gamma1", "voids")),
            frozenset(_int(j, "simplex index") for j in _get(v, "gamma2", "voids")),
        )
    expected = {}
    for k, e in obj.get("expected", {}).items():
        expected[k] = Expected(parse_rational(_get(e, "value", "expected entry")), str(_get(e, "provenance", "expected entry")))
    parts = {k: list(v) for k, v in obj.get("parts", {}).items()}
    return InstanceBundle(
        str(obj.get("name", "")),
        net,
        voids,
        expected,
        str(obj.get("description", "")),
        simplicial,
        parts,
    )


def dumps(b: InstanceBundle) -> str:
    return json.dumps(bundle_to_dict(b), indent=1, ensure_ascii=False)


def reject_float(s: str):
    raise InstanceFormatError(f"floating point number {s} in instance file")


def loads(text: str) -> InstanceBundle:
    try:
        obj = json.loads(text, parse_float=reject_float)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"invalid JSON: {e}") from None
    return bundle_from_dict(obj)


def load(path) -> InstanceBundle:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(b: InstanceBundle, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(b))
        fh.write("\n")
