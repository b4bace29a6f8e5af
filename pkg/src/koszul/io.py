"""JSON wire formats for inputs and results."""

from __future__ import annotations

import hashlib
import json
from math import comb
from typing import Any, Dict, List, Sequence, Tuple

from .arrangements import Arrangement, parse_arrangement
from .core import KoszulInput
from .errors import PreconditionError
from .linalg import FieldSpec, SubspaceSpec
from .resonance import ComponentSpec


class UsageError(PreconditionError):
    """Malformed command line or input document."""


def canonical_dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(data: Any) -> str:
    return hashlib.sha256(canonical_dumps(data).encode()).hexdigest()


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def _vectors(raw, length: int, what: str) -> List[list]:
    if not isinstance(raw, list) or any(not isinstance(v, list) for v in raw):
        raise UsageError(f"{what} must be a list of coordinate lists")
    for v in raw:
        if len(v) != length:
            raise UsageError(f"{what} vector of length {len(v)}, expected {length}")
    return raw


def koszul_input_from_json(data: Dict[str, Any]) -> KoszulInput:
    """{"field": {"char": p}, "dim": n, "K": [[...]]} or with "Kperp" instead of "K"."""
    if not isinstance(data, dict) or "dim" not in data:
        raise UsageError('a Koszul input needs a "dim" entry')
    try:
        field = FieldSpec.from_json(data.get("field", {"char": 0}))
        n = int(data["dim"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad field or dimension: {exc}") from None
    N = comb(n, 2)
    if ("K" in data) == ("Kperp" in data):
        raise UsageError('give exactly one of "K" and "Kperp"')
    if "K" in data:
        return KoszulInput.from_vectors(n, _vectors(data["K"], N, "K"), field)
    return KoszulInput.from_kperp(n, _vectors(data["Kperp"], N, "Kperp"), field)


def koszul_input_to_json(inp: KoszulInput) -> Dict[str, Any]:
    F = inp.field
    return {"field": F.to_json(), "dim": inp.n, "K": [[F.format(x) for x in b] for b in inp.K.basis]}


def arrangement_from_json(data: Dict[str, Any]) -> Arrangement:
    if not isinstance(data, dict) or "forms" not in data:
        raise UsageError('an arrangement needs a "forms" entry')
    m = data.get("ambient_dim")
    forms = data["forms"]
    if not isinstance(forms, list):
        raise UsageError('"forms" must be a list')
    try:
        return parse_arrangement(forms, None if m is None else int(m))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad linear form: {exc}") from None


def graph_from_json(data: Dict[str, Any]) -> Tuple[int, List[List[int]]]:
    if not isinstance(data, dict) or "vertices" not in data:
        raise UsageError('a graph needs "vertices" and "edges"')
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise UsageError('"edges" must be a list of pairs')
    return int(data["vertices"]), [list(e) for e in edges]


def partition_from_json(data) -> Tuple[List[List[int]], List[int] | None]:
    """Either a bare list of classes or {"classes": [...], "multiplicities": [...]}."""
    if isinstance(data, list):
        return [list(map(int, c)) for c in data], None
    if isinstance(data, dict) and "classes" in data:
        mults = data.get("multiplicities")
        return [list(map(int, c)) for c in data["classes"]], (None if mults is None else [int(x) for x in mults])
    raise UsageError("a partition is a list of classes or an object with a \"classes\" entry")


def components_from_json(data, n: int, field: FieldSpec) -> List[ComponentSpec]:
    """A list of components, each a list of vectors in V^∨."""
    if not isinstance(data, list):
        raise UsageError("components must be a list of spanning sets")
    return [ComponentSpec(SubspaceSpec.span(_vectors(c, n, "component"), n, field)) for c in data]


def subspace_to_json(S: SubspaceSpec) -> Dict[str, Any]:
    return S.to_json()


def subspace_from_json(data: Dict[str, Any]) -> SubspaceSpec:
    return SubspaceSpec.from_json(data)
