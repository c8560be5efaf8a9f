"""JSON encodings for every structure in the package.

All indices are 0-based and every group has its identity at index 0.

    group     {"order": n, "table": [[...]]}
    action    {"actor": <group>, "targetSize": n, "perms": [[...], ...]}
    solution  {"n": n, "mult": [[...]], "theta": [[...]]}
    matched   {"A": <group>, "G": <group>, "sigma": <action>, "delta": <action>}
    extension {"matchedPair": <matched>, "xSize": k, "phi": [[...], ...]}
    brace     {"order": n, "add": [[...]], "circ": [[...]]}

Loaders ignore unknown keys, so outputs that add fields (``classOf``,
``labeling``) can be read back as the structure they extend.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .brace import SkewBraceTable, validate_skew_brace
from .classify import ExtensionSpec
from .errors import ParseError, RangeError
from .finalg import (
    GroupTable,
    LeftActionTable,
    Permutation,
    RightActionTable,
    validate_group,
    validate_left_action,
    validate_right_action,
)
from .matched import MatchedPair, validate_matched_pair
from .pesol import SolutionTable


def _get(obj: Any, key: str, where: str, kind=None):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        name = getattr(kind, "__name__", str(kind))
        raise ParseError(f"{where}.{key}: expected {name}")
    return value


def _matrix(value: Any, where: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(f"{where}: expected a list of lists")
    for i, row in enumerate(value):
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParseError(f"{where}[{i}][{j}]: expected an integer")
    return value


# -- encoders ---------------------------------------------------------------


def group_to_json(g: GroupTable) -> dict:
    return {"order": g.order, "table": g.as_lists()}


def action_to_json(a: LeftActionTable | RightActionTable) -> dict:
    return {
        "actor": group_to_json(a.actor),
        "targetSize": a.target_size,
        "perms": [list(p.images) for p in a.act],
    }


def solution_to_json(s: SolutionTable) -> dict:
    return {"n": s.n, "mult": [list(r) for r in s.mult], "theta": [list(r) for r in s.theta]}


def matched_pair_to_json(mp: MatchedPair) -> dict:
    return {
        "A": group_to_json(mp.A),
        "G": group_to_json(mp.G),
        "sigma": action_to_json(mp.sigma),
        "delta": action_to_json(mp.delta),
    }


def extension_to_json(spec: ExtensionSpec) -> dict:
    return {
        "matchedPair": matched_pair_to_json(spec.mp),
        "xSize": spec.x_size,
        "phi": [list(p.images) for p in spec.phi],
    }


def brace_to_json(b: SkewBraceTable) -> dict:
    return {"order": b.order, "add": b.add.as_lists(), "circ": b.circ.as_lists()}


# -- decoders ---------------------------------------------------------------


def group_from_json(obj: Any, where: str = "group") -> GroupTable:
    order = _get(obj, "order", where, int)
    table = _matrix(_get(obj, "table", where), f"{where}.table")
    if len(table) != order:
        raise RangeError(f"{where}.table: {len(table)} rows for order {order}")
    return validate_group(table)


def _action_parts(obj: Any, where: str):
    actor = group_from_json(_get(obj, "actor", where), f"{where}.actor")
    size = _get(obj, "targetSize", where, int)
    perms = _matrix(_get(obj, "perms", where), f"{where}.perms")
    try:
        perms = [Permutation(tuple(p)) for p in perms]
    except RangeError as exc:
        raise RangeError(f"{where}.perms: {exc}") from exc
    return actor, size, perms


def left_action_from_json(obj: Any, where: str = "action") -> LeftActionTable:
    return validate_left_action(*_action_parts(obj, where))


def right_action_from_json(obj: Any, where: str = "action") -> RightActionTable:
    return validate_right_action(*_action_parts(obj, where))


def solution_from_json(obj: Any, where: str = "solution") -> SolutionTable:
    n = _get(obj, "n", where, int)
    mult = _matrix(_get(obj, "mult", where), f"{where}.mult")
    theta = _matrix(_get(obj, "theta", where), f"{where}.theta")
    try:
        return SolutionTable(n, mult, theta)
    except RangeError as exc:
        raise RangeError(f"{where}: {exc}") from exc


def matched_pair_from_json(obj: Any, where: str = "matchedPair") -> MatchedPair:
    A = group_from_json(_get(obj, "A", where), f"{where}.A")
    G = group_from_json(_get(obj, "G", where), f"{where}.G")
    sigma = left_action_from_json(_get(obj, "sigma", where), f"{where}.sigma")
    delta = right_action_from_json(_get(obj, "delta", where), f"{where}.delta")
    if sigma.actor != A or delta.actor != G:
        raise RangeError(f"{where}: action actors must equal A and G")
    return validate_matched_pair(A, G, sigma, delta)


def extension_from_json(obj: Any, where: str = "extension") -> ExtensionSpec:
    mp = matched_pair_from_json(_get(obj, "matchedPair", where), f"{where}.matchedPair")
    k = _get(obj, "xSize", where, int)
    phi = _matrix(_get(obj, "phi", where), f"{where}.phi")
    try:
        return ExtensionSpec(mp, k, tuple(Permutation(tuple(p)) for p in phi))
    except ValueError as exc:
        raise RangeError(f"{where}.phi: {exc}") from exc


def brace_from_json(obj: Any, where: str = "brace") -> SkewBraceTable:
    order = _get(obj, "order", where, int)
    add = _matrix(_get(obj, "add", where), f"{where}.add")
    circ = _matrix(_get(obj, "circ", where), f"{where}.circ")
    if len(add) != order or len(circ) != order:
        raise RangeError(f"{where}: tables must have {order} rows")
    return validate_skew_brace(add, circ)


# -- files ------------------------------------------------------------------


def read_json(path: str | os.PathLike) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def write_json(path: str | os.PathLike, obj: Any) -> None:
    """Write via a temporary file in the target directory and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(obj))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path: str | os.PathLike, decoder):
    """Read ``path`` and decode it, prefixing errors with the file name."""
    obj = read_json(path)
    try:
        return decoder(obj)
    except (ParseError, RangeError) as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def format_table(s: SolutionTable) -> str:
    width = len(str(s.n - 1))

    def grid(title, rows):
        lines = [title]
        for r in rows:
            lines.append(" ".join(str(v).rjust(width) for v in r))
        return "\n".join(lines)

    return grid("mult", s.mult) + "\n\n" + grid("theta", s.theta)
