"""Reading and writing algebra description files.

Text format (``.alg``)::

    # comments start with '#'
    name: su2
    basis: e1 e2 e3
    [e1, e2] = e3
    [e2, e3] = e1
    [e3, e1] = e2
    automorphism rot order 2
      e1 -> -e1
      e2 -> -e2
    end

Brackets not listed are zero; ``[b, a]`` is filled in by antisymmetry
unless it is listed too.  Inside an automorphism block each line gives the
image of one basis element; unlisted elements are fixed.  Scalars are
integers or ``p/q``.

The JSON mirror has keys ``name``, ``dim``, ``basis``, ``brackets`` (a list
of ``{"i", "j", "result": [[label, "p/q"], ...]}``) and optionally
``automorphisms`` (a list of ``{"name", "order", "matrix"}`` with the
matrix given row by row, column k being the image of basis element k).

Parsing checks syntax and dimensions only.  The Lie axioms and the
automorphism property are left to :func:`lie_core.validate` and
:meth:`TwistAutomorphism.check` so that callers can report a witness.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .catalogue import CATALOGUE, AlgebraData
from .errors import ParseError
from .lie_core import LieAlgebra, _freeze
from .linalg import ZERO, format_fraction
from .loop_bundle import TwistAutomorphism

_LABEL = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM = re.compile(rf"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*({_LABEL})?\s*")
_BRACKET = re.compile(rf"^\[\s*({_LABEL})\s*,\s*({_LABEL})\s*\]\s*=\s*(.*)$")
_AUTO = re.compile(rf"^automorphism\s+({_LABEL})\s+order\s+(\d+)$")
_IMAGE = re.compile(rf"^({_LABEL})\s*->\s*(.*)$")


def parse_scalar(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_linear(expr: str, labels: dict[str, int], lineno: int = 0) -> list[Fraction]:
    """Parse ``2 e - 1/2 f + h`` into a coordinate vector."""
    where = f"line {lineno}: " if lineno else ""
    out = [ZERO] * len(labels)
    expr = expr.strip()
    if expr in ("0", ""):
        if not expr:
            raise ParseError(f"{where}empty expression")
        return out
    pos, first = 0, True
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        sign, coeff, label = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (sign is None and not first) or label is None:
            raise ParseError(f"{where}cannot parse {expr[pos:]!r} in {expr!r}")
        if label not in labels:
            raise ParseError(f"{where}unknown basis element {label!r}")
        c = parse_scalar(coeff) if coeff else Fraction(1)
        out[labels[label]] += -c if sign == "-" else c
        pos, first = m.end(), False
    return out


def format_linear(v, labels) -> str:
    parts = []
    for x, lab in zip(v, labels):
        if not x:
            continue
        mag = format_fraction(abs(x))
        term = lab if mag == "1" else f"{mag} {lab}"
        if not parts:
            parts.append(("-" if x < 0 else "") + term)
        else:
            parts.append(("- " if x < 0 else "+ ") + term)
    return " ".join(parts) if parts else "0"


def _build(name, basis, entries, autos, where="") -> AlgebraData:
    if not basis:
        raise ParseError(f"{where}missing basis")
    if len(set(basis)) != len(basis):
        raise ParseError(f"{where}duplicate basis labels")
    n = len(basis)
    idx = {lab: i for i, lab in enumerate(basis)}
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    given = set()
    for a, b, vec, line in entries:
        for lab in (a, b):
            if lab not in idx:
                raise ParseError(f"{line}unknown basis element {lab!r}")
        i, j = idx[a], idx[b]
        if (i, j) in given:
            raise ParseError(f"{line}bracket [{a}, {b}] given twice")
        given.add((i, j))
        c[i][j] = list(vec)
    for i, j in list(given):
        if (j, i) not in given:
            c[j][i] = [-x for x in c[i][j]]
    alg = LieAlgebra(tuple(basis), _freeze(c), name)
    automorphisms = {}
    for aname, order, matrix in autos:
        if aname in automorphisms:
            raise ParseError(f"{where}automorphism {aname!r} declared twice")
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise ParseError(f"{where}automorphism {aname!r} is not {n}x{n}")
        automorphisms[aname] = TwistAutomorphism.from_matrix(matrix, order, aname)
    return AlgebraData(alg, automorphisms)


def parse_text(text: str) -> AlgebraData:
    name, basis = "", None
    entries, autos = [], []
    block = None  # (name, order, images, start line)
    idx: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        at = f"line {lineno}: "
        if block is not None:
            if line == "end":
                bname, order, images, _ = block
                n = len(basis)
                cols = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
                for k, v in images.items():
                    cols[k] = v
                autos.append((bname, order, [[cols[k][i] for k in range(n)] for i in range(n)]))
                block = None
                continue
            m = _IMAGE.match(line)
            if not m:
                raise ParseError(f"{at}expected 'x -> expression' or 'end', got {line!r}")
            if m.group(1) not in idx:
                raise ParseError(f"{at}unknown basis element {m.group(1)!r}")
            k = idx[m.group(1)]
            if k in block[2]:
                raise ParseError(f"{at}image of {m.group(1)!r} given twice")
            block[2][k] = parse_linear(m.group(2), idx, lineno)
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
        elif line.startswith("basis:"):
            if basis is not None:
                raise ParseError(f"{at}basis given twice")
            basis = line[6:].replace(",", " ").split()
            for lab in basis:
                if not re.fullmatch(_LABEL, lab):
                    raise ParseError(f"{at}invalid basis label {lab!r}")
            idx = {lab: i for i, lab in enumerate(basis)}
        elif line.startswith("dim:"):
            continue  # informational; the basis determines the dimension
        elif m := _BRACKET.match(line):
            if basis is None:
                raise ParseError(f"{at}bracket before basis")
            entries.append((m.group(1), m.group(2), parse_linear(m.group(3), idx, lineno), at))
        elif m := _AUTO.match(line):
            if basis is None:
                raise ParseError(f"{at}automorphism before basis")
            block = (m.group(1), int(m.group(2)), {}, lineno)
        else:
            raise ParseError(f"{at}cannot parse {line!r}")
    if block is not None:
        raise ParseError(f"automorphism {block[0]!r} opened on line {block[3]} is not closed by 'end'")
    return _build(name, basis, entries, autos)


def parse_json(text: str) -> AlgebraData:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    try:
        basis = [str(b) for b in data["basis"]]
        if "dim" in data and int(data["dim"]) != len(basis):
            raise ParseError(f"dim = {data['dim']} but {len(basis)} basis labels")
        idx = {lab: i for i, lab in enumerate(basis)}
        entries = []
        for e in data.get("brackets", []):
            vec = [ZERO] * len(basis)
            for lab, coeff in e["result"]:
                if lab not in idx:
                    raise ParseError(f"unknown basis element {lab!r}")
                vec[idx[lab]] += parse_scalar(str(coeff))
            entries.append((e["i"], e["j"], vec, ""))
        autos = [
            (a["name"], int(a["order"]), [[parse_scalar(str(x)) for x in row] for row in a["matrix"]])
            for a in data.get("automorphisms", [])
        ]
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed algebra JSON: {e!r}") from None
    return _build(str(data.get("name", "")), basis, entries, autos)


def parse(text: str) -> AlgebraData:
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def _bracket_entries(alg: LieAlgebra):
    """Pairs that must be written: i <= j, plus (j, i) entries that are not the negative."""
    c = alg.structure
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            if any(c[i][j]) or (i != j and any(c[j][i])):
                yield i, j
                if i != j and any(x != -y for x, y in zip(c[j][i], c[i][j])):
                    yield j, i


def write_text(data: AlgebraData) -> str:
    alg = data.algebra
    lines = []
    if alg.name:
        lines.append(f"name: {alg.name}")
    lines.append("basis: " + " ".join(alg.labels))
    for i, j in _bracket_entries(alg):
        lines.append(f"[{alg.labels[i]}, {alg.labels[j]}] = {format_linear(alg.structure[i][j], alg.labels)}")
    for name, tw in data.automorphisms.items():
        lines.append(f"automorphism {name} order {tw.order}")
        for k in range(alg.dim):
            col = [tw.phi[i][k] for i in range(alg.dim)]
            if any(x != int(i == k) for i, x in enumerate(col)):
                lines.append(f"  {alg.labels[k]} -> {format_linear(col, alg.labels)}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def write_json(data: AlgebraData) -> str:
    alg = data.algebra
    out = {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.labels),
        "brackets": [
            {
                "i": alg.labels[i],
                "j": alg.labels[j],
                "result": [[alg.labels[k], format_fraction(x)] for k, x in enumerate(alg.structure[i][j]) if x],
            }
            for i, j in _bracket_entries(alg)
        ],
    }
    if data.automorphisms:
        out["automorphisms"] = [
            {"name": name, "order": tw.order, "matrix": [[format_fraction(x) for x in row] for row in tw.phi]}
            for name, tw in data.automorphisms.items()
        ]
    return json.dumps(out, indent=2) + "\n"


def bundled_path(name: str) -> Path | None:
    stem = name[:-4] if name.endswith(".alg") else name
    p = resources.files("gaugecocycles") / "data" / f"{stem}.alg"
    return Path(str(p)) if p.is_file() else None


def load_algebra(source: str | Path) -> AlgebraData:
    """Read a file path; bare names of bundled algebras (``su2``, ``so4.alg``) also work."""
    path = Path(source)
    if not path.is_file():
        bundled = bundled_path(str(source))
        if bundled is None:
            raise ParseError(f"no such file {str(source)!r} and no bundled algebra of that name (bundled: {', '.join(sorted(CATALOGUE))})")
        path = bundled
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    data = parse_json(text) if path.suffix == ".json" else parse(text)
    if not data.algebra.name:
        data = AlgebraData(LieAlgebra(data.algebra.labels, data.algebra.structure, path.stem), data.automorphisms)
    return data
