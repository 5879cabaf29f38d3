"""Reading and writing the plain-text QP format.

    qp v1
    vertices 4
    frozen 4
    arrow a 1 2
    arrow b 1 2
    term 1 a b c
    term -1/2 x y

Blank lines and ``#`` comments are ignored; anything else is an error.
"""

from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import ParseError, ValidationError
from .quiver import QP, Arrow, Potential, Quiver

HEADER = "qp v1"


def parse_qp(text):
    lines = text.splitlines()
    n = None
    frozen = set()
    arrows = []
    terms = []
    seen_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        word, *rest = line.split()
        if word == "vertices":
            if n is not None or len(rest) != 1:
                raise ParseError("vertices must be given once, as one integer", lineno)
            n = _int(rest[0], lineno)
        elif word == "frozen":
            for tok in " ".join(rest).replace(",", " ").split():
                frozen.add(_int(tok, lineno))
        elif word == "arrow":
            if len(rest) != 3:
                raise ParseError("arrow lines read: arrow <id> <tail> <head>", lineno)
            tail, head = _int(rest[1], lineno), _int(rest[2], lineno)
            if tail == head:
                raise ParseError(f"arrow {rest[0]} is a loop", lineno)
            arrows.append(Arrow(rest[0], tail, head))
        elif word == "term":
            if len(rest) < 2:
                raise ParseError("term lines read: term <num>[/<den>] <arrow ids...>", lineno)
            try:
                coef = Fraction(rest[0])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {rest[0]!r}", lineno) from None
            if coef == 0:
                raise ParseError("zero coefficient", lineno)
            terms.append((coef, tuple(rest[1:])))
        else:
            raise ParseError(f"unknown line {word!r}", lineno)
    if not seen_header:
        raise ParseError("empty file")
    if n is None:
        raise ParseError("missing vertices line")
    try:
        return QP(Quiver(n, tuple(arrows), frozenset(frozen)), Potential(tuple(terms)))
    except ValidationError as exc:
        raise ValidationError(str(exc)) from None


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def emit_qp(qp):
    q = qp.quiver
    out = [HEADER, f"vertices {q.n}"]
    if q.frozen:
        out.append("frozen " + " ".join(str(v) for v in sorted(q.frozen)))
    for a in q.arrows:
        out.append(f"arrow {a.id} {a.tail} {a.head}")
    for c, cyc in qp.potential.terms:
        out.append(f"term {c} {' '.join(cyc)}")
    return "\n".join(out) + "\n"


def load_qp(path):
    """Read a QP file; bare names fall back to the bundled corpus."""
    p = Path(path)
    if p.exists():
        return parse_qp(p.read_text(encoding="utf-8"))
    bundled = resources.files("qprank") / "data" / p.name
    if bundled.is_file():
        return parse_qp(bundled.read_text(encoding="utf-8"))
    raise ValidationError(f"no such QP file: {path}")


def corpus_names():
    return sorted(f.name for f in (resources.files("qprank") / "data").iterdir() if f.name.endswith(".qp"))
