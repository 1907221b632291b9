"""JSON problem files: parsing, validation, and emission.

A problem file fixes the field, the weighted variables, an optional
quotient ideal, the parameter list, and the complex (twists per module in
R(a) notation, maps row-major as polynomial strings).  Output files add a
``labels`` block naming each basis element of the output complex, the
verification ``report``, and the ``source_complex`` the transform was run
on, so they can be re-verified standalone.

Twist sign convention: the file stores R(a)-style twists (EX-A's F_1 is
R(-2)^2, written [-2, -2]); internally a basis element of R(a) has degree
-a, which is what GradedFreeModule.twists records.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .complexes import FreeComplex, check_complex
from .errors import ParseError, ValidationError
from .fields import field_from_spec
from .modules import GradedFreeModule
from .poly import PolyMatrix, PolyRing, format_polynomial
from .verify import VerificationReport


@dataclass
class ProblemFile:
    ring: PolyRing
    sop_texts: tuple
    complex: FreeComplex
    labels: tuple = None
    report: VerificationReport = None
    source_complex: FreeComplex = None

    @property
    def n(self):
        return len(self.sop_texts)

    def sop_polys(self):
        return tuple(self.ring.parse(t) for t in self.sop_texts)

    def with_field(self, field):
        ring = PolyRing(field, self.ring.names, self.ring.weights)
        if self.ring.quotient:
            ring = ring.with_quotient(
                tuple(ring.parse(format_polynomial(g)) for g in self.ring.quotient)
            )
        return ProblemFile(
            ring,
            self.sop_texts,
            _reparse_complex(ring, self.complex),
            self.labels,
            self.report,
            _reparse_complex(ring, self.source_complex)
            if self.source_complex
            else None,
        )


def _reparse_complex(ring, comp):
    modules = tuple(
        GradedFreeModule(ring, m.rank, m.twists) for m in comp.modules
    )
    maps = tuple(
        PolyMatrix(
            ring,
            [[ring.parse(format_polynomial(e)) for e in row] for row in m.entries],
            m.nrows,
            m.ncols,
        )
        for m in comp.maps
    )
    return FreeComplex(ring, modules, maps, comp.labels)


def _require(data, key, kind, where):
    if key not in data:
        raise ParseError(f"missing {key!r} in {where}")
    val = data[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{key!r} in {where} has the wrong type")
    return val


def _parse_field(data):
    spec = _require(data, "field", dict, "problem file")
    ftype = _require(spec, "type", str, "field block")
    if ftype == "rational":
        return field_from_spec("rational")
    if ftype == "prime":
        p = _require(spec, "p", int, "field block")
        return field_from_spec(f"p:{p}")
    raise ParseError(f"unknown field type {ftype!r}")


def _parse_ring(data):
    field = _parse_field(data)
    variables = _require(data, "variables", list, "problem file")
    names = []
    weights = []
    for k, v in enumerate(variables):
        if not isinstance(v, dict):
            raise ParseError(f"variable {k} must be an object")
        names.append(_require(v, "name", str, f"variable {k}"))
        weights.append(int(v.get("degree", 1)))
    ring = PolyRing(field, tuple(names), tuple(weights))
    quotient = data.get("quotient")
    if quotient:
        gens = tuple(ring.parse(t) for t in quotient)
        for k, g in enumerate(gens):
            if not isinstance(g.homogeneous_degree(), int):
                raise ValidationError(f"quotient generator {k} is not homogeneous")
        ring = ring.with_quotient(gens)
    return ring


def _parse_complex(ring, data, where="complex"):
    twists_block = _require(data, "twists", list, where)
    maps_block = _require(data, "maps", list, where)
    modules = []
    for k, tw in enumerate(twists_block):
        if not isinstance(tw, list) or not all(isinstance(t, int) for t in tw):
            raise ParseError(f"twists of module {k} must be a list of integers")
        # file stores R(a) twists; internal degree of the generator is -a
        modules.append(
            GradedFreeModule(ring, len(tw), tuple(-t for t in tw))
        )
    if len(maps_block) != len(modules) - 1:
        raise ValidationError(
            f"{where}: expected {len(modules) - 1} maps for "
            f"{len(modules)} modules, got {len(maps_block)}"
        )
    maps = []
    for k, rows in enumerate(maps_block):
        target = modules[k]
        source = modules[k + 1]
        if not isinstance(rows, list) or len(rows) != target.rank:
            raise ValidationError(
                f"map {k + 1} must have {target.rank} rows"
            )
        entries = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != source.rank:
                raise ValidationError(
                    f"map {k + 1}, row {i}: expected {source.rank} entries"
                )
            entries.append([ring.parse(s) for s in row])
        maps.append(PolyMatrix(ring, entries, target.rank, source.rank))
    return FreeComplex(ring, tuple(modules), tuple(maps))


def _parse_labels(block, n_modules):
    if block is None:
        return None
    if len(block) != n_modules:
        raise ValidationError("labels block must cover every module")
    out = []
    for position in block:
        labels = []
        for item in position:
            kind = item[0]
            if kind == "bracket":
                labels.append(("bracket", int(item[1]), tuple(item[2])))
            elif kind == "angle":
                labels.append(("angle", int(item[1])))
            elif kind == "star":
                labels.append(("star", int(item[1]), int(item[2])))
            else:
                raise ParseError(f"unknown label kind {kind!r}")
        out.append(tuple(labels))
    return tuple(out)


def parse_problem(path):
    """Read and fully validate a problem (or output) file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    return problem_from_jsonable(data)


def problem_from_jsonable(data):
    ring = _parse_ring(data)
    sop_texts = tuple(_require(data, "sop", list, "problem file"))
    if not all(isinstance(t, str) for t in sop_texts):
        raise ParseError("sop entries must be polynomial strings")
    complex_block = _require(data, "complex", dict, "problem file")
    comp = _parse_complex(ring, complex_block)
    labels = _parse_labels(data.get("labels"), len(comp.modules))
    if labels is not None:
        comp = FreeComplex(ring, comp.modules, comp.maps, labels)
    if len(sop_texts) != comp.length:
        raise ValidationError(
            f"complex length {comp.length} does not match the "
            f"{len(sop_texts)} parameters"
        )
    defect = check_complex(comp)
    if defect is not None:
        raise ValidationError(f"not a valid complex: {defect.message}")
    report = None
    if "report" in data:
        report = VerificationReport.from_jsonable(data["report"])
    source = None
    if "source_complex" in data:
        source = _parse_complex(ring, data["source_complex"], "source_complex")
        sdefect = check_complex(source)
        if sdefect is not None:
            raise ValidationError(
                f"source_complex is not a valid complex: {sdefect.message}"
            )
    # re-canonicalize each sop string so round trips are bit-identical
    sop_texts = tuple(format_polynomial(ring.parse(t)) for t in sop_texts)
    return ProblemFile(ring, sop_texts, comp, comp.labels, report, source)


def _field_jsonable(field):
    if field.name == "rational":
        return {"type": "rational"}
    return {"type": "prime", "p": field.p}


def _complex_jsonable(comp):
    twists = [[-t for t in m.twists] for m in comp.modules]
    maps = [
        [[format_polynomial(e) for e in row] for row in m.entries]
        for m in comp.maps
    ]
    return {"twists": twists, "maps": maps}


def _labels_jsonable(labels):
    out = []
    for position in labels:
        encoded = []
        for item in position:
            if item[0] == "bracket":
                encoded.append(["bracket", item[1], list(item[2])])
            elif item[0] == "angle":
                encoded.append(["angle", item[1]])
            else:
                encoded.append(["star", item[1], item[2]])
        out.append(encoded)
    return out


def problem_to_jsonable(pf):
    data = {
        "field": _field_jsonable(pf.ring.field),
        "variables": [
            {"name": n, "degree": w}
            for n, w in zip(pf.ring.names, pf.ring.weights)
        ],
    }
    if pf.ring.quotient:
        data["quotient"] = [format_polynomial(g) for g in pf.ring.quotient]
    data["sop"] = list(pf.sop_texts)
    data["complex"] = _complex_jsonable(pf.complex)
    if pf.labels is not None:
        data["labels"] = _labels_jsonable(pf.labels)
    if pf.report is not None:
        data["report"] = pf.report.to_jsonable()
    if pf.source_complex is not None:
        data["source_complex"] = _complex_jsonable(pf.source_complex)
    return data


def emit_problem(pf, path):
    text = json.dumps(problem_to_jsonable(pf), indent=1)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def emit_star(star, report, path, base, input_complex):
    """Write an output complex with labels, report and source complex.

    ``base`` supplies the ring and parameter strings; the written file
    re-parses to the identical structure (idempotent round trip).
    """
    pf = ProblemFile(
        base.ring,
        base.sop_texts,
        star.complex,
        star.complex.labels,
        report,
        input_complex,
    )
    emit_problem(pf, path)
    return pf


def star_from_problem(pf):
    """Rebuild a StarComplex (labels, selection counts) from a parsed
    output file; requires the labels block."""
    from .transform import StarComplex

    if pf.labels is None:
        raise ValidationError("file has no labels block; not an output file")
    n = pf.complex.length
    star_pairs = tuple(
        (item[1], item[2]) for item in pf.labels[n] if item[0] == "star"
    )
    retained_basis = tuple(
        item[1] for item in pf.labels[n - 1] if item[0] == "angle"
    )
    top_rank = (
        pf.source_complex.top_rank() if pf.source_complex is not None else 0
    )
    all_pairs = [
        (lam, i) for lam in range(top_rank) for i in range(1, n + 1)
    ]
    selected_pairs = tuple(p for p in all_pairs if p not in set(star_pairs))
    return StarComplex(
        pf.complex,
        star_pairs,
        selected_pairs,
        retained_basis,
        len(star_pairs) == 0,
    )
