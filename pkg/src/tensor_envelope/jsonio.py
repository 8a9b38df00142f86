"""JSON encodings of objects, morphisms, complexes and modules."""

from __future__ import annotations

from .diagram import DiagMorphism
from .errors import ConfigError
from .hw import Summand
from .relations import NRelation
from .scalar import ScalarParseError, parse_scalar


def object_from_json(cat, obj):
    if isinstance(obj, int):
        return cat.obj(obj)
    if isinstance(obj, dict):
        backend = obj.get("backend", cat.backend).replace("-", "_")
        if backend != cat.backend:
            raise ConfigError(f"object for backend {backend!r} given to {cat.backend!r}")
        if backend == "finvec" and int(obj.get("q", cat.q)) != cat.q:
            raise ConfigError(f"object over F_{obj.get('q')} given to F_{cat.q}")
        return cat.obj(int(obj.get("size", obj.get("dim", 0))))
    raise ConfigError(f"cannot read an object from {obj!r}")


def relation_to_json(cat, R: NRelation):
    return cat.canon_to_json(R.key)


def morphism_to_json(D, M: DiagMorphism) -> dict:
    cat = D.cat
    return {"source": M.source.to_json(), "target": M.target.to_json(),
            "terms": [{"relation": relation_to_json(cat, r), "coeff": D.F.format(c)}
                      for r, c in M.items()]}


def morphism_from_json(D, obj) -> DiagMorphism:
    cat = D.cat
    try:
        X = object_from_json(cat, obj["source"])
        Y = object_from_json(cat, obj["target"])
        basis = set(D.hom_basis(X, Y))
        terms = {}
        for term in obj.get("terms", []):
            R = NRelation((X, Y), cat.canon_from_json(term["relation"]))
            if R not in basis:
                raise ConfigError(f"{term['relation']!r} is not a relation from {X} to {Y}")
            c = D.F(parse_scalar(str(term.get("coeff", "1"))))
            v = terms.get(R, D.F.zero) + c
            terms[R] = v
    except (KeyError, TypeError, ScalarParseError) as exc:
        raise ConfigError(f"malformed morphism: {exc}") from exc
    return DiagMorphism(X, Y, {r: c for r, c in terms.items() if c})


def label_name(hw, lab) -> str:
    if isinstance(lab, Summand):
        return f"summand(obj={lab.obj})"
    return hw.names[lab]


def complex_to_json(hw, Cx) -> dict:
    """Degrees, projective labels, and differential entries as relation term lists."""
    C = hw.C
    F = hw.F
    lo, hi = Cx.degrees()
    diffs = {}
    for d in range(lo, hi):
        M = Cx.diff(d)
        if M is None:
            continue
        rows = []
        for r, lab_r in enumerate(Cx.term(d)):
            row = []
            for s, lab_s in enumerate(Cx.term(d + 1)):
                basis = C.basis(hw.obj_of(lab_s), hw.obj_of(lab_r))
                row.append([{"relation": relation_to_json(C.D.cat, basis[k]), "coeff": F.format(v)}
                            for k, v in enumerate(M[r][s]) if v])
            rows.append(row)
        diffs[str(d)] = rows
    return {"degrees": [lo, hi],
            "terms": {str(d): [label_name(hw, lab) for lab in Cx.term(d)] for d in range(lo, hi + 1)},
            "differentials": diffs}
