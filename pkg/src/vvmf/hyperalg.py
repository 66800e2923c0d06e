"""The multivalued product of forms and graded spans with exact membership.

A FormSpan stores generators per grade (weight, type label), with
provenance strings so harnesses can report which products certify a
membership.  Stored generators are linearly independent within a grade;
echelonization happens on demand at the grade's common sound precision.

Membership refuses to answer below the Sturm bound: callers pass a
working precision and get a hard error, never a silent false.  The
congruence index used in the bound is the full index of Gamma(N), the
conservative choice with no division by the center.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .ahol import AholForm, apply_intertwiner
from .exactnum import CycNum
from .qexp import InsufficientPrecision
from .reps import RepRegistry, hom_space


class FormSpan:
    def __init__(self):
        self.grading: dict = {}

    @staticmethod
    def empty() -> "FormSpan":
        return FormSpan()

    @staticmethod
    def of(*forms, provenance: str = "") -> "FormSpan":
        span = FormSpan()
        for f in forms:
            span.add(f, provenance=provenance or f.name)
        return span

    def add(self, form: AholForm, provenance: str = "") -> bool:
        """Add a generator; dependent or zero forms are dropped.

        Independence is decided at the grade's common sound precision
        after insertion.  Returns True when the span grew.
        """
        if form.is_zero():
            return False
        key = (form.weight, form.rep.label)
        gens = self.grading.setdefault(key, [])
        forms = [f for f, _ in gens] + [form]
        prec = min(f.prec for f in forms)
        layout = _row_layout(forms)
        rows = [_coefficient_row(f, prec, *layout) for f in forms]
        if _rank(rows) == len(rows):
            gens.append((form, provenance or form.name))
            return True
        return False

    def grades(self) -> list:
        return sorted(self.grading)

    def generators(self, key) -> list:
        return list(self.grading.get(key, []))

    def all_forms(self) -> list:
        out = []
        for key in self.grades():
            out.extend(f for f, _ in self.grading[key])
        return out

    def grade_dimension(self, key) -> int:
        return len(self.grading.get(key, []))

    def dimension_signature(self) -> dict:
        return {key: len(gens) for key, gens in self.grading.items()}

    def grade_prec(self, key):
        gens = self.grading.get(key)
        if not gens:
            return None
        return min(f.prec for f, _ in gens)

    def grade_rows(self, key, prec=None) -> tuple:
        """Canonical echelon rows of a graded piece at a sound precision."""
        gens = self.grading.get(key, [])
        if not gens:
            return ()
        forms = [f for f, _ in gens]
        if prec is None:
            prec = min(f.prec for f in forms)
        h, dim, depth = _row_layout(forms)
        rows = [_coefficient_row(f, prec, h, dim, depth) for f in forms]
        return _echelon(rows)

    def __repr__(self):
        parts = [f"({w},{lbl}):{len(g)}" for (w, lbl), g in sorted(self.grading.items())]
        return f"FormSpan[{', '.join(parts)}]"

    def to_json(self):
        grades = []
        for (w, lbl) in self.grades():
            gens = self.grading[(w, lbl)]
            grades.append(
                {
                    "weight": w,
                    "type": lbl,
                    "dimension": len(gens),
                    "generators": [
                        {"provenance": prov, "form": f.to_json()} for f, prov in gens
                    ],
                }
            )
        return {"grades": grades}


def _row_layout(forms):
    """Common lattice, type dimension and depth for coefficient rows."""
    h = 1
    depth = 0
    dim = forms[0].rep.dim
    for f in forms:
        depth = max(depth, f.depth)
        for layer in f.graded:
            for q in layer:
                h = h * q.h // math.gcd(h, q.h)
    return h, dim, depth


def _coefficient_row(f: AholForm, prec, h: int, dim: int, depth: int) -> list:
    bound = math.ceil(Fraction(prec) * h)
    row = []
    zero = CycNum.zero()
    for r in range(depth + 1):
        layer = f.graded[r] if r <= f.depth else None
        for i in range(dim):
            if layer is None:
                row.extend([zero] * bound)
                continue
            q = layer[i].rescale_lattice(h)
            row.extend(q.terms.get(n, zero) for n in range(bound))
    return row


def _echelon(rows) -> tuple:
    from .linalg import _rref_inplace

    work = [list(r) for r in rows]
    if not work:
        return ()
    _rref_inplace(work, len(work[0]))
    return tuple(tuple(r) for r in work if any(not x.is_zero() for x in r))


def _rank(rows) -> int:
    return len(_echelon(rows))


def span_sum(spans) -> "FormSpan":
    """Graded union, re-echelonized; dimensions never exceed the sum."""
    out = FormSpan()
    for s in spans:
        for key in s.grades():
            for form, prov in s.grading[key]:
                out.add(form, provenance=prov)
    return out


def hyper_tensor(f: AholForm, g: AholForm, targets: RepRegistry) -> FormSpan:
    """Span of all intertwiner projections of the pointwise tensor product.

    Weights are integers at genus 1 and simply add; there is no weight-side
    hom enumeration (the tensor of one-dimensional weights is canonically
    irreducible).  Depths add: output layers are convolutions of the
    Y-graded pieces.
    """
    if f.weight % 2 != 0 or g.weight % 2 != 0:
        raise ValueError("weights must be even")
    tensor = tensor_form(f, g)
    span = FormSpan()
    fname = f.name or "f"
    gname = g.name or "g"
    for target in targets:
        for idx, phi in enumerate(hom_space(tensor.rep, target)):
            image = apply_intertwiner(phi, tensor, target)
            span.add(
                image,
                provenance=f"phi[{target.label}#{idx}] . ({fname} (x) {gname})",
            )
    return span


def tensor_form(f: AholForm, g: AholForm) -> AholForm:
    """Pointwise tensor with components flattened as i*dim_g + j."""
    rep = f.rep.tensor(g.rep)
    depth = f.depth + g.depth
    layers: list = [[None] * rep.dim for _ in range(depth + 1)]
    for r1, lay1 in enumerate(f.graded):
        for r2, lay2 in enumerate(g.graded):
            s = r1 + r2
            for i, qi in enumerate(lay1):
                for j, qj in enumerate(lay2):
                    prod = qi * qj
                    pos = i * g.rep.dim + j
                    cur = layers[s][pos]
                    layers[s][pos] = prod if cur is None else cur + prod
    name = f"({f.name} (x) {g.name})" if f.name and g.name else ""
    return AholForm(f.weight + g.weight, rep, layers, name=name)


def congruence_index(level: int) -> int:
    """Index of the principal congruence subgroup of the given level."""
    if level < 1:
        raise ValueError(f"level must be positive, got {level}")
    idx = level**3
    m = level
    p = 2
    while p * p <= m:
        if m % p == 0:
            idx = idx // (p * p) * (p * p - 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        idx = idx // (m * m) * (m * m - 1)
    return idx


def sturm_bound(k: int, level_index: int) -> int:
    """ceil(k * index / 12) + 1 coefficients decide equality."""
    return -(-k * level_index // 12) + 1


def span_contains(span: FormSpan, f: AholForm, prec_used) -> bool:
    """Exact membership of f in its graded piece, at a stated precision.

    Hard InsufficientPrecision when prec_used is below the Sturm bound of
    the grade or beyond any stored expansion; never a silent false.
    """
    prec_used = Fraction(prec_used)
    bound = sturm_bound(f.weight, congruence_index(f.rep.level))
    if prec_used < bound:
        raise InsufficientPrecision(
            f"membership needs precision >= Sturm bound {bound}, got {prec_used}"
        )
    if f.prec < prec_used:
        raise InsufficientPrecision(
            f"candidate stores precision {f.prec}, below requested {prec_used}"
        )
    key = (f.weight, f.rep.label)
    gens = span.grading.get(key, [])
    if f.is_zero():
        return True
    if not gens:
        return False
    for g, _ in gens:
        if g.prec < prec_used:
            raise InsufficientPrecision(
                f"generator stores precision {g.prec}, below requested {prec_used}"
            )
    forms = [g for g, _ in gens] + [f]
    h, dim, depth = _row_layout(forms)
    rows = [_coefficient_row(g, prec_used, h, dim, depth) for g, _ in gens]
    target = _coefficient_row(f, prec_used, h, dim, depth)
    ech = _echelon(rows)
    work = list(target)
    for row in ech:
        pc = next(i for i, x in enumerate(row) if not x.is_zero())
        fac = work[pc]
        if not fac.is_zero():
            work = [x - fac * y for x, y in zip(work, row)]
    return all(x.is_zero() for x in work)
