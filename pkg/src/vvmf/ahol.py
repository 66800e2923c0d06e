"""Almost-holomorphic forms and the raising/lowering operators.

The grading variable is Y = 1/(4*pi*y) and the operators are rescaled to
R^ = R/(4*pi), L^ = 4*pi*L so that every coefficient stays in the
cyclotomic field; span membership is unaffected by these nonzero scalings.
On a graded piece g_r * Y^r of a weight-k form,

    R^ : -theta(g_r) Y^r + (k - r) g_r Y^(r+1),
    L^ : -r g_r Y^(r-1),

with theta = q d/dq.  Depth d means L^ applied d+1 times annihilates the
form while L^ applied d times does not; holomorphic forms have depth 0.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix
from .qexp import QExp
from .reps import Rep, hom_space, is_intertwiner


class AholForm:
    """Depth-graded form: graded[r] is the component tuple of Y^r."""

    __slots__ = ("weight", "rep", "graded", "prec", "name")

    def __init__(self, weight: int, rep: Rep, graded, name: str = ""):
        graded = [tuple(layer) for layer in graded]
        if not graded:
            raise ValueError("at least one graded layer is required")
        for layer in graded:
            if len(layer) != rep.dim:
                raise ValueError(
                    f"layer has {len(layer)} components, type has dimension {rep.dim}"
                )
        while len(graded) > 1 and all(q.is_zero() for q in graded[-1]):
            graded.pop()
        prec = min(q.prec for layer in graded for q in layer)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "graded", tuple(graded))
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("AholForm is immutable")

    @property
    def depth(self) -> int:
        return len(self.graded) - 1

    @property
    def components(self) -> tuple:
        """Depth-0 component tuple (the holomorphic case)."""
        if self.depth != 0:
            raise ValueError(f"form has depth {self.depth}, not 0")
        return self.graded[0]

    @staticmethod
    def holomorphic(weight: int, rep: Rep, components, name: str = "") -> "AholForm":
        return AholForm(weight, rep, [tuple(components)], name=name)

    @staticmethod
    def zero(weight: int, rep: Rep, prec) -> "AholForm":
        return AholForm(weight, rep, [(QExp.zero(prec),) * rep.dim])

    def is_zero(self) -> bool:
        return all(q.is_zero() for layer in self.graded for q in layer)

    def scaled(self, s) -> "AholForm":
        return AholForm(
            self.weight,
            self.rep,
            [[q.scaled(s) for q in layer] for layer in self.graded],
            name=self.name,
        )

    def __add__(self, other: "AholForm") -> "AholForm":
        if self.weight != other.weight or self.rep.label != other.rep.label:
            raise ValueError("can only add forms of equal weight and type")
        depth = max(self.depth, other.depth)
        layers = []
        for r in range(depth + 1):
            a = self.graded[r] if r <= self.depth else None
            b = other.graded[r] if r <= other.depth else None
            if a is None:
                layers.append(list(b))
            elif b is None:
                layers.append(list(a))
            else:
                layers.append([x + y for x, y in zip(a, b)])
        return AholForm(self.weight, self.rep, layers)

    def __sub__(self, other: "AholForm") -> "AholForm":
        return self + other.scaled(-1)

    def truncate(self, prec) -> "AholForm":
        return AholForm(
            self.weight,
            self.rep,
            [[q.truncate(min(q.prec, Fraction(prec))) for q in layer] for layer in self.graded],
            name=self.name,
        )

    def agrees_with(self, other: "AholForm", prec=None) -> bool:
        if self.weight != other.weight or self.depth != other.depth:
            return False
        for a, b in zip(self.graded, other.graded):
            for x, y in zip(a, b):
                if not x.agrees_with(y, prec):
                    return False
        return True

    def __repr__(self):
        tag = self.name or "form"
        return f"AholForm({tag}: weight {self.weight}, type {self.rep.label}, depth {self.depth})"

    def to_json(self):
        return {
            "weight": self.weight,
            "type": self.rep.to_json(),
            "h": max(q.h for layer in self.graded for q in layer),
            "prec": str(self.prec),
            "depth": self.depth,
            "graded": [[q.to_json() for q in layer] for layer in self.graded],
        }

    @staticmethod
    def from_json(obj) -> "AholForm":
        rep = Rep.from_json(obj["type"]) if isinstance(obj["type"], dict) else None
        if rep is None:
            raise ValueError("inline type required for graded form JSON")
        graded = [[QExp.from_json(q) for q in layer] for layer in obj["graded"]]
        return AholForm(int(obj["weight"]), rep, graded)


def raise_op(f: AholForm, weight: int | None = None) -> AholForm:
    """Weight-raising operator; weight k+2, depth at most d+1.

    `weight` overrides the weight parameter in the operator formula (the
    operator pencil R^_k), used by the fixed-weight commutator identity;
    by default the form's own weight is used.
    """
    k = f.weight if weight is None else weight
    if f.weight % 2 != 0:
        raise ValueError(f"weight must be even, got {f.weight}")
    depth = f.depth
    layers = [[QExp.zero(f.prec) for _ in range(f.rep.dim)] for _ in range(depth + 2)]
    for r, layer in enumerate(f.graded):
        for i, q in enumerate(layer):
            layers[r][i] = layers[r][i] - q.theta()
            layers[r + 1][i] = layers[r + 1][i] + q.scaled(k - r)
    return AholForm(f.weight + 2, f.rep, layers, name=f"R({f.name})" if f.name else "")


def lower_op(f: AholForm) -> AholForm:
    """Weight-lowering operator; annihilates holomorphic forms."""
    if f.depth == 0:
        return AholForm.zero(f.weight - 2, f.rep, f.prec)
    layers = [[QExp.zero(f.prec) for _ in range(f.rep.dim)] for _ in range(f.depth)]
    for r in range(1, f.depth + 1):
        for i, q in enumerate(f.graded[r]):
            layers[r - 1][i] = layers[r - 1][i] + q.scaled(-r)
    return AholForm(f.weight - 2, f.rep, layers, name=f"L({f.name})" if f.name else "")


def rising_factorial(a: int, n: int) -> int:
    out = 1
    for j in range(n):
        out *= a + j
    return out


def ahol_decompose(f: AholForm) -> list:
    """Holomorphic layers h_t with f = sum_t R^^t h_t, exactly.

    Computed top down: h_d = graded[d] / (k-2d)...(k-d-1), subtract
    R^^d h_d, recurse.  Raises when an upper factorial vanishes, which is
    excluded when k - 2*depth >= 2.
    """
    k = f.weight
    rest = f
    parts: list = []
    for t in range(f.depth, 0, -1):
        if rest.depth < t:
            parts.append(AholForm.zero(k - 2 * t, f.rep, rest.prec))
            continue
        fac = rising_factorial(k - 2 * t, t)
        if fac == 0:
            raise ArithmeticError(
                f"depth decomposition obstructed: ({k - 2 * t}) rising {t} vanishes"
            )
        h = AholForm.holomorphic(
            k - 2 * t, f.rep, [q.scaled(Fraction(1, fac)) for q in rest.graded[t]]
        )
        parts.append(h)
        lifted = h
        for _ in range(t):
            lifted = raise_op(lifted)
        rest = rest - lifted
    parts.append(AholForm.holomorphic(k, f.rep, rest.graded[0]))
    parts.reverse()
    return parts


def apply_intertwiner(phi: Matrix, f: AholForm, target: Rep) -> AholForm:
    """Componentwise matrix application to every graded layer."""
    if not is_intertwiner(phi, f.rep, target):
        raise ValueError("matrix does not intertwine the source and target types")
    layers = []
    for layer in f.graded:
        comps = []
        for i in range(target.dim):
            acc = None
            for j in range(f.rep.dim):
                c = phi[i, j]
                if c.is_zero():
                    continue
                term = layer[j].scaled(c)
                acc = term if acc is None else acc + term
            if acc is None:
                acc = QExp.zero(min(q.prec for q in layer))
            comps.append(acc)
        layers.append(comps)
    name = f"phi({f.name})" if f.name else ""
    return AholForm(f.weight, target, layers, name=name)


def tinf(f: AholForm, targets) -> "FormSpan":
    """Hecke operator at infinity: span of lowered and raised images.

    Graded by (weight -/+ 2, target label), components projected against
    the registry entries.
    """
    from .hyperalg import FormSpan

    span = FormSpan.empty()
    src = f.name or "form"
    for g, op in ((lower_op(f), "lower"), (raise_op(f), "raise")):
        if g.is_zero():
            continue
        for target in targets:
            for idx, phi in enumerate(hom_space(g.rep, target)):
                image = apply_intertwiner(phi, g, target)
                if image.is_zero():
                    continue
                span.add(image, provenance=f"{op}({src})->{target.label}#{idx}")
    return span


def tinf_closure(span, weight_window, max_rounds: int, targets):
    """Least fixed point of repeated tinf applications inside a window.

    Returns (closure span, stabilized flag); non-stabilization within
    max_rounds is reported, not raised.
    """
    from .hyperalg import FormSpan, span_sum

    kmin, kmax = weight_window
    if kmin > kmax:
        raise ValueError(f"empty weight window [{kmin}, {kmax}]")

    def window_filter(s: FormSpan) -> FormSpan:
        out = FormSpan.empty()
        for (w, lbl), gens in sorted(s.grading.items()):
            if kmin <= w <= kmax:
                for form, prov in gens:
                    out.add(form, provenance=prov)
        return out

    current = window_filter(span)
    stabilized = False
    for _ in range(max_rounds):
        pieces = [current]
        for (_, _), gens in sorted(current.grading.items()):
            for form, _ in gens:
                pieces.append(window_filter(tinf(form, targets)))
        new = window_filter(span_sum(pieces))
        if new.dimension_signature() == current.dimension_signature() and all(
            new.grade_rows(key) == current.grade_rows(key) for key in new.grading
        ):
            stabilized = True
            break
        current = new
    return current, stabilized
