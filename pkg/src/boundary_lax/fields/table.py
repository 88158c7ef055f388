"""Base Poisson brackets between field generators.

A rule gives ``{F^a(x), G^b(y)}`` as a canonical FieldExpr written at the
template points ``x``, ``y``.  Only one orientation of each family pair is
stored; the other follows from antisymmetry with the points exchanged.
Pairs of declared families without a rule bracket to zero.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from ..errors import MissingRuleError, UnrepresentableRuleError
from ..tensor import MatrixRF, kron
from .expr import ZERO_FIELD, FieldExpr, GeneratorSymbol, monomial_derivative
from .matrix import MatrixFieldExpr, as_field_matrix

X, Y = "x", "y"


class BracketTable:
    """Immutable table of base brackets; evaluation results are memoized."""

    def __init__(self, families, colors, rules, name="table"):
        self.name = name
        self.families = tuple(families)
        self.colors = int(colors)
        self._rules = {}
        for (f, a, g, b), e in rules.items():
            if f not in self.families or g not in self.families:
                raise MissingRuleError(f"rule for undeclared family pair ({f}, {g})")
            if e:
                self._rules[(f, a, g, b)] = e
        self._cache = {}

    @property
    def rules(self):
        return dict(self._rules)

    def generators(self, point=X):
        return [GeneratorSymbol(f, a, point) for f in self.families for a in range(self.colors)]

    def _known(self, g):
        return g.family in self.families and g.deriv == 0 and g.point != "" and 0 <= g.color < self.colors

    def rule(self, f, a, g, b):
        """Template ``{f^a(x), g^b(y)}`` including reversed-orientation lookup."""
        key = (f, a, g, b)
        if key in self._rules:
            return self._rules[key]
        rev = self._rules.get((g, b, f, a))
        if rev is None:
            return ZERO_FIELD
        return -rev.rename_points({X: Y, Y: X})

    def bracket(self, g, h):
        """``{g, h}`` for generator symbols at distinct points."""
        for s in (g, h):
            if not self._known(s):
                raise MissingRuleError(f"no bracket rule for generator {s}")
        if g.point == h.point:
            raise ValueError(f"bracket of generators at the same point {g.point!r}")
        key = (g, h)
        hit = self._cache.get(key)
        if hit is None:
            hit = self.rule(g.family, g.color, h.family, h.color).rename_points(
                {X: g.point, Y: h.point}
            )
            self._cache[key] = hit
        return hit

    def jacobi_residual(self, generators=None):
        """Nonzero Jacobi cyclic sums, keyed by generator triple.

        Double brackets carry two distributions; each cyclic term is rewritten
        in the independent coordinates ``u = x - y``, ``v = x - z`` with all
        fields at ``x`` before summing.  An empty dict means Jacobi holds.
        """
        gens = generators or [(f, a) for f in self.families for a in range(self.colors)]
        bad = {}
        for triple in itertools.combinations_with_replacement(gens, 3):
            (f1, a1), (f2, a2), (f3, a3) = triple
            g = GeneratorSymbol(f1, a1, "x")
            h = GeneratorSymbol(f2, a2, "y")
            k = GeneratorSymbol(f3, a3, "z")
            acc = {}
            for p, q, r in ((g, h, k), (h, k, g), (k, g, h)):
                _double_bracket_uv(self, p, q, r, acc)
            res = {key: c for key, c in acc.items() if c}
            if res:
                bad[triple] = res
        return bad


# --- two-distribution normal form for the Jacobi check ---------------------

_W = {"x": (0, 0), "y": (1, 0), "z": (0, 1)}  # x - point in (u, v) coordinates


def _linear_form(p, q):
    wp, wq = _W[p], _W[q]
    return (wq[0] - wp[0], wq[1] - wp[1])


def _expand_derivatives(l1, m, l2, n):
    """delta^(m)(l1) delta^(n)(l2) -> {(p, q): c} for delta^(p)(u) delta^(q)(v)."""
    det = l1[0] * l2[1] - l1[1] * l2[0]
    if det not in (1, -1):
        raise ValueError("distributions do not define independent coordinates")
    # rows of M^-1 give d/dl_i = sum_j (M^-1)_{j i} d/dw_j
    inv = ((l2[1] * det, -l1[1] * det), (-l2[0] * det, l1[0] * det))
    d1 = (inv[0][0], inv[1][0])
    d2 = (inv[0][1], inv[1][1])
    out = {}
    for i in range(m + 1):
        for j in range(n + 1):
            c = comb(m, i) * d1[0] ** i * d1[1] ** (m - i) * comb(n, j) * d2[0] ** j * d2[1] ** (n - j)
            if c:
                key = (i + j, m - i + n - j)
                out[key] = out.get(key, 0) + c
    return {k: Fraction(c, abs(det)) for k, c in out.items() if c}


def _to_x(mono, p, q, coeff, acc):
    """Add ``mono * delta^(p)(u) delta^(q)(v)`` with fields moved to x."""
    layers = [((tuple(sorted(mono)), p, q), coeff)]
    for pt, axis in (("y", 0), ("z", 1)):
        nxt = []
        for (mo, pu, pv), c in layers:
            order = (pu, pv)[axis]
            at = tuple(g for g in mo if g.point == pt)
            if not at:
                nxt.append(((mo, pu, pv), c))
                continue
            rest = tuple(g for g in mo if g.point != pt)
            layer = {tuple(sorted(g.at("x") for g in at)): 1}
            for kk in range(order + 1):
                for part, mult in layer.items():
                    new = tuple(sorted(rest + part))
                    ords = (pu - kk, pv) if axis == 0 else (pu, pv - kk)
                    nxt.append(((new, *ords), c * (comb(order, kk) * mult)))
                nl = {}
                for part, mult in layer.items():
                    for dm, nm in monomial_derivative(part, "x"):
                        nl[nm] = nl.get(nm, 0) + mult * dm
                layer = nl
        layers = nxt
    for key, c in layers:
        prev = acc.get(key)
        acc[key] = c if prev is None else prev + c


def _double_bracket_uv(table, g, h, k, acc):
    inner = table.bracket(g, h)
    for (mono, d1), c1 in inner.items():
        if not mono:
            continue
        # {coeff * mono * D1, k} with the Leibniz rule over the monomial
        for i, e in enumerate(mono):
            rest = mono[:i] + mono[i + 1 :]
            outer = table.bracket(e, k)
            for (mono2, d2), c2 in outer.items():
                if d1 is None or d2 is None:
                    raise ValueError("base brackets must carry a distribution")
                l1 = _linear_form(d1[1], d1[2])
                l2 = _linear_form(d2[1], d2[2])
                for (pu, pv), cd in _expand_derivatives(l1, d1[0], l2, d2[0]).items():
                    _to_x(rest + mono2, pu, pv, c1 * c2 * cd, acc)


# --- construction from matrix-form rules -----------------------------------


def _trace_against(X, A):
    """tr(X A) for a two-leg matrix X and constant two-leg A."""
    total = ZERO_FIELD
    for (i, j), v in X.entries.items():
        a = A[j, i]
        if a:
            total = total + v.scale(a)
    return total


def component_brackets_from_matrix_rule(rules, basis, name="table"):
    """Build a BracketTable from ``{(F, G): {F(x) (x), G(y)}}`` matrix rules.

    Each rule is a two-leg MatrixFieldExpr at points x, y with fields written
    via ``field_matrix``.  Components are read off with the dual basis
    ``t^a = sum_b (kappa^-1)_ab t_b`` and the re-assembled rule is compared
    entry by entry; a mismatch raises UnrepresentableRuleError.
    """
    sc = basis.structure
    kinv = sc.metric_inverse
    n = basis.dim
    dual = []
    for a in range(n):
        d = MatrixRF.zeros(basis.N)
        for b in range(n):
            if kinv[a][b]:
                d = d + basis[b].scale(kinv[a][b])
        dual.append(d)
    families = []
    for f, g in rules:
        for fam in (f, g):
            if fam not in families:
                families.append(fam)
    comps = {}
    for (f, g), rule in rules.items():
        rule = as_field_matrix(rule)
        rebuilt = MatrixFieldExpr.zeros(basis.N, 2)
        for a in range(n):
            for b in range(n):
                c = _trace_against(rule, kron(dual[a], dual[b]))
                if c:
                    comps[(f, a, g, b)] = c
                    rebuilt = rebuilt + kron(basis[a], basis[b]).scale(c)
        if not (rebuilt - rule).is_zero():
            raise UnrepresentableRuleError(f"rule {{{f}, {g}}} is not in the span of t_a (x) t_b")
    return BracketTable(families, n, comps, name=name)

