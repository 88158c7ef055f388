"""Anti-automorphisms of the linear algebra and their induced leg actions.

On a Lax matrix, reflection gives ``L^s(l) = -L(-l)`` and twisted gives
``L^s(l) = L^t(-l)``.  On a c-number tensor, acting on leg ``i`` means:
partial-transpose leg ``i`` if twisted, substitute that leg's spectral
argument by its negative, and multiply by the scalar sign.  Hence for
reflection ``A^{s1} = -A(-l, m)`` and ``A^{s1 s2} = A(-l, -m)``, and for
the twisted case ``A^{s1} = A^{t1}(-l, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import RatFunc


@dataclass(frozen=True)
class AntiAutomorphism:
    kind: str
    sign: int = -1
    transpose: bool = False
    flip_spectral: bool = True

    def __post_init__(self):
        if self.kind not in ("reflection", "twisted", "custom"):
            raise ValueError(f"unknown anti-automorphism kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def reflection(cls):
        return cls("reflection", -1, False, True)

    @classmethod
    def twisted(cls):
        return cls("twisted", 1, True, True)

    @classmethod
    def custom(cls, sign, transpose, flip_spectral=True):
        return cls("custom", sign, transpose, flip_spectral)

    @classmethod
    def named(cls, name):
        if name == "reflection":
            return cls.reflection()
        if name == "twisted":
            return cls.twisted()
        raise ValueError(f"unknown anti-automorphism {name!r}")

    def act(self, A, leg=1, variable="lambda"):
        """Induced action on one leg of a leg matrix whose argument on that leg is ``variable``."""
        out = A.partial_transpose(leg) if self.transpose else A
        if self.flip_spectral:
            out = out.substitute({variable: -RatFunc.var(variable)})
        return -out if self.sign < 0 else out

    def act_legs(self, A, legs):
        """Apply ``act`` for each ``(leg, variable)`` pair in turn."""
        for leg, variable in legs:
            A = self.act(A, leg, variable)
        return A

    def on_lax(self, L, variable="lambda"):
        """``L^sigma`` for a single-leg Lax matrix."""
        return self.act(L, 1, variable)

    def is_involutive_on(self, A, leg=1, variable="lambda"):
        return self.act(self.act(A, leg, variable), leg, variable) == A


def sigma_transform(A, sigma, variable="lambda"):
    return sigma.on_lax(A, variable)
