"""Supersymmetric pairing built on the intertwining operator.

The supercharge Q has the intertwiner L in its lower-left corner, Q+ has the
adjoint in the upper-right, and together with the diagonal super-Hamiltonian
diag(h0, hN) they close a polynomial algebra:

    {Q, Q+} = prod_i (H - alpha_i),   [Q, H] = [Q+, H] = 0.

Levels are classified constructively.  A selected level has an eigenfunction
in the base sector only (L annihilates it): a singlet, annihilated by both
supercharges.  Every other level has exact eigenfunctions in both sectors: a
doublet.  The vacuum is the lowest singlet; when the selection excludes the
ground state, twofold-degenerate levels sit below the vacuum energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .gaussian import GaussFun
from .transform import SolvableModel, TransformResult, crum_krein_apply

Tag = Literal["singlet", "doublet"]


@dataclass(frozen=True)
class Doublet:
    """Two-component state: upper lives in the base sector, lower in the partner."""

    upper: GaussFun
    lower: GaussFun
    energy: Fraction | None = None

    @property
    def is_zero(self) -> bool:
        return self.upper.is_zero and self.lower.is_zero

    def scaled(self, factor) -> "Doublet":
        return Doublet(self.upper * factor, self.lower * factor, self.energy)


@dataclass(frozen=True)
class SusyClassification:
    n0: frozenset[int]
    vacuum_energy: Fraction
    tags: dict[int, Tag]
    below_vacuum: frozenset[int]


def eigen_doublet(model: SolvableModel, tr: TransformResult, n: int) -> Doublet:
    """Exact eigen-doublet at level n: (phi_n, L phi_n).

    The lower component is exactly zero when n is a deleted level.
    """
    phi = model.eigenfunction(n)
    return Doublet(upper=phi, lower=crum_krein_apply(tr, phi), energy=model.energy(n))


def classify(model: SolvableModel, tr: TransformResult, n_max: int) -> SusyClassification:
    """Tag each level up to n_max as singlet or doublet.

    The tags follow from the selection by rule, then every level is
    confirmed constructively: L phi_n must vanish exactly when n is
    selected.  A mismatch is an engine bug, not a user error.
    """
    selected = frozenset(tr.selection.levels)
    if n_max < max(selected):
        raise ValueError("n_max must reach the highest selected level")

    tags: dict[int, Tag] = {}
    for n in range(n_max + 1):
        image = crum_krein_apply(tr, model.eigenfunction(n))
        rule: Tag = "singlet" if n in selected else "doublet"
        constructive: Tag = "singlet" if image.is_zero else "doublet"
        if rule != constructive:
            raise RuntimeError(
                f"rule says {rule} but the operator says {constructive} at level {n}"
            )
        tags[n] = rule

    vacuum = min(model.energy(k) for k in selected)
    below = frozenset(n for n in range(n_max + 1) if model.energy(n) < vacuum)
    return SusyClassification(
        n0=selected,
        vacuum_energy=vacuum,
        tags=tags,
        below_vacuum=below,
    )


def supercharge_apply(side: Literal["Q", "Q+"], tr: TransformResult, state: Doublet) -> Doublet:
    """Act with a supercharge: Q sends (phi, psi) to (0, L phi), Q+ the reverse.

    Q^2 = 0 and (Q+)^2 = 0 hold structurally from the matrix shape.
    """
    if side == "Q":
        return Doublet(GaussFun.zero(), crum_krein_apply(tr, state.upper), state.energy)
    if side == "Q+":
        return Doublet(tr.operator.adjoint()(state.lower), GaussFun.zero(), state.energy)
    raise ValueError(f"unknown supercharge side {side!r}")


@dataclass(frozen=True)
class AnticommutatorCheck:
    level: int
    factor: Fraction
    anticommutator_ok: bool
    intertwining_ok: bool

    @property
    def ok(self) -> bool:
        return self.anticommutator_ok and self.intertwining_ok


@dataclass(frozen=True)
class AnticommutatorReport:
    checks: tuple[AnticommutatorCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def anticommutator_check(
    model: SolvableModel, tr: TransformResult, levels: Iterable[int]
) -> AnticommutatorReport:
    """Verify {Q, Q+} = prod_i (E - alpha_i) on exact eigen-doublets.

    Also confirms that Q commutes with the super-Hamiltonian by checking the
    intertwining residual (hN - E)(L phi_n) = 0 exactly.
    """
    alphas = tr.selection.alphas
    h_partner = tr.hamiltonian_partner()
    checks = []
    for n in levels:
        state = eigen_doublet(model, tr, n)
        energy = state.energy
        factor = Fraction(1)
        for alpha in alphas:
            factor *= energy - alpha

        via_q = supercharge_apply("Q+", tr, supercharge_apply("Q", tr, state))
        via_qdag = supercharge_apply("Q", tr, supercharge_apply("Q+", tr, state))
        acomm = Doublet(via_q.upper + via_qdag.upper, via_q.lower + via_qdag.lower, energy)
        expected = state.scaled(factor)
        acomm_ok = (
            acomm.upper == expected.upper and acomm.lower == expected.lower
        )

        residual = h_partner(state.lower) - state.lower * energy
        checks.append(
            AnticommutatorCheck(
                level=n,
                factor=factor,
                anticommutator_ok=acomm_ok,
                intertwining_ok=residual.is_zero,
            )
        )
    return AnticommutatorReport(tuple(checks))
