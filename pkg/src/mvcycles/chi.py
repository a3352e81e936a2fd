"""Two scalar functions on an MV-cycle and the harness comparing them.

chi1 reads the t^d coefficient of an MV-polynomial evaluated on a unitriangular
representative g with Y = g . mubar.  chi2 is the Jacobian of the projection
map between the left-end and right-end slots of the loops.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SamplingExhausted, SingularProjection
from .exactalg import LaurentPoly, MultiPoly, evaluate, parse_poly
from .exactalg.rational import det, rref
from .kostant import ExtendedPicture, coweights, parse_picture
from .lattice import (
    GroupElement,
    TruncatedLattice,
    act,
    classify,
    group_element_for,
    random_stabilizer,
    sample_point,
)


def _sigma(k: int) -> int:
    return k * (k + 1) // 2


def compute_d(lam, mu) -> int:
    """Sum of heights j of t^-j e_i in mubar but not lambdabar, minus the reverse."""
    if len(lam) != len(mu):
        raise ValueError("coweights differ in length")
    return sum(_sigma(m) - _sigma(l) for l, m in zip(lam, mu))


@dataclass(frozen=True)
class Chi1Result:
    value: Fraction
    below: dict  # nonzero coefficients of t^k, k < d
    series: LaurentPoly


def chi1(P: MultiPoly, g: GroupElement, d: int) -> Chi1Result:
    series = evaluate(P, g.as_entries())
    below = {k: c for k, c in series.terms().items() if k < d}
    return Chi1Result(Fraction(series.coefficient(d)), below, series)


def end_slots(p: ExtendedPicture):
    """Left-end and right-end slots (j, i) meaning t^j e_i, one per loop in picture order.

    A loop's slot sits one step deeper for every loop inside it (itself
    included) sharing that end, so nested loops with a common end get
    distinct slots and the outer loop takes the deeper one.
    """
    pic = p.picture
    left, right = [], []
    for a, l in enumerate(pic.loops):
        inner = [b for b in range(len(pic)) if b == a or pic.encircles(a, b)]
        kl = sum(1 for b in inner if pic.loops[b].left == l.left)
        kr = sum(1 for b in inner if pic.loops[b].right == l.right)
        left.append((-(p.base[l.left - 1] + kl), l.left))
        right.append((-(p.base[l.right - 1] + kr), l.right))
    return left, right


def projection_matrix(p: ExtendedPicture, y: TruncatedLattice):
    """Matrix of the restricted projection map: entry (a, s) is the left slot a
    component of the unique y in Y whose mubar-projection is the right slot s."""
    lam, mu = coweights(p)
    left, right = end_slots(p)
    lo = min([y.lo] + [j for j, _ in left + right])
    hi = max([y.hi] + [-m + 1 for m in mu])
    y = y.reframe(lo, hi)
    mu_coords = [k for k in range(y.size) if y.coord(k)[0] >= -mu[y.coord(k)[1] - 1]]
    other = [k for k in range(y.size) if k not in set(mu_coords)]
    if len(mu_coords) != y.dim:
        raise SingularProjection(f"lattice dimension {y.dim} differs from the mubar window {len(mu_coords)}")
    red, piv = rref(y.rows, y.size, order=mu_coords + other)
    if any(pv not in set(mu_coords) for pv in piv):
        raise SingularProjection("projection to mubar is not invertible")
    by_pivot = dict(zip(piv, red))
    matrix = []
    for jl, il in left:
        col = y.index(jl, il)
        matrix.append([by_pivot[y.index(jr, ir)][col] for jr, ir in right])
    return matrix


def chi2(p: ExtendedPicture, y: TruncatedLattice) -> Fraction:
    if not p.loops:
        return Fraction(1)
    return det(projection_matrix(p, y))


def chi1_values(P: MultiPoly, p: ExtendedPicture, g: GroupElement, rng: random.Random, trials: int = 4):
    """chi1 at g and at g.s for random stabilizer elements s of mubar."""
    lam, mu = coweights(p)
    d = compute_d(lam, mu)
    vals = [chi1(P, g, d).value]
    for _ in range(trials):
        vals.append(chi1(P, g * random_stabilizer(mu, rng), d).value)
    return vals


def chi1_well_defined(p: ExtendedPicture, P: MultiPoly, y: TruncatedLattice, rng: random.Random, trials: int = 4) -> bool:
    _, mu = coweights(p)
    g = group_element_for(y, mu)
    if g is None:
        raise SamplingExhausted("lattice is not of the form g . mubar")
    return len(set(chi1_values(P, p, g, rng, trials))) == 1


@dataclass
class ChiReport:
    picture: ExtendedPicture
    samples: int = 0
    values: list = field(default_factory=list)  # (chi1, chi2) per sample
    below_d: list = field(default_factory=list)  # (sample index, {k: coeff})
    ill_defined: list = field(default_factory=list)  # sample indices where chi1 moved
    d: int = 0

    @property
    def agree(self) -> bool:
        return all(a == b for a, b in self.values)

    @property
    def verdict(self) -> str:
        return "pass" if self.agree and not self.below_d and not self.ill_defined else "fail"

    def render(self) -> str:
        lines = [
            f"picture: {self.picture}",
            f"d: {self.d}",
            f"samples: {self.samples}",
            f"chi1_equals_chi2: {sum(a == b for a, b in self.values)}/{len(self.values)}",
            f"below_d_violations: {len(self.below_d)}",
            f"chi1_representative_dependent: {len(self.ill_defined)}",
        ]
        for k, (a, b) in enumerate(self.values):
            lines.append(f"sample {k}: chi1={a} chi2={b}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def verify(p: ExtendedPicture, P: MultiPoly, samples: int, rng: random.Random, trials: int = 3) -> ChiReport:
    lam, mu = coweights(p)
    report = ChiReport(p, samples, d=compute_d(lam, mu))
    for k in range(samples):
        g, y = sample_point(p, rng)
        c1 = chi1(P, g, report.d)
        report.values.append((c1.value, chi2(p, y)))
        if c1.below:
            report.below_d.append((k, c1.below))
        if trials and len(set(chi1_values(P, p, g, rng, trials))) > 1:
            report.ill_defined.append(k)
    return report


# the five-column example with loops (1,4), (2,3), (3,5)

EXAMPLE_PICTURE = "n=5; loops=(1,4)(2,3)(3,5); base=(0,0,0,0,0)"
EXAMPLE_POLY = "x_2_3 x_3_5 x_1_4 - x_2_3 x_3_4 x_1_5 - x_1_4 x_2_5 + x_2_4 x_1_5"

# matrix letters: row-major strictly upper entries of the 5 x 5 unitriangular matrix
LETTERS = {"a": (1, 2), "e": (1, 3), "h": (1, 4), "j": (1, 5), "b": (2, 3), "f": (2, 4), "i": (2, 5), "c": (3, 4), "g": (3, 5), "d": (4, 5)}
MIN_DEGREE = {"e": 1, "a": 0, "b": 0, "d": 0, "h": 0, "j": 0, "c": -1, "f": -1, "g": -1, "i": -1}


def example_picture() -> ExtendedPicture:
    return parse_picture(EXAMPLE_PICTURE)


def example_poly() -> MultiPoly:
    return parse_poly(EXAMPLE_POLY, 5)


def example_closed_form(coeffs) -> Fraction:
    """b0 g0 h0 - b0 c0 j0 - h0 i0 + f0 j0."""
    z = lambda x: coeffs[x].get(0, 0)
    return z("b") * z("g") * z("h") - z("b") * z("c") * z("j") - z("h") * z("i") + z("f") * z("j")


def sample_example_point(rng: random.Random, top: int = 2):
    """Random g satisfying the degree bounds and the five vanishing 2x2 minors.

    The minors vanish exactly when (f_-1, i_-1) = b0 (c_-1, g_-1) and
    (c_-1, g_-1) is proportional to (h0, j0); we take (c_-1, g_-1) = s (h0, j0).
    """

    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    coeffs = {x: {k: q() for k in range(MIN_DEGREE[x], top + 1)} for x in LETTERS}
    b0, h0, j0, s = coeffs["b"][0], coeffs["h"][0], coeffs["j"][0], q()
    coeffs["c"][-1] = s * h0
    coeffs["g"][-1] = s * j0
    coeffs["f"][-1] = b0 * coeffs["c"][-1]
    coeffs["i"][-1] = b0 * coeffs["g"][-1]
    g = GroupElement(5, {LETTERS[x]: LaurentPoly(c) for x, c in coeffs.items()})
    return g, coeffs


def example_minors(coeffs) -> list:
    c = lambda x, k: coeffs[x].get(k, 0)
    return [
        c("b", 0) * c("c", -1) - c("f", -1),
        c("b", 0) * c("g", -1) - c("i", -1),
        c("h", 0) * c("i", -1) - c("j", 0) * c("f", -1),
        c("h", 0) * c("g", -1) - c("j", 0) * c("c", -1),
        c("f", -1) * c("g", -1) - c("i", -1) * c("c", -1),
    ]


def lattice_of(g: GroupElement, p: ExtendedPicture) -> TruncatedLattice:
    _, mu = coweights(p)
    return act(g, TruncatedLattice.coweight_lattice(mu))


def check_example_point(g: GroupElement, coeffs):
    """(chi1, t^-1 coefficient, chi2, closed form, classified picture) at one point."""
    p = example_picture()
    y = lattice_of(g, p)
    c1 = chi1(example_poly(), g, 0)
    return c1.value, c1.series.coefficient(-1), chi2(p, y), example_closed_form(coeffs), classify(y)
