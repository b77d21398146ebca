"""Limit operators, essential spectra, Fredholm and finite-section criteria.

For an eventually periodic potential the limit operators at +infinity are
the rotations of the right period word and those at -infinity the rotations
of the left word. The essential spectrum of the full-line operator is the
union of the two band sets; Fredholmness of H - z is the exact condition
|disc_side(z)| > 2 on both sides.

The finite section method applies iff a finite list of one- and two-sided
operators built from the limit words are all invertible:

  full-line sections [l_n, r_n]:
    (a) H - z invertible,
    (b) every right limit rotation, compressed to [0, inf) with a Dirichlet
        cut, invertible,
    (c) every left limit rotation, compressed to (-inf, -1], invertible;
  half-line sections [0, r_n]:
    (d) the half-line operator itself invertible,
    (e) every right limit rotation, compressed to (-inf, -1], invertible.

All one-sided conditions are decided exactly over Q. Condition (a) is exact
for periodic potentials; for genuinely two-sided-different potentials it
needs the decaying solutions at both ends, whose directions are quadratic
irrationals, so a floating-point shooting match is used and a matching
determinant below 1e-8 is reported as undetermined rather than asserted
either way.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .potential import (EventuallyPeriodicPotential, ExplicitPotential,
                        PeriodicPotential, periodic)
from .scalars import INTEGER, RATIONAL, RegimeError
from .spectral import BandSet, bands, _to_fraction
from .transfer import (TransferMatrix, discriminant, monodromy,
                       monodromy_dirichlet_test, transfer_product)

KERNEL_SUSPECT_TOL = 1e-8


def _side_words(p):
    """(left_word, right_word, left_junction, right_junction).

    Junctions: the potential agrees with the pure left word on
    (-inf, left_junction) and with the pure right word on [right_junction, inf).
    """
    if isinstance(p, PeriodicPotential):
        w = tuple(p.value(n) for n in range(p.period))
        return w, w, 0, 0
    if isinstance(p, EventuallyPeriodicPotential):
        lw = tuple(p.left_word)
        rw = tuple(p.right_word)
        return lw, rw, p.core_start, p.right_start
    if isinstance(p, ExplicitPotential):
        w = (p.outside,)
        return w, w, p.start, p.start + len(p.values)
    raise TypeError("limit operators need an (eventually) periodic or "
                    "explicit potential, got %s" % type(p).__name__)


@dataclass(frozen=True)
class LimitOperator:
    """One periodic limit operator, with the shift residues producing it."""

    side: str  # "left" | "right"
    residues: tuple
    potential: PeriodicPotential


def limit_operators(p, side=None):
    """Distinct periodic limit operators of p, per side, rotations deduped."""
    lw, rw, _, _ = _side_words(p)
    out = []
    for s, w in (("left", lw), ("right", rw)):
        if side is not None and s != side:
            continue
        seen = {}
        q = len(w)
        for r in range(q):
            rot = periodic(w, phase=r)
            key = tuple(rot.value(n) for n in range(q))
            if key in seen:
                seen[key][0].append(r)
            else:
                seen[key] = ([r], rot)
        for residues, rot in seen.values():
            out.append(LimitOperator(side=s, residues=tuple(residues),
                                     potential=rot))
    return tuple(out)


def _merge_intervals(intervals):
    ivs = sorted(intervals)
    out = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True)
class EssentialSpectrum:
    intervals: tuple  # merged float intervals
    side_bands: dict  # "left"/"right" -> BandSet

    def contains(self, z):
        """Exact membership via the side discriminants."""
        zf = _to_fraction(z)
        return any(abs(bs.disc.value(zf)) <= 2
                   for bs in self.side_bands.values())

    def distance_to(self, z):
        return min(bs.distance_to_spectrum(z)
                   for bs in self.side_bands.values())

    def to_json(self):
        return {"intervals": [[lo, hi] for lo, hi in self.intervals],
                "left": self.side_bands["left"].to_json(),
                "right": self.side_bands["right"].to_json()}


def essential_spectrum(p):
    """Union of the limit-operator spectra; exact edges per side."""
    lw, rw, _, _ = _side_words(p)
    left_bs = bands(discriminant(periodic(lw)))
    right_bs = left_bs if tuple(rw) == tuple(lw) \
        else bands(discriminant(periodic(rw)))
    ivs = _merge_intervals(list(left_bs.bands) + list(right_bs.bands))
    return EssentialSpectrum(intervals=ivs,
                             side_bands={"left": left_bs, "right": right_bs})


@dataclass(frozen=True)
class FredholmResult:
    fredholm: bool
    operator: str  # "full_line" | "half_line"
    z: object
    side_position: dict  # side -> "gap" | "band" | "edge"
    witness_side: object  # side whose bands contain z, if any
    at_band_edge: bool


def is_fredholm(p, z, operator="full_line"):
    """Exact Fredholm test for H - z (or its Dirichlet half-line
    compression, which only sees the right limit operators)."""
    if operator not in ("full_line", "half_line"):
        raise ValueError("operator must be full_line or half_line")
    zf = _to_fraction(z)
    lw, rw, _, _ = _side_words(p)
    sides = {"right": rw} if operator == "half_line" else {"left": lw, "right": rw}
    pos = {}
    witness = None
    edge = False
    for s, w in sides.items():
        val = discriminant(periodic(w)).value(zf)
        if abs(val) < 2:
            pos[s] = "band"
            witness = witness or s
        elif abs(val) == 2:
            pos[s] = "edge"
            witness = witness or s
            edge = True
        else:
            pos[s] = "gap"
    ok = all(v == "gap" for v in pos.values())
    return FredholmResult(fredholm=ok, operator=operator, z=z,
                          side_position=pos, witness_side=witness,
                          at_band_edge=edge)


@dataclass(frozen=True)
class InvertibilityResult:
    """Exact invertibility verdict for one (half-line) operator at z."""

    invertible: bool
    status: str  # invertible | in_band | band_edge | eigenvalue
    detail: dict


def _halfline_invertible_from_junction(p, z, junction, word_len):
    """Exact invertibility of the Dirichlet compression to [0, inf) of a
    potential that is periodic (period word_len) from site `junction` on.

    The orbit x_{-1} = 0, x_0 = 1 is propagated exactly to the junction;
    z is an eigenvalue iff that vector spans the contracting eigendirection
    of the one-period transfer there. For junction = 0 this is the classical
    m12(z) = 0 and |m22(z)| < 1 criterion.
    """
    zf = _to_fraction(z)
    disc_val = discriminant(
        periodic(tuple(p.value(n) for n in range(junction, junction + word_len)))
    ).value(zf)
    if abs(disc_val) < 2:
        return InvertibilityResult(False, "in_band", {"disc": disc_val})
    if abs(disc_val) == 2:
        return InvertibilityResult(False, "band_edge", {"disc": disc_val})
    # propagate the Dirichlet data to the junction, exactly
    u = (Fraction(0), Fraction(1))
    m_in = transfer_product(p, zf, 0, junction - 1)  # identity if junction <= 0
    u = m_in.apply(u)
    m = transfer_product(p, zf, junction, junction + word_len - 1)
    w = m.apply(u)
    wronskian = w[0] * u[1] - w[1] * u[0]
    detail = {"disc": disc_val, "wronskian": wronskian}
    if wronskian != 0:
        return InvertibilityResult(True, "invertible", detail)
    lam = w[0] / u[0] if u[0] != 0 else w[1] / u[1]
    detail["multiplier"] = lam
    if abs(lam) < 1:
        return InvertibilityResult(False, "eigenvalue", detail)
    return InvertibilityResult(True, "invertible", detail)


def halfline_invertible(p, z):
    """Exact invertibility of the Dirichlet half-line compression of p.

    p must be periodic, or eventually periodic / explicit; only the part of
    p on [0, inf) matters.
    """
    lw, rw, _, rj = _side_words(p)
    return _halfline_invertible_from_junction(p, z, max(rj, 0), len(rw))


def _reversed_potential(word):
    return periodic(tuple(reversed(word)))


@dataclass(frozen=True)
class ConditionResult:
    key: str
    holds: object  # True | False | None (undetermined)
    summary: str
    items: tuple  # per-rotation (residue, InvertibilityResult) or scan data


@dataclass(frozen=True)
class ApplicabilityReport:
    operator: str
    z: object
    conditions: dict  # key -> ConditionResult
    applicable: object  # True | False | None

    def failed_keys(self):
        return tuple(k for k, c in self.conditions.items() if c.holds is False)


def _rotation_condition(key, word, z, compress, integer_certificates):
    """Test all rotations of `word` under the one-sided compression.

    compress = "plus" tests the word as written on [0, inf); "minus" tests
    the compression to (-inf, -1], which after the reflection n -> -1 - n is
    the plus-compression of the reversed word.
    """
    w = tuple(reversed(word)) if compress == "minus" else tuple(word)
    q = len(w)
    items = []
    bad = []
    for r in range(q):
        rot = periodic(w, phase=r)
        res = _halfline_invertible_from_junction(rot, z, 0, q)
        cert = None
        if integer_certificates and res.status in ("invertible", "eigenvalue"):
            zf = _to_fraction(z)
            if zf.denominator == 1 and rot.regime == INTEGER:
                cert = monodromy_dirichlet_test(rot, int(zf))
        items.append((r, res, cert))
        if not res.invertible:
            bad.append((r, res.status))
    holds = not bad
    summary = ("all %d rotations invertible" % q) if holds else \
        ("rotation failures: %s" % ", ".join("r=%d %s" % b for b in bad))
    return ConditionResult(key=key, holds=holds, summary=summary,
                           items=tuple(items))


def _decaying_direction(m, side):
    """Float eigendirection of a det-1 2x2 transfer with |trace| > 2:
    the contracting one for side "right", the expanding one for "left"."""
    t = m.a + m.d
    s = 1.0 if t >= 0 else -1.0
    lam_big = (t + s * math.sqrt(t * t - 4.0)) / 2.0
    lam = (1.0 / lam_big) if side == "right" else lam_big
    v1 = (m.b, lam - m.a)
    v2 = (lam - m.d, m.c)
    v = v1 if (v1[0] * v1[0] + v1[1] * v1[1]) >= (v2[0] * v2[0] + v2[1] * v2[1]) else v2
    n = math.hypot(*v)
    return (v[0] / n, v[1] / n), lam


def full_line_kernel_scan(p, z):
    """Float shooting match for a kernel of H - z on the full line.

    Requires z in a spectral gap of both sides. Builds the solution decaying
    at +inf and the one decaying at -inf, transports both to site 0 with
    per-step renormalisation and returns the absolute matching determinant
    of the two unit directions. Values below 1e-8 mean a kernel cannot be
    excluded numerically.
    """
    lw, rw, lj, rj = _side_words(p)
    zf = float(_to_fraction(z))

    def step(n):
        return TransferMatrix(0.0, 1.0, -1.0, zf - float(p.value(n)))

    def transport_to_zero(vec, site):
        x, y = vec
        n = site
        while n > 0:  # vec holds (x_{n-1}, x_n); go down
            t = step(n - 1)
            x, y = t.d * x - t.b * y, -t.c * x + t.a * y  # inverse, det 1
            m = max(abs(x), abs(y))
            x, y = x / m, y / m
            n -= 1
        while n < 0:  # go up
            t = step(n)
            x, y = t.a * x + t.b * y, t.c * x + t.d * y
            m = max(abs(x), abs(y))
            x, y = x / m, y / m
            n += 1
        h = math.hypot(x, y)
        return (x / h, y / h)

    m_r = transfer_product(p, zf, max(rj, 0), max(rj, 0) + len(rw) - 1)
    u_plus, lam_r = _decaying_direction(m_r, "right")
    u_plus = transport_to_zero(u_plus, max(rj, 0))

    a_l = min(lj, 0)
    m_l = transfer_product(p, zf, a_l - len(lw), a_l - 1)
    u_minus, lam_l = _decaying_direction(m_l, "left")
    u_minus = transport_to_zero(u_minus, a_l)

    det = abs(u_minus[0] * u_plus[1] - u_minus[1] * u_plus[0])
    return {"matching_det": det, "right_multiplier": lam_r,
            "left_multiplier": lam_l}


def _full_line_invertible_condition(p, z):
    lw, rw, lj, rj = _side_words(p)
    fred = is_fredholm(p, z, "full_line")
    if not fred.fredholm:
        return ConditionResult(
            key="a", holds=False,
            summary="z in the essential spectrum (side %s, %s)"
                    % (fred.witness_side, fred.side_position[fred.witness_side]),
            items=(fred,))
    if isinstance(p, PeriodicPotential):
        # periodic full-line spectrum is purely essential
        return ConditionResult(key="a", holds=True,
                               summary="periodic: gap point, exact",
                               items=(fred,))
    scan = full_line_kernel_scan(p, z)
    if scan["matching_det"] < KERNEL_SUSPECT_TOL:
        return ConditionResult(
            key="a", holds=None,
            summary="kernel suspected: matching determinant %.3e < %g"
                    % (scan["matching_det"], KERNEL_SUSPECT_TOL),
            items=(fred, scan))
    return ConditionResult(
        key="a", holds=True,
        summary="Fredholm and no kernel (matching determinant %.3e)"
                % scan["matching_det"],
        items=(fred, scan))


def _half_line_invertible_condition(p, z):
    res = halfline_invertible(p, z)
    if res.invertible:
        return ConditionResult(key="d", holds=True,
                               summary="half-line operator invertible, exact",
                               items=(res,))
    return ConditionResult(key="d", holds=False,
                           summary="half-line operator not invertible: %s"
                                   % res.status,
                           items=(res,))


def fsm_applicability(p, z=0, operator="full_line"):
    """Decide the applicability conditions of the finite section method.

    Returns a report with one ConditionResult per condition ("a","b","c" for
    full-line sections, "d","e" for half-line sections). holds is True or
    False when decided exactly, None when only a float scan was available
    (two-sided kernel search). applicable follows the same convention.
    """
    if operator not in ("full_line", "half_line"):
        raise ValueError("operator must be full_line or half_line")
    lw, rw, _, _ = _side_words(p)
    zf = _to_fraction(z)
    if p.regime not in (INTEGER, RATIONAL):
        raise RegimeError("applicability analysis is exact-only")
    integer_certs = p.regime == INTEGER and zf.denominator == 1
    conds = {}
    if operator == "full_line":
        conds["a"] = _full_line_invertible_condition(p, zf)
        conds["b"] = _rotation_condition("b", rw, zf, "plus", integer_certs)
        conds["c"] = _rotation_condition("c", lw, zf, "minus", integer_certs)
    else:
        conds["d"] = _half_line_invertible_condition(p, zf)
        conds["e"] = _rotation_condition("e", rw, zf, "minus", integer_certs)
    if any(c.holds is False for c in conds.values()):
        applicable = False
    elif any(c.holds is None for c in conds.values()):
        applicable = None
    else:
        applicable = True
    return ApplicabilityReport(operator=operator, z=z, conditions=conds,
                               applicable=applicable)
