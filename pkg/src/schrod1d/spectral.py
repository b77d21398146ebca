"""Band structure, Dirichlet point spectrum and truncation spectra.

For a periodic potential the spectrum of the full-line operator is the set
{z : |disc(z)| <= 2} with disc the Floquet discriminant; it is a union of at
most `period` closed bands. The half-line compression with a Dirichlet
condition adds at most one eigenvalue per spectral gap, located exactly by
m12(z) = 0 together with |m22(z)| < 1 for the one-period transfer aligned at
the cut. Everything on the exact side is done with Sturm chains over Q; the
floating-point side wraps LAPACK's bisection eigensolver for symmetric
tridiagonal sections.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import polynomials as pl
from .potential import PeriodicPotential
from .scalars import FLOAT, RegimeError
from .transfer import Discriminant, discriminant, symbolic_monodromy

EDGE_WIDTH = Fraction(1, 2 ** 60)


class SpectralStructureError(ValueError):
    """Raised when a discriminant violates the self-adjoint band structure."""


def _to_fraction(z):
    if isinstance(z, bool):
        raise RegimeError("boolean spectral parameter rejected")
    if isinstance(z, (int, Fraction)):
        return Fraction(z)
    if isinstance(z, float):
        if math.isnan(z) or math.isinf(z):
            raise ValueError("spectral parameter must be finite")
        return Fraction(z)
    raise RegimeError("spectral parameter must be int, Fraction or float")


@dataclass(frozen=True)
class EdgeRoot:
    """Isolating interval of one distinct root of disc^2 - 4."""

    lo: Fraction
    hi: Fraction

    @property
    def approx(self):
        return float((self.lo + self.hi) / 2)

    @property
    def exact(self):
        return self.lo if self.lo == self.hi else None


@dataclass(frozen=True)
class BandSet:
    """Band/gap decomposition of a periodic spectrum, with exact edges."""

    period: int
    disc: Discriminant
    edges: tuple  # EdgeRoot, ascending
    band_edge_pairs: tuple  # (lo_edge_index, hi_edge_index) per band

    @property
    def bands(self):
        return tuple((self.edges[i].approx, self.edges[j].approx)
                     for i, j in self.band_edge_pairs)

    @property
    def gaps(self):
        out = []
        for (_, j), (k, _) in zip(self.band_edge_pairs, self.band_edge_pairs[1:]):
            out.append((self.edges[j].approx, self.edges[k].approx))
        return tuple(out)

    def locate(self, z):
        """Exact position of z relative to the spectrum.

        Returns a dict with kind in {"band", "edge", "gap", "below", "above"}
        and the (band or gap) index where applicable. Floats are converted to
        exact rationals first, so the answer never depends on edge rounding.
        """
        zf = _to_fraction(z)
        val = self.disc.value(zf)
        if abs(val) < 2:
            for b, (i, j) in enumerate(self.band_edge_pairs):
                if self.edges[i].lo <= zf <= self.edges[j].hi:
                    return {"kind": "band", "index": b}
            raise AssertionError("|disc| < 2 point outside every band interval")
        if abs(val) == 2:
            # z is an exact root of disc^2 - 4: either a band boundary or a
            # closed-gap touching point interior to a merged band
            boundary = {i for pair in self.band_edge_pairs for i in pair}
            for k, e in enumerate(self.edges):
                if e.lo <= zf <= e.hi:
                    if k in boundary:
                        return {"kind": "edge", "index": None}
                    for b, (i, j) in enumerate(self.band_edge_pairs):
                        if self.edges[i].lo <= zf <= self.edges[j].hi:
                            return {"kind": "band", "index": b}
            raise AssertionError("|disc| = 2 point not matched to any edge root")
        if zf < self.edges[self.band_edge_pairs[0][0]].hi:
            return {"kind": "below", "index": None}
        if zf > self.edges[self.band_edge_pairs[-1][1]].lo:
            return {"kind": "above", "index": None}
        for g, ((_, j), (k, _)) in enumerate(
                zip(self.band_edge_pairs, self.band_edge_pairs[1:])):
            if self.edges[j].hi < zf < self.edges[k].lo:
                return {"kind": "gap", "index": g}
        # z sits inside an edge isolating interval but is not the root;
        # the interval width 2^-60 bounds the ambiguity, call it the edge side
        return {"kind": "edge", "index": None}

    def distance_to_spectrum(self, z):
        """Distance from z to the band union (0 inside); float, edge error
        bounded by the 2^-60 isolating width."""
        loc = self.locate(z)
        if loc["kind"] in ("band", "edge"):
            return 0.0
        zf = _to_fraction(z)
        if loc["kind"] == "below":
            return float(self.edges[self.band_edge_pairs[0][0]].lo - zf)
        if loc["kind"] == "above":
            return float(zf - self.edges[self.band_edge_pairs[-1][1]].hi)
        g = loc["index"]
        left = self.edges[self.band_edge_pairs[g][1]]
        right = self.edges[self.band_edge_pairs[g + 1][0]]
        return float(min(zf - left.hi, right.lo - zf))

    def to_json(self):
        return {
            "period": self.period,
            "bands": [[lo, hi] for lo, hi in self.bands],
            "gaps": [[lo, hi] for lo, hi in self.gaps],
            "edges": [{"lo": str(e.lo), "hi": str(e.hi)} for e in self.edges],
        }


def bands(d):
    """Assemble the band structure from a discriminant, exactly.

    Roots of disc^2 - 4 are isolated with Sturm chains and refined to width
    2^-60; the sign of disc^2 - 4 at exact rational sample points between
    consecutive roots decides band versus gap. Bands touching at a closed gap
    are merged. Raises SpectralStructureError if disc^2 - 4 has non-real
    roots, which cannot happen for a real periodic potential.
    """
    if not isinstance(d, Discriminant):
        d = discriminant(d)
    f = pl.psub(pl.pmul(d.coeffs, d.coeffs), pl.constant(4))
    total = pl.real_root_count_with_multiplicity(f)
    if total != pl.degree(f):
        raise SpectralStructureError(
            "disc^2 - 4 must have all roots real (got %d of %d)"
            % (total, pl.degree(f)))
    sf = pl.square_free(f)
    raw = pl.isolate_real_roots(sf)
    if not raw:
        raise SpectralStructureError("discriminant has no band edges")
    edges = []
    for lo, hi in raw:
        if lo != hi:
            lo, hi = pl.refine_root(sf, lo, hi, EDGE_WIDTH)
        edges.append(EdgeRoot(lo, hi))

    # exact sample points strictly between consecutive root intervals
    def sign_between(i):
        if i < 0:
            s = edges[0].lo - 1
        elif i >= len(edges) - 1:
            s = edges[-1].hi + 1
        else:
            s = (edges[i].hi + edges[i + 1].lo) / 2
        v = pl.peval(f, s)
        if v == 0:
            raise AssertionError("sample point hit a root")
        return 1 if v > 0 else -1

    segs = [sign_between(i) for i in range(-1, len(edges))]
    if segs[0] != 1 or segs[-1] != 1:
        raise SpectralStructureError("disc^2 - 4 must be positive far out")

    pairs = []
    open_lo = None
    for i, e in enumerate(edges):
        before, after = segs[i], segs[i + 1]
        if before > 0 and after < 0:
            open_lo = i
        elif before < 0 and after > 0:
            pairs.append((open_lo, i))
            open_lo = None
        elif before > 0 and after > 0:
            # double root with |disc| = 2 on both sides: degenerate band
            pairs.append((i, i))
        # before < 0 and after < 0: closed gap, band continues through e
    if open_lo is not None:
        raise AssertionError("unterminated band")
    if len(pairs) > d.period:
        raise SpectralStructureError("more bands than the period allows")
    return BandSet(period=d.period, disc=d, edges=tuple(edges),
                   band_edge_pairs=tuple(pairs))


@dataclass(frozen=True)
class DirichletEigenvalue:
    """One eigenvalue of the half-line compression, exactly isolated."""

    lo: Fraction
    hi: Fraction
    approx: float
    location: str  # "gap", "below" or "above"
    gap_index: object  # int for finite gaps, None otherwise
    m22_side: int  # sign of m22 at the root (+1 decaying positive branch)


@dataclass(frozen=True)
class DirichletSpectrum:
    eigenvalues: tuple
    rejected: tuple  # roots of m12 with |m22| >= 1 (float approximations)
    band_set: object
    warnings: tuple


class CrossValidationError(AssertionError):
    """Exact Dirichlet eigenvalue not seen by large truncations."""


def _sign_of_poly_at_root(g, target, lo, hi):
    """Sign of g at the unique root of `target` inside (lo, hi).

    Requires gcd(g, target) to have no root there (checked by the caller);
    the interval is refined until g has no root inside, then the sign is
    constant across it.
    """
    sg = pl.square_free(g)
    while pl.count_roots_in(sg, lo, hi) > 0:
        lo, hi = pl.refine_root(target, lo, hi, (hi - lo) / 4)
    mid = (lo + hi) / 2
    v = pl.peval(g, mid)
    assert v != 0
    return (1 if v > 0 else -1), lo, hi


def dirichlet_eigenvalues(p, cross_validate=True):
    """Point spectrum of the Dirichlet half-line compression, exact.

    Roots of m12 are isolated over Q; each is kept iff |m22| < 1 there,
    decided by exact sign tests (the boundary case |m22| = 1 coincides with
    roots of disc^2 - 4 and is rejected). Optionally cross-validates every
    eigenvalue against LAPACK truncation spectra at sizes >= 60 * period.
    """
    if not isinstance(p, PeriodicPotential):
        raise TypeError("dirichlet_eigenvalues needs a periodic potential")
    m11, m12, m21, m22 = symbolic_monodromy(p)
    d = Discriminant(period=p.period, coeffs=pl.padd(m11, m22))
    bs = bands(d)
    warnings = []
    eigs = []
    rejected = []
    if pl.degree(m12) >= 1:
        f4 = pl.psub(pl.pmul(d.coeffs, d.coeffs), pl.constant(4))
        boundary = pl.pgcd(m12, f4)
        m22sq1 = pl.psub(pl.pmul(m22, m22), pl.constant(1))
        target = pl.square_free(m12)
        for lo, hi in pl.isolate_real_roots(m12):
            if lo == hi:
                val = pl.peval(m22, lo)
                keep = abs(val) < 1
                side = 0 if val == 0 else (1 if val > 0 else -1)
            elif pl.degree(boundary) >= 1 and pl.count_roots_in(boundary, lo, hi):
                keep = False  # |m22| = 1 exactly: band edge, no eigenvalue
                side = None
            else:
                sgn, lo, hi = _sign_of_poly_at_root(m22sq1, target, lo, hi)
                keep = sgn < 0
                sside, lo, hi = _sign_of_poly_at_root(m22, target, lo, hi)
                side = sside
            if lo != hi:
                lo, hi = pl.refine_root(target, lo, hi, EDGE_WIDTH)
            approx = float((lo + hi) / 2)
            if not keep:
                rejected.append(approx)
                continue
            mid = (lo + hi) / 2
            loc = bs.locate(mid)
            if loc["kind"] == "band":
                raise AssertionError("eigenvalue located inside a band")
            location = loc["kind"] if loc["kind"] in ("below", "above") else "gap"
            eigs.append(DirichletEigenvalue(
                lo=lo, hi=hi, approx=approx, location=location,
                gap_index=loc["index"], m22_side=side))
    per_gap = {}
    for e in eigs:
        key = (e.location, e.gap_index)
        per_gap[key] = per_gap.get(key, 0) + 1
    for key, cnt in per_gap.items():
        if cnt > 1:
            warnings.append("multiple Dirichlet eigenvalues share gap %r" % (key,))

    if cross_validate and eigs:
        for size in (60 * p.period, 240 * p.period, 960 * p.period):
            spec = truncation_spectrum(p, size)
            bad = [e for e in eigs
                   if np.min(np.abs(spec - e.approx)) > 1e-6]
            if not bad:
                break
        else:
            raise CrossValidationError(
                "eigenvalues %r unmatched by truncation spectra"
                % [e.approx for e in bad])
    return DirichletSpectrum(eigenvalues=tuple(eigs), rejected=tuple(rejected),
                             band_set=bs, warnings=tuple(warnings))


def _tridiag_data(p, z, l, r):
    if r < l:
        raise ValueError("empty section")
    d = np.array([float(p.value(n)) for n in range(l, r + 1)], dtype=float)
    if z:
        d = d - float(z)
    e = np.ones(r - l, dtype=float)
    return d, e


def truncation_spectrum(p, size, start=0, z=0):
    """Eigenvalues of the size x size section of H - z on [start, start+size),
    via LAPACK bisection (stebz); ascending numpy array."""
    if size < 1:
        raise ValueError("section size must be positive")
    d, e = _tridiag_data(p, z, start, start + size - 1)
    if size == 1:
        return d.copy()
    return np.sort(eigvalsh_tridiagonal(d, e, lapack_driver='stebz'))


def _count_below(d, e, z):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below z,
    by the standard LDL^T inertia recursion."""
    cnt = 0
    q = 1.0
    for i in range(len(d)):
        off = (e[i - 1] * e[i - 1]) / q if i else 0.0
        q = (d[i] - z) - off
        if q == 0.0:
            q = -1e-300
        if q < 0:
            cnt += 1
    return cnt


def smallest_singular_value(p, size, z, start=0):
    """sigma_min of the size x size section of H - z.

    The section is symmetric, so the singular values are |lambda - z| over
    section eigenvalues lambda; only the two eigenvalues adjacent to z are
    computed (bisection with index selection after an inertia count).
    """
    if size < 1:
        raise ValueError("section size must be positive")
    d, e = _tridiag_data(p, 0, start, start + size - 1)
    zf = float(z)
    if size == 1:
        return abs(d[0] - zf)
    k = _count_below(d, e, zf)
    idx = sorted({max(0, k - 1), min(size - 1, k)})
    ev = eigvalsh_tridiagonal(d, e, select='i',
                              select_range=(idx[0], idx[-1]),
                              lapack_driver='stebz')
    return float(np.min(np.abs(ev - zf)))


IN_GAP_MARGIN = 1e-8
CLUSTER_WIDTH = 1e-4


@dataclass(frozen=True)
class PollutionCluster:
    center: float
    location: str
    gap_index: object
    hits: int  # number of section sizes where the cluster appears
    values: tuple


@dataclass(frozen=True)
class PollutionReport:
    sizes: tuple
    band_set: object
    in_gap_counts: dict  # size -> number of in-gap eigenvalues
    clusters: tuple  # persistent clusters only
    per_gap_counts: dict  # (location, index) -> persistent cluster count


def pollution_report(p, sizes, start=0):
    """Track truncation eigenvalues that fall inside spectral gaps.

    For each section size, eigenvalues at distance > 1e-8 from the band
    union are collected; values across sizes are clustered at width 1e-4 and
    a cluster is reported when it persists in at least max(2, len(sizes)//2)
    sizes. True Dirichlet eigenvalues of half-line compressions show up as
    persistent clusters; spectral pollution drifts with the size.
    """
    bs = bands(discriminant(p))
    sizes = tuple(sorted(set(int(s) for s in sizes)))
    if not sizes:
        raise ValueError("need at least one section size")
    in_gap = {}
    samples = []  # (value, size)
    for size in sizes:
        spec = truncation_spectrum(p, size, start=start)
        hits = [float(v) for v in spec
                if bs.distance_to_spectrum(float(v)) > IN_GAP_MARGIN]
        in_gap[size] = len(hits)
        samples.extend((v, size) for v in hits)
    samples.sort()
    clusters = []
    i = 0
    while i < len(samples):
        j = i
        while j + 1 < len(samples) and samples[j + 1][0] - samples[j][0] <= CLUSTER_WIDTH:
            j += 1
        vals = [v for v, _ in samples[i:j + 1]]
        sz = {s for _, s in samples[i:j + 1]}
        center = sum(vals) / len(vals)
        loc = bs.locate(center)
        location = loc["kind"] if loc["kind"] in ("below", "above") else "gap"
        clusters.append(PollutionCluster(
            center=center, location=location, gap_index=loc["index"],
            hits=len(sz), values=tuple(vals)))
        i = j + 1
    need = max(2, len(sizes) // 2)
    persistent = tuple(c for c in clusters if c.hits >= need)
    per_gap = {}
    for c in persistent:
        key = (c.location, c.gap_index)
        per_gap[key] = per_gap.get(key, 0) + 1
    return PollutionReport(sizes=sizes, band_set=bs, in_gap_counts=in_gap,
                           clusters=persistent, per_gap_counts=per_gap)
