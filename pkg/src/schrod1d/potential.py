"""Potentials on the integer lattice.

A potential is a total, deterministic map Z -> scalars in a declared regime
(see scalars.py). Five families are supported:

- periodic: word repeated over Z with a phase,
- eventually_periodic: a finite core with periodic words tiling both sides,
- sturmian: the golden-ratio Sturmian 0/1 sequence, evaluated exactly,
- explicit: a finite window with a constant value outside,
- random: counter-based pseudo random choices from a finite value set.

All families support exact pointwise evaluation, shifting, reflection about
the origin and JSON round-trips. Reflection and shifting satisfy
reflect(p).value(n) == p.value(-n) and shift(p, k).value(n) == p.value(n + k)
exactly, and reflect is an involution on the nose (same description, not just
pointwise equality).
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import isqrt

from .prng import counter_value
from .scalars import (INTEGER, RATIONAL, FLOAT, GAUSSIAN, RegimeError,
                      coerce, decode_scalar, encode_scalar, regime_of)


def _floor_golden_multiple(n):
    """floor(n * a) with a = (sqrt(5) - 1) / 2, exact for any integer n.

    For n >= 0 this is (isqrt(5 n^2) - n) // 2; since n * sqrt(5) is
    irrational for n != 0, the negative case is -floor(|n| a) - 1.
    """
    if n == 0:
        return 0
    m = abs(n)
    f = (isqrt(5 * m * m) - m) // 2
    return f if n > 0 else -f - 1


def fibonacci_value(n):
    """n-th letter of the golden-ratio Sturmian sequence, exactly.

    Equals 1 when n * a mod 1 lands in [1 - a, 1) with a = (sqrt(5) - 1)/2,
    equivalently floor((n+1) a) - floor(n a). Integer arithmetic only.
    """
    return _floor_golden_multiple(n + 1) - _floor_golden_multiple(n)


def _coerce_word(values, regime):
    return tuple(coerce(v, regime) for v in values)


def _infer_regime(values):
    best = INTEGER
    for v in values:
        r = regime_of(v)
        if r == GAUSSIAN:
            if best not in (INTEGER, GAUSSIAN):
                raise RegimeError("gaussian values mixed with %s" % best)
            best = GAUSSIAN
        elif r == FLOAT:
            if best == GAUSSIAN:
                raise RegimeError("gaussian values mixed with float")
            best = FLOAT
        elif r == RATIONAL and best == INTEGER:
            best = RATIONAL
        elif r == RATIONAL and best == GAUSSIAN:
            raise RegimeError("gaussian values mixed with rational")
    return best


class Potential:
    """Base class; concrete families implement value(n)."""

    regime = INTEGER
    kind = "abstract"

    def value(self, n):
        raise NotImplementedError

    def window(self, lo, hi):
        """Values on the inclusive index range [lo, hi]."""
        return [self.value(n) for n in range(lo, hi + 1)]

    def shift(self, k):
        raise NotImplementedError

    def reflect(self):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def float_bounds(self, probe=None):
        """Crude numeric value bounds (used for spectral search windows)."""
        vals = self._bound_values()
        fs = [_scalar_float_bound(v) for v in vals]
        return min(fs), max(fs)

    def _bound_values(self):
        raise NotImplementedError


def _scalar_float_bound(v):
    r = regime_of(v)
    if r == GAUSSIAN:
        return float(v.abs2()) ** 0.5
    return float(v)


@dataclass(frozen=True)
class PeriodicPotential(Potential):
    """word repeated over Z: value(n) = word[(n - phase) mod period]."""

    word: tuple
    phase: int = 0
    regime: str = INTEGER
    kind: str = field(default="periodic", init=False)

    def __post_init__(self):
        if not self.word:
            raise ValueError("periodic word must be nonempty")
        object.__setattr__(self, "word", _coerce_word(self.word, self.regime))
        object.__setattr__(self, "phase", self.phase % len(self.word))

    @property
    def period(self):
        return len(self.word)

    def value(self, n):
        return self.word[(n - self.phase) % len(self.word)]

    def shift(self, k):
        return replace(self, phase=(self.phase - k) % len(self.word))

    def reflect(self):
        return replace(self, word=self.word[::-1],
                       phase=(1 - self.phase) % len(self.word))

    def to_json(self):
        return {"kind": "periodic", "regime": self.regime,
                "word": [encode_scalar(v) for v in self.word],
                "phase": self.phase}

    def _bound_values(self):
        return self.word


@dataclass(frozen=True)
class EventuallyPeriodicPotential(Potential):
    """Periodic words tiling both sides of a finite (possibly empty) core.

    core occupies [core_start, core_start + len(core) - 1]; the right word
    starts right after the core and tiles to +infinity, the left word ends
    right before the core and tiles to -infinity.
    """

    left_word: tuple
    core: tuple
    core_start: int
    right_word: tuple
    regime: str = INTEGER
    kind: str = field(default="eventually_periodic", init=False)

    def __post_init__(self):
        if not self.left_word or not self.right_word:
            raise ValueError("side words must be nonempty")
        object.__setattr__(self, "left_word", _coerce_word(self.left_word, self.regime))
        object.__setattr__(self, "core", _coerce_word(self.core, self.regime))
        object.__setattr__(self, "right_word", _coerce_word(self.right_word, self.regime))

    @property
    def right_start(self):
        return self.core_start + len(self.core)

    def value(self, n):
        if n >= self.right_start:
            return self.right_word[(n - self.right_start) % len(self.right_word)]
        if n < self.core_start:
            return self.left_word[(n - self.core_start) % len(self.left_word)]
        return self.core[n - self.core_start]

    def shift(self, k):
        return replace(self, core_start=self.core_start - k)

    def reflect(self):
        return replace(self,
                       left_word=self.right_word[::-1],
                       core=self.core[::-1],
                       core_start=-(self.core_start + len(self.core) - 1),
                       right_word=self.left_word[::-1])

    def to_json(self):
        return {"kind": "eventually_periodic", "regime": self.regime,
                "left_word": [encode_scalar(v) for v in self.left_word],
                "core": [encode_scalar(v) for v in self.core],
                "core_start": self.core_start,
                "right_word": [encode_scalar(v) for v in self.right_word]}

    def _bound_values(self):
        return self.left_word + self.core + self.right_word


@dataclass(frozen=True)
class SturmianPotential(Potential):
    """Golden-ratio Sturmian 0/1 potential, exact integer evaluation.

    value(n) = fibonacci_value(orientation * n + offset). orientation = -1
    encodes reflected copies so that reflect stays in the family.
    """

    offset: int = 0
    orientation: int = 1
    regime: str = field(default=INTEGER, init=False)
    kind: str = field(default="sturmian", init=False)

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +-1")

    def value(self, n):
        return fibonacci_value(self.orientation * n + self.offset)

    def shift(self, k):
        return replace(self, offset=self.offset + self.orientation * k)

    def reflect(self):
        return replace(self, orientation=-self.orientation)

    def to_json(self):
        return {"kind": "sturmian", "regime": self.regime,
                "slope": "golden-ratio", "offset": self.offset,
                "orientation": self.orientation}

    def _bound_values(self):
        return (0, 1)


@dataclass(frozen=True)
class ExplicitPotential(Potential):
    """Finite window of values with a constant value outside."""

    values: tuple
    start: int
    outside: object = 0
    regime: str = INTEGER
    kind: str = field(default="explicit", init=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _coerce_word(self.values, self.regime))
        object.__setattr__(self, "outside", coerce(self.outside, self.regime))

    def value(self, n):
        i = n - self.start
        if 0 <= i < len(self.values):
            return self.values[i]
        return self.outside

    def shift(self, k):
        return replace(self, start=self.start - k)

    def reflect(self):
        return replace(self, values=self.values[::-1],
                       start=-(self.start + len(self.values) - 1))

    def to_json(self):
        return {"kind": "explicit", "regime": self.regime,
                "window": [encode_scalar(v) for v in self.values],
                "start": self.start, "outside": encode_scalar(self.outside)}

    def _bound_values(self):
        return self.values + (self.outside,)


@dataclass(frozen=True)
class RandomPotential(Potential):
    """Deterministic pseudo random choices from a finite value set.

    value(n) picks from values by a splitmix64 counter keyed on
    (seed, orientation * n + index_offset); random access, no state, so
    shift and reflect are exact reindexings.
    """

    seed: int
    values: tuple
    index_offset: int = 0
    orientation: int = 1
    regime: str = INTEGER
    kind: str = field(default="random", init=False)

    def __post_init__(self):
        if not (0 <= self.seed < 2 ** 64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.values:
            raise ValueError("value set must be nonempty")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +-1")
        object.__setattr__(self, "values", _coerce_word(self.values, self.regime))

    def value(self, n):
        i = self.orientation * n + self.index_offset
        return self.values[counter_value(self.seed, i) % len(self.values)]

    def shift(self, k):
        return replace(self, index_offset=self.index_offset + self.orientation * k)

    def reflect(self):
        return replace(self, orientation=-self.orientation)

    def to_json(self):
        return {"kind": "random", "regime": self.regime, "seed": self.seed,
                "values": [encode_scalar(v) for v in self.values],
                "index_offset": self.index_offset,
                "orientation": self.orientation}

    def _bound_values(self):
        return self.values


def periodic(word, phase=0, regime=None):
    """Build a periodic potential, inferring the regime when not given."""
    word = tuple(word)
    return PeriodicPotential(word, phase, regime or _infer_regime(word))


def eventually_periodic(left_word, core, core_start, right_word, regime=None):
    left_word, core, right_word = tuple(left_word), tuple(core), tuple(right_word)
    r = regime or _infer_regime(left_word + core + right_word)
    return EventuallyPeriodicPotential(left_word, core, core_start, right_word, r)


def sturmian(offset=0, orientation=1):
    return SturmianPotential(offset, orientation)


def explicit(values, start=0, outside=0, regime=None):
    values = tuple(values)
    r = regime or _infer_regime(values + (outside,))
    return ExplicitPotential(values, start, outside, r)


def random_values(seed, values, regime=None):
    values = tuple(values)
    return RandomPotential(seed, values, regime=regime or _infer_regime(values))


def eval_potential(p, n):
    """Module-level alias of p.value(n)."""
    return p.value(n)


def reflect(p):
    return p.reflect()


def shift(p, k):
    return p.shift(k)


def _decode_scalar_any(v):
    """Scalar from JSON without a declared regime: numbers as written,
    strings as exact rationals, [re, im] pairs as Gaussian integers."""
    if isinstance(v, bool):
        raise RegimeError("boolean scalar rejected")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 \
            and all(isinstance(c, int) and not isinstance(c, bool) for c in v):
        from .scalars import GaussianInteger
        return GaussianInteger(v[0], v[1])
    raise ValueError("cannot decode scalar %r" % (v,))


def potential_from_json(doc):
    """Rebuild any potential family from its to_json document.

    A declared "regime" field makes decoding strict; without one the regime
    is inferred from the entries (handy for hand-written configs).
    """
    kind = doc.get("kind")
    declared = "regime" in doc
    regime = doc.get("regime", INTEGER)

    def dec(vs):
        if declared:
            return tuple(decode_scalar(v, regime) for v in vs)
        return tuple(_decode_scalar_any(v) for v in vs)

    def dec1(v):
        return decode_scalar(v, regime) if declared else _decode_scalar_any(v)

    if kind == "periodic":
        return periodic(dec(doc["word"]), doc.get("phase", 0),
                        regime if declared else None)
    if kind == "eventually_periodic":
        return eventually_periodic(
            dec(doc["left_word"]), dec(doc.get("core", [])),
            doc["core_start"], dec(doc["right_word"]),
            regime if declared else None)
    if kind == "sturmian":
        if doc.get("slope", "golden-ratio") != "golden-ratio":
            raise ValueError("unsupported sturmian slope %r" % doc.get("slope"))
        return SturmianPotential(doc.get("offset", 0), doc.get("orientation", 1))
    if kind == "explicit":
        return explicit(dec(doc["window"]), doc["start"],
                        dec1(doc.get("outside", 0)),
                        regime if declared else None)
    if kind == "random":
        base = random_values(doc["seed"], dec(doc["values"]),
                             regime if declared else None)
        return replace(base, index_offset=doc.get("index_offset", 0),
                       orientation=doc.get("orientation", 1))
    raise ValueError("unknown potential kind %r" % (kind,))
