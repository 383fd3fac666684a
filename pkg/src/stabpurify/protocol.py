"""One purification round under Pauli noise: syndromes, decoding, verdicts, statistics.

Everything is computed in the *flip* picture.  An error E on the m*n qubits is
summarized by the bit vector ``f`` whose bit ``r * n + i`` says whether E
anticommutes with master generator ``i`` on copy ``r``.  A plan check whose
decomposition over single-copy generators is the mask ``d`` reports the bit
``parity(d & f)``; an encoded generator with decomposition ``e`` is flipped
when ``parity(e & f)`` is set.  Two errors with the same ``f`` are the same
error up to a stabilizer element of the target, so verdicts only depend on ``f``.

Decoding splits the master generators into groups connected by the checks.
For each group a lookup table maps the group syndrome to a flip pattern of at
most ``t`` copies (``t`` from the code distance, at least 1).  Syndromes with
inequivalent explanations, or none at all, reject the whole round and consume
all m copies.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import binomtest

from . import gf2
from .codes import correctable_weight
from .errors import BudgetExceeded, DimensionError, ParseError
from .multicopy import CheckPlan
from .pauli import PauliProduct, embed, multiply, symplectic_inner
from .stabilizer import LocalClifford, destabilizers

_LETTER_ORDER = "IXYZ"  # column order of per-qubit probability tables
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}

# -- noise -----------------------------------------------------------------------


@dataclass(frozen=True)
class NoiseModel:
    """Independent single-qubit Pauli noise.

    ``probs[q]`` is the (I, X, Y, Z) distribution of qubit ``q``.
    """

    kind: str
    probs: tuple[tuple[float, float, float, float], ...]
    parameters: tuple[float, ...] = ()

    def __post_init__(self):
        for q, row in enumerate(self.probs):
            if len(row) != 4:
                raise ValueError(f"qubit {q}: need four probabilities (I, X, Y, Z)")
            if any(p < 0 for p in row):
                raise ValueError(f"qubit {q}: negative probability")
            if sum(row[1:]) > 1 + 1e-12 or abs(sum(row) - 1) > 1e-9:
                raise ValueError(f"qubit {q}: probabilities must sum to 1")

    @property
    def num_qubits(self) -> int:
        return len(self.probs)

    @classmethod
    def depolarizing(cls, p: float, num_qubits: int) -> NoiseModel:
        """X, Y and Z each with probability p/3."""
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        row = (1 - p, p / 3, p / 3, p / 3)
        return cls("depolarizing", (row,) * num_qubits, (p,))

    @classmethod
    def independent_xyz(cls, px: float, py: float, pz: float, num_qubits: int) -> NoiseModel:
        if min(px, py, pz) < 0 or px + py + pz > 1:
            raise ValueError("need nonnegative px, py, pz with sum <= 1")
        row = (1 - px - py - pz, px, py, pz)
        return cls("independent-xyz", (row,) * num_qubits, (px, py, pz))

    @classmethod
    def explicit(cls, dist: Mapping[str, float] | Sequence[Mapping[str, float]], num_qubits: int) -> NoiseModel:
        """From ``{"I": .., "X": ..}`` (shared by all qubits) or one mapping per qubit."""
        dists = [dist] * num_qubits if isinstance(dist, Mapping) else list(dist)
        if len(dists) != num_qubits:
            raise DimensionError(f"{len(dists)} distributions for {num_qubits} qubits")
        rows = []
        for d in dists:
            bad = set(d) - set(_LETTER_ORDER)
            if bad:
                raise ValueError(f"unknown Pauli labels {sorted(bad)}")
            rows.append(tuple(float(d.get(k, 0.0)) for k in _LETTER_ORDER))
        return cls("explicit-distribution", tuple(rows))

    def describe(self) -> str:
        if self.kind == "depolarizing":
            return f"depolarizing:{self.parameters[0]:g}"
        if self.kind == "independent-xyz":
            return "independent-xyz:" + ",".join(f"{p:g}" for p in self.parameters)
        return "explicit-distribution"

    def conjugated(self, frame: LocalClifford) -> NoiseModel:
        """Distribution of U E U^dagger when ``frame`` acts on every row of the register."""
        n = frame.num_qubits
        if self.num_qubits % n:
            raise DimensionError("frame width does not divide the register")
        if frame.is_identity:
            return self
        rows = []
        for q, row in enumerate(self.probs):
            (ax, az), (bx, bz) = frame.maps[q % n]
            new = [0.0] * 4
            for letter, prob in zip(_LETTER_ORDER, row):
                x, z = _LETTER_BITS[letter]
                nx = (ax * x) ^ (bx * z)
                nz = (az * x) ^ (bz * z)
                new[_LETTER_ORDER.index("IXZY"[nx + 2 * nz])] += prob
            rows.append(tuple(new))
        return NoiseModel(self.kind, tuple(rows), self.parameters)

    def sample(self, rng: np.random.Generator, trials: int) -> tuple[np.ndarray, np.ndarray]:
        """(x, z) bit arrays of shape (trials, num_qubits)."""
        cum = np.cumsum(np.asarray(self.probs, dtype=float), axis=1)
        u = rng.random((trials, self.num_qubits))
        letters = (u[:, :, None] >= cum[None, :, :3]).sum(axis=2)  # 0=I 1=X 2=Y 3=Z
        x = ((letters == 1) | (letters == 2)).astype(np.uint8)
        z = ((letters == 2) | (letters == 3)).astype(np.uint8)
        return x, z


def parse_noise(text: str, num_qubits: int) -> NoiseModel:
    """Parse ``depolarizing:p``, ``independent-xyz:px,py,pz`` or ``explicit:I=..,X=..``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "depolarizing":
            return NoiseModel.depolarizing(float(arg), num_qubits)
        if kind == "independent-xyz":
            px, py, pz = (float(v) for v in arg.split(","))
            return NoiseModel.independent_xyz(px, py, pz, num_qubits)
        if kind in ("explicit", "explicit-distribution"):
            dist = {}
            for item in arg.split(","):
                k, _, v = item.partition("=")
                dist[k.strip().upper()] = float(v)
            return NoiseModel.explicit(dist, num_qubits)
    except ValueError as exc:
        raise ParseError(f"bad noise specification {text!r}: {exc}") from None
    raise ParseError(f"unknown noise kind {kind!r}")


def twirl_error_distribution(channel: NoiseModel) -> NoiseModel:
    """Twirl a Pauli channel over a stabilizer group.

    Twirling only removes coherences between syndrome sectors; a channel that
    is already a Pauli mixture is a fixed point, so it comes back unchanged.
    """
    if not isinstance(channel, NoiseModel):
        raise TypeError("only Pauli distributions can be twirled at this level")
    return channel


# -- decoder -----------------------------------------------------------------------


class Verdict(str, enum.Enum):
    SUCCESS = "SUCCESS"
    REJECT = "REJECT"
    FAILURE = "FAILURE"

    def __str__(self) -> str:
        return self.value


@dataclass
class _Group:
    masters: tuple[int, ...]
    checks: tuple[int, ...]
    # syndrome (bit j = group check j) -> correction flip mask; missing = reject
    table: dict[int, int]
    detect_only: frozenset[int]


def _mask_matrix(masks: Sequence[int], width: int) -> np.ndarray:
    out = np.zeros((len(masks), width), dtype=np.uint8)
    for a, m in enumerate(masks):
        for b in range(width):
            out[a, b] = (m >> b) & 1
    return out


class Decoder:
    """Plan compiled into flip-vector matrices and per-group lookup tables."""

    MAX_GROUP_CHECKS = 22

    def __init__(self, plan: CheckPlan, max_weight: int | None = None):
        if not plan.ok:
            raise ValueError("plan does not satisfy both sufficiency conditions")
        self.plan = plan
        setup = plan.setup
        self.m, self.n = setup.copies, setup.parties
        self.width = self.m * self.n
        self.check_masks = [c.decomposition for c in plan.checks]
        self.encoded_masks = [e.decomposition for e in plan.encoded]
        if max_weight is None:
            try:
                max_weight = max(1, correctable_weight(plan.code))
            except BudgetExceeded:
                max_weight = 1
        self.max_weight = max_weight
        self.groups = self._build_groups()
        self._frame_all = LocalClifford(tuple(plan.frame.maps) * self.m)
        self._destab = destabilizers(setup.master)
        self._compile()

    # -- tables --

    def _build_groups(self) -> list[_Group]:
        n = self.n
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        touched = []
        for mask in self.check_masks:
            ms = sorted({b % n for b in range(self.width) if (mask >> b) & 1})
            touched.append(ms)
            for a in ms[1:]:
                parent[find(a)] = find(ms[0])
        roots: dict[int, list[int]] = {}
        for i in range(n):
            roots.setdefault(find(i), []).append(i)
        groups = []
        for members in sorted(roots.values()):
            checks = tuple(j for j, ms in enumerate(touched) if ms and find(ms[0]) == find(members[0]))
            groups.append(self._group_table(tuple(members), checks))
        return groups

    def _group_table(self, masters: tuple[int, ...], checks: tuple[int, ...]) -> _Group:
        n, m = self.n, self.m
        if len(checks) > self.MAX_GROUP_CHECKS:
            raise BudgetExceeded(f"{len(checks)} checks in one decoding group")
        gm = len(masters)
        # nonzero per-row patterns over the group's masters
        row_patterns = []
        for sub in range(1, 1 << gm):
            row_patterns.append(sum(1 << masters[a] for a in range(gm) if (sub >> a) & 1))
        table: dict[int, int] = {}
        detect = set()
        seen_logical: dict[int, int] = {}
        for w in range(0, min(self.max_weight, m) + 1):
            for rows in itertools.combinations(range(m), w):
                for pats in itertools.product(row_patterns, repeat=w):
                    f = 0
                    for r, pat in zip(rows, pats):
                        f |= pat << (r * n)
                    s = self._group_syndrome(f, checks)
                    logical = self._logical(f)
                    if s not in table:
                        table[s] = f
                        seen_logical[s] = logical
                    elif seen_logical[s] != logical:
                        detect.add(s)
        for s in detect:
            del table[s]
        return _Group(masters, checks, table, frozenset(detect))

    def _group_syndrome(self, f: int, checks: Sequence[int]) -> int:
        s = 0
        for k, j in enumerate(checks):
            s |= gf2.parity(self.check_masks[j] & f) << k
        return s

    def _logical(self, f: int) -> int:
        out = 0
        for k, e in enumerate(self.encoded_masks):
            out |= gf2.parity(e & f) << k
        return out

    def _compile(self) -> None:
        w = self.width
        self.D = _mask_matrix(self.check_masks, w)
        self.E = _mask_matrix(self.encoded_masks, w)
        # error bits -> flip bits (qubit r*n+c hits flips r*n+i)
        master = self.plan.setup.master
        fx = np.zeros((w, w), dtype=np.uint8)
        fz = np.zeros((w, w), dtype=np.uint8)
        for r in range(self.m):
            for c in range(self.n):
                q = r * self.n + c
                for i, g in enumerate(master.generators):
                    fx[q, r * self.n + i] = (g.z >> c) & 1
                    fz[q, r * self.n + i] = (g.x >> c) & 1
        self.Fx, self.Fz = fx, fz
        self._luts = []
        for g in self.groups:
            size = 1 << len(g.checks)
            ok = np.zeros(size, dtype=bool)
            corr = np.zeros((size, w), dtype=np.uint8)
            for s, f in g.table.items():
                ok[s] = True
                corr[s] = [(f >> b) & 1 for b in range(w)]
            weights = (1 << np.arange(len(g.checks), dtype=np.int64))
            self._luts.append((np.asarray(g.checks, dtype=np.intp), weights, ok, corr))

    # -- scalar API --

    def to_plan_frame(self, error: PauliProduct) -> PauliProduct:
        return self._frame_all.conjugate(error)

    def flips_of(self, error: PauliProduct) -> int:
        return self.plan.setup.flip_vector(self.to_plan_frame(error))

    def decode(self, syndrome: int) -> int | None:
        """Correction flip mask for a full syndrome (bit j = check j), or None to reject."""
        corr = 0
        for g in self.groups:
            s = 0
            for k, j in enumerate(g.checks):
                s |= ((syndrome >> j) & 1) << k
            f = g.table.get(s)
            if f is None:
                return None
            corr |= f
        return corr

    def correction_operator(self, flips: int) -> PauliProduct:
        """Pauli frame undoing ``flips``: destabilizers placed on the flagged rows."""
        n, w = self.n, self.width
        out = PauliProduct.identity(w)
        for b in range(w):
            if (flips >> b) & 1:
                r, i = divmod(b, n)
                out = multiply(out, embed(self._destab[i], range(r * n, (r + 1) * n), w))
        return out

    # -- vectorized API --

    def flips_from_bits(self, x: np.ndarray, z: np.ndarray) -> np.ndarray:
        return ((x @ self.Fx + z @ self.Fz) & 1).astype(np.uint8)

    def evaluate(self, flips: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per row of ``flips``: accepted, success, and the packed syndrome."""
        synd = ((flips @ self.D.T) & 1).astype(np.uint8)
        accepted = np.ones(len(flips), dtype=bool)
        corr = np.zeros_like(flips)
        for idx, weights, ok, table in self._luts:
            s = synd[:, idx].astype(np.int64) @ weights if len(idx) else np.zeros(len(flips), np.int64)
            accepted &= ok[s]
            corr ^= table[s]
        resid = flips ^ corr
        clean = ~((resid @ self.D.T) & 1).any(axis=1) & ~((resid @ self.E.T) & 1).any(axis=1)
        packed = synd.astype(np.int64) @ (1 << np.arange(synd.shape[1], dtype=np.int64)) if synd.shape[1] else np.zeros(len(flips), np.int64)
        return accepted, accepted & clean, packed


def decoder_for(plan: CheckPlan) -> Decoder:
    """Decoder cached on the plan object."""
    dec = getattr(plan, "_decoder", None)
    if dec is None:
        dec = Decoder(plan)
        plan._decoder = dec
    return dec


@dataclass(frozen=True)
class RoundResult:
    verdict: Verdict
    syndrome: tuple[int, ...]
    flips: int
    correction: PauliProduct | None
    residual: PauliProduct | None

    @property
    def accepted(self) -> bool:
        return self.verdict is not Verdict.REJECT


def run_round(plan: CheckPlan, error: PauliProduct) -> RoundResult:
    """Measure every check of ``plan`` on an m-copy register hit by ``error``.

    ``error`` acts on the original (unframed) qubits in row-major order.  The
    correction is a Pauli-frame update, and the verdict is SUCCESS when the
    corrected error commutes with every check and every encoded generator.
    """
    setup = plan.setup
    if error.num_qubits != setup.num_qubits:
        raise DimensionError(f"{error.num_qubits}-qubit error for a {setup.num_qubits}-qubit register")
    dec = decoder_for(plan)
    e = dec.to_plan_frame(error)
    flips = setup.flip_vector(e)
    bits = tuple(symplectic_inner(e, c.array.op) for c in plan.checks)
    syndrome = sum(b << j for j, b in enumerate(bits))
    corr_flips = dec.decode(syndrome)
    if corr_flips is None:
        return RoundResult(Verdict.REJECT, bits, flips, None, None)
    corr = dec.correction_operator(corr_flips)
    resid = multiply(corr, e)
    ok = all(symplectic_inner(resid, c.array.op) == 0 for c in plan.checks) and all(
        symplectic_inner(resid, g.array.op) == 0 for g in plan.encoded
    )
    return RoundResult(Verdict.SUCCESS if ok else Verdict.FAILURE, bits, flips, corr, resid)


# -- reports ----------------------------------------------------------------------

REPORT_FIELDS = (
    "mode", "state", "code", "noise", "seed", "trials", "max_weight", "accepted", "success",
    "yield", "fidelity", "ci_low", "ci_high", "tail_bound", "input_infidelity", "output_infidelity",
)


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, float):
        return repr(float(f"{v:.12g}"))
    return str(v)


@dataclass
class SimulationReport:
    """Outcome statistics of many rounds.

    Monte Carlo (``mode == "mc"``): ``accepted``/``success`` are counts and
    ``ci_low``/``ci_high`` a 95% Wilson interval on the fidelity.  Exact
    (``mode == "exact"``): they are probabilities, and the interval brackets
    the fidelity given the unenumerated mass ``tail_bound``.

    Fidelity is the probability that an accepted round leaves the encoded
    state exactly equal to the target (Pauli errors give fidelity 0 or 1 per
    round).
    """

    mode: str
    trials: int | None
    accepted: float
    success: float
    yield_: float
    fidelity: float | None
    ci_low: float | None
    ci_high: float | None
    seed: int | None
    tail_bound: float = 0.0
    max_weight: int | None = None
    input_infidelity: float | None = None
    state: str = ""
    code: str = ""
    noise: str = ""
    histogram: dict[str, float] = field(default_factory=dict)

    @property
    def output_infidelity(self) -> float | None:
        return None if self.fidelity is None else 1.0 - self.fidelity

    def as_dict(self) -> dict:
        d = {}
        for k in REPORT_FIELDS:
            d[k] = self.yield_ if k == "yield" else getattr(self, k)
        d["histogram"] = dict(sorted(self.histogram.items()))
        return d

    def to_text(self) -> str:
        d = self.as_dict()
        lines = [f"{k}: {_fmt(d[k])}" for k in REPORT_FIELDS]
        lines.append("syndrome_histogram:")
        for k, v in d["histogram"].items():
            lines.append(f"  {k}: {_fmt(v)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        def clean(v):
            if isinstance(v, float) and not math.isfinite(v):
                return None
            return v

        d = {k: clean(v) for k, v in self.as_dict().items()}
        return json.dumps(d, indent=2, sort_keys=False) + "\n"


def _syndrome_label(s: int, num_checks: int) -> str:
    return "".join(str((s >> j) & 1) for j in range(num_checks)) or "-"


def input_infidelity(plan: CheckPlan, noise: NoiseModel) -> float:
    """Probability that the noise on one copy (row 0) changes the single-copy state."""
    n = plan.setup.parties
    framed = noise.conjugated(plan.frame)
    dist = _row_flip_distribution(plan, framed, 0)
    return float(1.0 - dist[0]) if n else 0.0


def _row_flip_distribution(plan: CheckPlan, noise: NoiseModel, row: int) -> np.ndarray:
    """Distribution over n-bit flip patterns of master generators on one copy."""
    n = plan.setup.parties
    gens = plan.setup.master.generators
    dist = np.zeros(1 << n)
    dist[0] = 1.0
    idx = np.arange(1 << n)
    for c in range(n):
        probs = noise.probs[row * n + c]
        new = np.zeros_like(dist)
        for letter, p in zip(_LETTER_ORDER, probs):
            if p == 0:
                continue
            x, z = _LETTER_BITS[letter]
            pat = 0
            for i, g in enumerate(gens):
                anti = (x & (g.z >> c) & 1) ^ (z & (g.x >> c) & 1)
                pat |= anti << i
            new[idx ^ pat] += p * dist
        dist = new
    return dist


# -- Monte Carlo --------------------------------------------------------------------

BLOCK_SIZE = 8192


def _mc_block(dec: Decoder, noise: NoiseModel, seed: int, block: int, size: int):
    rng = np.random.default_rng(np.random.SeedSequence([seed, block]))
    x, z = noise.sample(rng, size)
    acc, suc, synd = dec.evaluate(dec.flips_from_bits(x, z))
    keys, counts = np.unique(synd, return_counts=True)
    return int(acc.sum()), int(suc.sum()), dict(zip(keys.tolist(), counts.tolist()))


def simulate_monte_carlo(
    plan: CheckPlan, noise: NoiseModel, trials: int, seed: int, workers: int = 1, labels=("", "")
) -> SimulationReport:
    """Sample ``trials`` rounds; results do not depend on ``workers``.

    Trials are cut into fixed blocks of ``BLOCK_SIZE``; block ``b`` draws from
    ``SeedSequence([seed, b])`` and block results are merged in order.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    if noise.num_qubits != plan.setup.num_qubits:
        raise DimensionError(f"noise on {noise.num_qubits} qubits, register has {plan.setup.num_qubits}")
    dec = decoder_for(plan)
    framed = noise.conjugated(plan.frame)
    sizes = [min(BLOCK_SIZE, trials - b * BLOCK_SIZE) for b in range(math.ceil(trials / BLOCK_SIZE))]
    jobs = [(dec, framed, seed, b, s) for b, s in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda a: _mc_block(*a), jobs))
    else:
        results = [_mc_block(*a) for a in jobs]
    accepted = sum(r[0] for r in results)
    success = sum(r[1] for r in results)
    hist: Counter = Counter()
    for r in results:
        hist.update(r[2])
    k = len(plan.checks)
    histogram = {_syndrome_label(s, k): int(c) for s, c in sorted(hist.items())}
    if accepted:
        fid = success / accepted
        ci = binomtest(success, accepted).proportion_ci(confidence_level=0.95, method="wilson")
        lo, hi = float(ci.low), float(ci.high)
    else:
        fid = lo = hi = None
    return SimulationReport(
        mode="mc",
        trials=trials,
        accepted=accepted,
        success=success,
        yield_=accepted / trials,
        fidelity=fid,
        ci_low=lo,
        ci_high=hi,
        seed=seed,
        input_infidelity=input_infidelity(plan, noise),
        state=labels[0],
        code=labels[1],
        noise=noise.describe(),
        histogram=histogram,
    )


# -- exact enumeration ----------------------------------------------------------------

DEFAULT_FLIP_BUDGET = 24  # full mode enumerates 2**(m*n) flip vectors
DEFAULT_CONFIG_BUDGET = 5_000_000
_CHUNK = 1 << 16


def enumerate_exact(
    plan: CheckPlan,
    noise: NoiseModel,
    max_weight: int | None = None,
    budget: int = DEFAULT_FLIP_BUDGET,
    config_budget: int = DEFAULT_CONFIG_BUDGET,
    labels=("", ""),
) -> SimulationReport:
    """Exact verdict probabilities.

    With ``max_weight=None`` every flip vector is enumerated with its exact
    probability (per-copy flip distributions are independent), so the result
    is exact over all 4**(m*n) errors.  Otherwise only qubit errors of weight
    at most ``max_weight`` are enumerated and the missing mass is reported as
    ``tail_bound``.
    """
    if noise.num_qubits != plan.setup.num_qubits:
        raise DimensionError(f"noise on {noise.num_qubits} qubits, register has {plan.setup.num_qubits}")
    dec = decoder_for(plan)
    framed = noise.conjugated(plan.frame)
    k = len(plan.checks)
    hist: dict[int, float] = {}
    if max_weight is None:
        acc, suc = _exact_full(plan, dec, framed, budget, hist)
        tail = 0.0
    else:
        acc, suc, tail = _exact_truncated(dec, framed, max_weight, config_budget, hist)
    mass = 1.0 - tail
    yield_ = acc / mass if mass > 0 else None
    fid = suc / acc if acc > 0 else None
    lo = suc / (acc + tail) if acc + tail > 0 else None
    hi = min(1.0, (suc + tail) / (acc + tail)) if acc + tail > 0 else None
    histogram = {_syndrome_label(s, k): p for s, p in sorted(hist.items()) if p > 0}
    return SimulationReport(
        mode="exact",
        trials=None,
        accepted=acc,
        success=suc,
        yield_=yield_,
        fidelity=fid,
        ci_low=lo,
        ci_high=hi,
        seed=None,
        tail_bound=tail,
        max_weight=max_weight,
        input_infidelity=input_infidelity(plan, noise),
        state=labels[0],
        code=labels[1],
        noise=noise.describe(),
        histogram=histogram,
    )


def _accumulate(hist: dict[int, float], synd: np.ndarray, probs: np.ndarray) -> None:
    keys, inv = np.unique(synd, return_inverse=True)
    sums = np.bincount(inv, weights=probs, minlength=len(keys))
    for key, s in zip(keys.tolist(), sums.tolist()):
        hist[key] = hist.get(key, 0.0) + s


def _exact_full(plan, dec: Decoder, noise: NoiseModel, budget: int, hist) -> tuple[float, float]:
    m, n = dec.m, dec.n
    w = m * n
    if w > budget:
        raise BudgetExceeded(f"full enumeration needs 2**{w} flip vectors; budget is 2**{budget}")
    rows = [_row_flip_distribution(plan, noise, r) for r in range(m)]
    total = 1 << w
    acc = suc = 0.0
    bit = np.arange(w, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        probs = np.ones(len(idx))
        for r in range(m):
            probs *= rows[r][(idx >> (r * n)) & ((1 << n) - 1)]
        keep = probs > 0
        if not keep.any():
            continue
        idx, probs = idx[keep], probs[keep]
        flips = ((idx[:, None] >> bit[None, :]) & 1).astype(np.uint8)
        a, s, synd = dec.evaluate(flips)
        acc += float(probs[a].sum())
        suc += float(probs[s].sum())
        _accumulate(hist, synd, probs)
    return acc, suc


def _exact_truncated(dec: Decoder, noise: NoiseModel, max_weight: int, config_budget: int, hist):
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    w = dec.width
    max_weight = min(max_weight, w)
    count = sum(math.comb(w, k) * 3**k for k in range(max_weight + 1))
    if count > config_budget:
        raise BudgetExceeded(f"{count} error configurations exceed budget {config_budget}")
    p = np.asarray(noise.probs, dtype=float)  # columns I, X, Y, Z
    acc = suc = enumerated = 0.0
    bx = np.array([0, 1, 1, 0], dtype=np.uint8)
    bz = np.array([0, 0, 1, 1], dtype=np.uint8)

    def flush(supports, letters):
        nonlocal acc, suc, enumerated
        if not supports:
            return
        x = np.zeros((len(supports), w), dtype=np.uint8)
        z = np.zeros((len(supports), w), dtype=np.uint8)
        probs = np.empty(len(supports))
        for t, (sup, let) in enumerate(zip(supports, letters)):
            pr = 1.0
            for q in range(w):
                pr *= p[q, 0] if q not in sup else 1.0
            for q, l in zip(sup, let):
                pr *= p[q, l]
                x[t, q] = bx[l]
                z[t, q] = bz[l]
            probs[t] = pr
        a, s, synd = dec.evaluate(dec.flips_from_bits(x, z))
        acc += float(probs[a].sum())
        suc += float(probs[s].sum())
        enumerated += float(probs.sum())
        _accumulate(hist, synd, probs)
        supports.clear()
        letters.clear()

    sups: list = []
    lets: list = []
    for k in range(max_weight + 1):
        for sup in itertools.combinations(range(w), k):
            for let in itertools.product((1, 2, 3), repeat=k):
                sups.append(sup)
                lets.append(let)
                if len(sups) >= _CHUNK:
                    flush(sups, lets)
    flush(sups, lets)
    tail = max(0.0, 1.0 - enumerated)
    return acc, suc, tail
