"""Protocol descriptions, built-in protocols, JSON I/O and closed-form analysis."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Any, Mapping

import numpy as np

from . import qmath
from .attacks import alice_cheat_prepare, bob_attack_analyze
from .bounds import CheckPolicy, effective_probabilities
from .errors import (
    InvalidState,
    ProtocolParseError,
    ProtocolValidationError,
    UnknownProtocol,
)
from .states import DensityMatrix, PureState, fidelity, trace_distance

PROB_TOL = 1e-9
NORM_TOL = 1e-9
MAX_DIM = int(math.isqrt(qmath.MAX_ENTRIES))

FAIR_ANGLE_DEG = 19.85
FAIR_ANGLE_ZETA = 0.469


@dataclass(frozen=True, eq=False)
class ProtocolSpec:
    """A commitment scheme: for each bit, an ensemble of pure states sent to Bob.

    ``ensembles[b]`` is a tuple of ``(state, probability)`` pairs; ``zeta`` is
    the probability that Bob (rather than Alice) is checked at unveil.
    """

    name: str
    dim: int
    ensembles: tuple[tuple[tuple[PureState, float], ...], tuple[tuple[PureState, float], ...]]
    zeta: float = 1.0

    def __post_init__(self):
        ens = tuple(tuple((s, float(p)) for s, p in e) for e in self.ensembles)
        if len(ens) != 2:
            raise ProtocolValidationError("commit", "need ensembles for bits 0 and 1")
        object.__setattr__(self, "ensembles", ens)
        object.__setattr__(self, "zeta", CheckPolicy(self.zeta).zeta)
        for b, e in enumerate(ens):
            if not e:
                raise ProtocolValidationError(f"commit.{b}", "ensemble is empty")
            for i, (s, p) in enumerate(e):
                if s.dim != self.dim:
                    raise ProtocolValidationError(
                        f"commit.{b}[{i}].amplitudes",
                        f"state has dimension {s.dim}, protocol dim is {self.dim}")
                if not 0.0 <= p <= 1.0:
                    raise ProtocolValidationError(f"commit.{b}[{i}].prob", f"{p} not in [0, 1]")
            total = sum(p for _, p in e)
            if abs(total - 1.0) > PROB_TOL:
                raise ProtocolValidationError(
                    f"commit.{b}", f"selection probabilities sum to {total:.12g}, expected 1")

    def rho(self, bit: int) -> DensityMatrix:
        states, probs = zip(*self.ensembles[bit])
        return DensityMatrix.mixture(states, probs)

    @property
    def policy(self) -> CheckPolicy:
        return CheckPolicy(self.zeta)

    def with_zeta(self, zeta: float) -> "ProtocolSpec":
        return replace(self, zeta=zeta)

    def __eq__(self, other):
        if not isinstance(other, ProtocolSpec):
            return NotImplemented
        if (self.name, self.dim, self.zeta) != (other.name, other.dim, other.zeta):
            return False
        for ea, eb in zip(self.ensembles, other.ensembles):
            if len(ea) != len(eb):
                return False
            for (sa, pa), (sb, pb) in zip(ea, eb):
                if abs(pa - pb) > PROB_TOL or not np.allclose(sa.vector, sb.vector, atol=1e-12):
                    return False
        return True


def _ket(*amps) -> PureState:
    return PureState.from_amplitudes(amps)


def hbc2000(zeta: float = 1.0) -> ProtocolSpec:
    """Single-qubit scheme: b=0 sends |0⟩ or |−⟩, b=1 sends |1⟩ or |+⟩."""
    r = 1.0 / math.sqrt(2.0)
    return ProtocolSpec(
        "hbc2000", 2,
        (((_ket(1, 0), 0.5), (_ket(r, -r), 0.5)),
         ((_ket(0, 1), 0.5), (_ket(r, r), 0.5))),
        zeta,
    )


def fair_angle(zeta: float = FAIR_ANGLE_ZETA, angle_deg: float = FAIR_ANGLE_DEG) -> ProtocolSpec:
    """b=0 sends cos θ|0⟩ ± sin θ|1⟩, b=1 sends sin θ|0⟩ ± cos θ|1⟩."""
    c = math.cos(math.radians(angle_deg))
    s = math.sin(math.radians(angle_deg))
    return ProtocolSpec(
        "fair_angle", 2,
        (((_ket(c, s), 0.5), (_ket(c, -s), 0.5)),
         ((_ket(s, c), 0.5), (_ket(s, -c), 0.5))),
        zeta,
    )


BUILTINS = {"hbc2000": hbc2000, "fair_angle": fair_angle}


def builtin_protocol(name: str, zeta: float | None = None) -> ProtocolSpec:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise UnknownProtocol(
            f"unknown protocol {name!r}; built-ins are {', '.join(sorted(BUILTINS))}") from None
    return factory() if zeta is None else factory(zeta)


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProtocolValidationError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ProtocolValidationError(path, "must be finite")
    return float(value)


def load_protocol(document: str | bytes | Mapping[str, Any]) -> ProtocolSpec:
    """Build a validated :class:`ProtocolSpec` from its JSON form.

    ``document`` may be JSON text or an already-decoded mapping. Failures
    report the offending field as a dotted path.
    """
    if isinstance(document, (str, bytes, bytearray)):
        try:
            document = json.loads(document)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ProtocolParseError(f"invalid protocol JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise ProtocolValidationError("$", "top level must be an object")

    for key in ("name", "dim", "zeta", "commit"):
        if key not in document:
            raise ProtocolValidationError(key, "missing required field")
    name = document["name"]
    if not isinstance(name, str) or not name:
        raise ProtocolValidationError("name", "must be a non-empty string")
    dim = document["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or not 1 <= dim <= MAX_DIM:
        raise ProtocolValidationError("dim", f"must be an integer in [1, {MAX_DIM}]")
    zeta = _number(document["zeta"], "zeta")
    if not 0.0 <= zeta <= 1.0:
        raise ProtocolValidationError("zeta", f"{zeta} not in [0, 1]")
    commit = document["commit"]
    if not isinstance(commit, Mapping):
        raise ProtocolValidationError("commit", "must be an object with keys '0' and '1'")

    ensembles = []
    for b in ("0", "1"):
        path = f"commit.{b}"
        entries = commit.get(b)
        if not isinstance(entries, list) or not entries:
            raise ProtocolValidationError(path, "must be a non-empty list")
        ens = []
        for i, entry in enumerate(entries):
            epath = f"{path}[{i}]"
            if not isinstance(entry, Mapping):
                raise ProtocolValidationError(epath, "must be an object")
            if "prob" not in entry:
                raise ProtocolValidationError(f"{epath}.prob", "missing required field")
            prob = _number(entry["prob"], f"{epath}.prob")
            amps = entry.get("amplitudes")
            apath = f"{epath}.amplitudes"
            if not isinstance(amps, list) or len(amps) != dim:
                raise ProtocolValidationError(apath, f"must be a list of {dim} [re, im] pairs")
            vec = []
            for j, pair in enumerate(amps):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ProtocolValidationError(f"{apath}[{j}]", "must be [re, im]")
                vec.append(complex(_number(pair[0], f"{apath}[{j}][0]"),
                                   _number(pair[1], f"{apath}[{j}][1]")))
            norm = math.sqrt(sum(abs(z) ** 2 for z in vec))
            if abs(norm - 1.0) > NORM_TOL:
                raise ProtocolValidationError(apath, f"state has norm {norm:.12g}, expected 1")
            ens.append((PureState.from_amplitudes(vec), prob))
        ensembles.append(tuple(ens))

    try:
        spec = ProtocolSpec(name, dim, tuple(ensembles), zeta)
        spec.rho(0)
        spec.rho(1)
    except InvalidState as exc:
        raise ProtocolValidationError("commit", str(exc)) from exc
    return spec


def load_protocol_file(path) -> ProtocolSpec:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ProtocolParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return load_protocol(raw)


def dump_protocol(spec: ProtocolSpec) -> dict[str, Any]:
    """JSON-ready mapping; ``load_protocol(dump_protocol(s)) == s``."""
    return {
        "name": spec.name,
        "dim": spec.dim,
        "zeta": spec.zeta,
        "commit": {
            str(b): [
                {"prob": p, "amplitudes": [[float(z.real), float(z.imag)] for z in s.vector]}
                for s, p in spec.ensembles[b]
            ]
            for b in (0, 1)
        },
    }


@dataclass(frozen=True)
class AnalysisReport:
    d: float
    f: float
    reliability: float
    p_b: float
    p_a: float
    p_a_star: float
    p_b_star: float
    zeta: float


def analyze(protocol: ProtocolSpec) -> AnalysisReport:
    """Closed-form cheating probabilities of both parties for ``protocol``.

    ``p_b`` averages Bob's per-state pass probability over the honest
    ensemble (uniform bit); ``p_a`` is Alice's purification attack.
    """
    rho0, rho1 = protocol.rho(0), protocol.rho(1)
    d = trace_distance(rho0, rho1)
    f = fidelity(rho0, rho1)
    p_b = 0.0
    for b in (0, 1):
        for state, prob in protocol.ensembles[b]:
            p_b += 0.5 * prob * bob_attack_analyze(rho0, rho1, state).pass_probability
    p_a = alice_cheat_prepare(rho0, rho1).pass_probability
    pa_star, pb_star = effective_probabilities(min(p_a, 1.0), min(p_b, 1.0), protocol.zeta)
    return AnalysisReport(d, f, 0.5 * (1.0 + d), p_b, p_a, pa_star, pb_star, protocol.zeta)
