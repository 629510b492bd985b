"""Commit / hold / unveil simulation with honest and cheating parties.

One run proceeds as follows.

* Commit. Honest Alice draws a bit and a state from that bit's ensemble.
  Cheating Alice prepares ``(psi0 + psi1) / N`` on ``ancilla ⊗ system`` and
  decides the bit only at unveil (uniformly at random).
* Hold. Cheating Bob measures the Helstrom pair on the system and keeps the
  outcome as his guess of the bit.
* Unveil. A trusted coin picks who is checked: Bob with probability
  ``zeta`` (Alice projects the returned state onto what she sent), otherwise
  Alice (Bob projects onto the announced honest state; a cheating Alice
  hands over her ancilla and is checked against the canonical purification
  of the announced bit's density matrix).

``check_passed`` records whether the checked party went undetected. A Bob who
already measured has no intact copy to verify against, so in the
``bob-checks`` branch he accepts; with ``bob_check="decode"`` he compares
his guess with the announced bit instead.

Randomness: trial ``k`` of ``monte_carlo(..., seed=s)`` draws from
``PCG64(SeedSequence([s, k]))``, so results do not depend on how trials are
sharded across workers.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .attacks import AliceAttackState, alice_cheat_prepare
from .errors import OutOfRange
from .protocol import ProtocolSpec
from .states import (
    PureState,
    branch_probabilities,
    helstrom_projectors,
    measure,
    project,
)

ALICE_CHECKS = "alice-checks"
BOB_CHECKS = "bob-checks"
CERTAIN = 1.0 - 1e-12


class Strategy(str, enum.Enum):
    HONEST = "honest"
    CHEAT = "cheat"

    @classmethod
    def parse(cls, value) -> "Strategy":
        if isinstance(value, cls):
            return value
        aliases = {"honest": cls.HONEST, "cheat": cls.CHEAT, "cheating": cls.CHEAT}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"strategy must be 'honest' or 'cheat', got {value!r}") from None


@dataclass(frozen=True)
class RunTranscript:
    committed_bit: int
    chosen_state_index: int | None
    bob_measured: bool
    bob_decoded_bit: int | None
    check_branch: str
    check_passed: bool


@dataclass(frozen=True)
class MonteCarloStats:
    trials: int
    pass_rate: float
    decode_accuracy: float | None
    standard_error: float
    seed: int
    passes: int
    measured: int
    decoded_correct: int

    def to_dict(self) -> dict:
        return asdict(self)


class _Session:
    """Per-protocol quantities reused by every trial."""

    def __init__(self, protocol: ProtocolSpec, bob_check: str = "projective"):
        if bob_check not in ("projective", "decode"):
            raise ValueError(f"bob_check must be 'projective' or 'decode', got {bob_check!r}")
        self.protocol = protocol
        self.bob_check = bob_check
        self.rho = (protocol.rho(0), protocol.rho(1))
        self.pair = helstrom_projectors(*self.rho)
        self.states = [[s for s, _ in e] for e in protocol.ensembles]
        self.probs = [np.array([p for _, p in e]) for e in protocol.ensembles]
        self.cum = [np.cumsum(p) for p in self.probs]

    @cached_property
    def attack(self) -> AliceAttackState:
        return alice_cheat_prepare(*self.rho)

    def pick(self, bit: int, u: float) -> int:
        idx = int(np.searchsorted(self.cum[bit], u * self.cum[bit][-1], side="right"))
        return min(idx, len(self.states[bit]) - 1)

    def announced(self, bit: int, index: int | None) -> PureState:
        if index is None:
            return (self.attack.psi0, self.attack.psi1)[bit]
        return self.states[bit][index]


def _fidelity_check(expected: PureState, actual: PureState) -> float:
    return min(abs(np.vdot(expected.vector, actual.vector)) ** 2, 1.0)


def _run(session: _Session, alice: Strategy, bob: Strategy,
         rng: np.random.Generator) -> RunTranscript:
    zeta = session.protocol.zeta

    # commit
    if alice is Strategy.HONEST:
        bit = int(rng.random() < 0.5)
        index = session.pick(bit, rng.random())
        sent = session.states[bit][index]
    else:
        bit, index = -1, None
        sent = session.attack.cheat_state

    # hold
    held = sent
    decoded = None
    if bob is Strategy.CHEAT:
        result = measure(held, session.pair, rng)
        held, decoded = result.post_state, result.outcome

    # unveil
    if alice is Strategy.CHEAT:
        bit = int(rng.random() < 0.5)

    if rng.random() < zeta:
        branch = ALICE_CHECKS
        p = _fidelity_check(sent, held)
        passed = p >= CERTAIN or rng.random() < p
    else:
        branch = BOB_CHECKS
        if session.bob_check == "decode":
            if decoded is None:
                decoded = measure(held, session.pair, rng).outcome
            passed = decoded == bit
        elif bob is Strategy.CHEAT:
            passed = True
        else:
            p = _fidelity_check(session.announced(bit, index), held)
            passed = p >= CERTAIN or rng.random() < p

    measured = bob is Strategy.CHEAT
    return RunTranscript(bit, index, measured, decoded if measured else None, branch, bool(passed))


def run_once(protocol: ProtocolSpec, alice, bob, rng: np.random.Generator,
             bob_check: str = "projective") -> RunTranscript:
    """Simulate a single commit/hold/unveil round."""
    return _run(_Session(protocol, bob_check), Strategy.parse(alice), Strategy.parse(bob), rng)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def _shard(protocol, alice, bob, seed, start, stop, bob_check):
    session = _Session(protocol, bob_check)
    passes = measured = correct = 0
    for k in range(start, stop):
        t = _run(session, alice, bob, trial_rng(seed, k))
        passes += t.check_passed
        if t.bob_measured:
            measured += 1
            correct += t.bob_decoded_bit == t.committed_bit
    return passes, measured, correct


def monte_carlo(protocol: ProtocolSpec, alice, bob, trials: int, seed: int,
                workers: int = 1, bob_check: str = "projective") -> MonteCarloStats:
    """Aggregate ``trials`` independent runs.

    Identical arguments give identical statistics for any ``workers``.
    """
    if int(trials) < 1:
        raise OutOfRange(f"trials must be >= 1, got {trials}")
    if not 0 <= int(seed) < 2 ** 64:
        raise OutOfRange(f"seed must be a 64-bit unsigned integer, got {seed}")
    trials, seed = int(trials), int(seed)
    alice, bob = Strategy.parse(alice), Strategy.parse(bob)
    workers = max(1, min(int(workers), trials))

    if workers == 1:
        counts = [_shard(protocol, alice, bob, seed, 0, trials, bob_check)]
    else:
        bounds = [trials * w // workers for w in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_shard, protocol, alice, bob, seed, lo, hi, bob_check)
                       for lo, hi in zip(bounds, bounds[1:])]
            counts = [f.result() for f in futures]

    passes = sum(c[0] for c in counts)
    measured = sum(c[1] for c in counts)
    correct = sum(c[2] for c in counts)
    rate = passes / trials
    return MonteCarloStats(
        trials=trials,
        pass_rate=rate,
        decode_accuracy=correct / measured if measured else None,
        standard_error=math.sqrt(rate * (1.0 - rate) / trials),
        seed=seed,
        passes=passes,
        measured=measured,
        decoded_correct=correct,
    )


@dataclass(frozen=True)
class ExactPrediction:
    pass_probability: float
    decode_accuracy: float | None


def exact_outcome(protocol: ProtocolSpec, alice, bob,
                  bob_check: str = "projective") -> ExactPrediction:
    """Expected pass rate and decode accuracy by enumerating every branch of a run.

    Follows the same rules as :func:`run_once` but sums probabilities
    instead of sampling.
    """
    s = _Session(protocol, bob_check)
    alice, bob = Strategy.parse(alice), Strategy.parse(bob)
    zeta = protocol.zeta

    if alice is Strategy.HONEST:
        commits = [(0.5 * p, bit, i, s.states[bit][i])
                   for bit in (0, 1) for i, p in enumerate(s.probs[bit])]
    else:
        commits = [(1.0, None, None, s.attack.cheat_state)]

    total = correct = 0.0
    for w_commit, bit0, index, sent in commits:
        if bob is Strategy.CHEAT:
            holds = []
            for k, pk in enumerate(branch_probabilities(sent, s.pair)):
                if pk > 1e-15:
                    holds.append((pk, project(sent, s.pair, k).post_state, k))
        else:
            holds = [(1.0, sent, None)]
        bits = [(1.0, bit0)] if bit0 is not None else [(0.5, 0), (0.5, 1)]
        for w_hold, held, decoded in holds:
            for w_bit, bit in bits:
                w = w_commit * w_hold * w_bit
                if decoded is not None:
                    correct += w * (decoded == bit)
                p_alice_checks = _fidelity_check(sent, held)
                if s.bob_check == "decode":
                    if decoded is not None:
                        p_bob_checks = float(decoded == bit)
                    else:
                        p_bob_checks = branch_probabilities(held, s.pair)[bit]
                elif bob is Strategy.CHEAT:
                    p_bob_checks = 1.0
                else:
                    p_bob_checks = _fidelity_check(s.announced(bit, index), held)
                total += w * (zeta * p_alice_checks + (1.0 - zeta) * p_bob_checks)
    return ExactPrediction(total, correct if bob is Strategy.CHEAT else None)

