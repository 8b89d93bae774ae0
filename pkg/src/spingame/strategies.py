"""Player implementations and classical-bound search machinery.

Classical players are functions of their own triple (plus private
randomness); the quantum pair recovers the referee's direction from the
received triple by matching the spin value against the finite menu, then
measures its half of a fresh shared entangled pair along that direction.

Direction inference is only well defined when, for every hidden sample in
the support, the spin values across a player's menu slots are pairwise
distinct; ``ensure_menu_distinguishable`` checks this exhaustively before
the game and ambiguous menus are rejected rather than guessed at.

The LHV (local hidden variable) machinery quantifies what any classical
strategy can achieve: ``lhv_chsh_max`` maximizes the CHSH combination over
deterministic responses per hidden sample (always exactly 2), and
``lhv_exhaustive_conservation`` minimizes the worst per-pair deviation
from the exact correlation targets over the full local strategy set
(mixtures of deterministic response tables), which is a small linear
program over the correlation polytope.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .cvalspin import (
    SUPPORT_TOL,
    XiDistribution,
    born_weights,
    correlation_exact,
    cval_spin,
)
from .errors import (
    AmbiguousInferenceError,
    InferenceError,
    MenuAmbiguityError,
    ProtocolViolationError,
    SupportTooLargeError,
)
from .game import GameConfig, Triple
from .hilbert import Direction, ReferenceBasis, TwoQubitState, eigenprojectors, embed

XI_MATCH_TOL = 1e-12
INFER_TOL = 1e-9


def _exact_index(values, target):
    try:
        return values.index(target)
    except ValueError:
        return None


# ---------------------------------------------------------------------------
# Direction inference


class InferenceContext:
    """Precomputed spin-value candidates for one player's menu.

    Knows the pre-game agreement (state, basis, xi support, menu, particle)
    and matches a received triple against the finite candidate table.
    """

    def __init__(self, state: TwoQubitState, basis: ReferenceBasis,
                 xi_dist: XiDistribution, menu, particle: int,
                 tol: float = INFER_TOL, support_tol: float = SUPPORT_TOL):
        self.state = state
        self.basis = basis
        self.xi_dist = xi_dist
        self.menu = tuple(menu)
        self.particle = particle
        self.tol = tol
        self.support_tol = support_tol
        probs = born_weights(state, basis)
        self._support = frozenset(int(i) for i in np.flatnonzero(probs > support_tol))
        self._xi_values = tuple(float(x) for x in xi_dist.support)
        self._xi_lookup = {value: k for k, value in enumerate(self._xi_values)}
        # candidates[slot][eta][xi_index] -> spin value; NaN off-support
        self._candidates = [
            [
                [
                    cval_spin(state, basis, eta, xi, direction, particle, support_tol)
                    if eta in self._support else math.nan
                    for xi in self._xi_values
                ]
                for eta in range(4)
            ]
            for direction in self.menu
        ]

    def xi_index(self, xi: float) -> int:
        k = self._xi_lookup.get(xi)
        if k is not None:
            return k
        best_k, best_d = 0, math.inf
        for k, value in enumerate(self._xi_values):
            d = abs(value - xi)
            if d < best_d:
                best_k, best_d = k, d
        if best_d > XI_MATCH_TOL:
            raise InferenceError(f"xi value {xi} is not in the agreed support")
        return best_k

    def infer(self, triple: Triple) -> int:
        """Menu slot whose spin value matches the received one, within tol.

        Raises InferenceError when nothing matches and
        AmbiguousInferenceError (with all candidate slots) when more than
        one slot matches.
        """
        k = self.xi_index(triple.xi)
        if triple.eta_index not in self._support:
            raise InferenceError(
                f"basis label {triple.eta_index} is outside the support")
        matches = [
            d for d in range(len(self.menu))
            if abs(self._candidates[d][triple.eta_index][k] - triple.s_tilde) <= self.tol
        ]
        if not matches:
            raise InferenceError(
                f"no menu direction reproduces spin value {triple.s_tilde} "
                f"for label {triple.eta_index}, xi {triple.xi}")
        if len(matches) > 1:
            raise AmbiguousInferenceError(
                f"menu slots {matches} all reproduce spin value {triple.s_tilde} "
                f"for label {triple.eta_index}, xi {triple.xi}", matches)
        return matches[0]

    def collisions(self, margin: float | None = None):
        """Hidden cells where two menu slots produce spin values closer
        than ``margin`` (defaults to 2 * tol)."""
        margin = 2 * self.tol if margin is None else margin
        found = []
        for eta in sorted(self._support):
            for k, xi in enumerate(self._xi_values):
                for d1, d2 in itertools.combinations(range(len(self.menu)), 2):
                    if abs(self._candidates[d1][eta][k] - self._candidates[d2][eta][k]) <= margin:
                        found.append((eta, xi, d1, d2))
        return found


def infer_direction(triple: Triple, menu, state: TwoQubitState,
                    basis: ReferenceBasis, xi_dist: XiDistribution,
                    particle: int, tol: float = INFER_TOL) -> int:
    """One-shot direction inference; see InferenceContext.infer."""
    return InferenceContext(state, basis, xi_dist, menu, particle, tol).infer(triple)


def ensure_menu_distinguishable(state: TwoQubitState, basis: ReferenceBasis,
                                xi_dist: XiDistribution, menu, particle: int,
                                tol: float = INFER_TOL) -> None:
    """Exhaustive pre-game check over every in-support (label, xi) cell.

    Raises MenuAmbiguityError listing the colliding cells if any two menu
    slots produce spin values within 2 * tol of each other.
    """
    ctx = InferenceContext(state, basis, xi_dist, menu, particle, tol)
    found = ctx.collisions()
    if found:
        raise MenuAmbiguityError(
            f"menu for particle {particle} is ambiguous on {len(found)} hidden "
            f"cells, e.g. label {found[0][0]}, xi {found[0][1]}: "
            f"slots {found[0][2]} and {found[0][3]} coincide", found)


_SINGLET_ROW_SIGNS = ((-1, -1), (1, 1), (-1, 1), (1, -1))


def singlet_infer_angles(eta_index: int, xi: float, s_tilde: float,
                         atol: float = INFER_TOL):
    """Continuous-angle inversion for the singlet in the y/x reference
    basis: all xz-plane polar angles whose spin value at (label, xi)
    equals ``s_tilde``.

    The closed form is s = sa * sin(theta) + sc * xi * cos(theta) with the
    per-label signs (sa, sc); inverting generically yields two angles in
    [0, 2*pi), so the result is a tuple (possibly empty) rather than a
    single angle. Finite menus with a distinguishability check are the
    reliable route; this inversion exists for the coplanar singlet case
    only.
    """
    sa, sc = _SINGLET_ROW_SIGNS[eta_index]
    a = float(sa)
    b = float(sc) * xi
    r = math.hypot(a, b)
    if r == 0.0:
        return ()
    if abs(s_tilde) > r + atol:
        return ()
    phi = math.atan2(b, a)
    alpha = math.asin(max(-1.0, min(1.0, s_tilde / r)))
    sols = sorted({(alpha - phi) % (2 * math.pi), (math.pi - alpha - phi) % (2 * math.pi)})
    out = []
    for t in sols:
        if not out or min(abs(t - s) for s in out) > atol:
            out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# Shared entangled pair with sequential projective collapse


class SharedPairSource:
    """Ensemble of identically prepared entangled pairs, one per round.

    ``begin_round`` loads a fresh copy of the agreed state; each particle
    may be measured once per round, with the state collapsing after each
    local measurement so that the joint statistics over both calls equal
    the two-projector quantum probabilities in either measurement order.
    """

    def __init__(self, state: TwoQubitState):
        self.state = state
        self._current = None
        self._measured = set()
        self.round_index = -1
        self.log = []
        self._projectors = {}

    def begin_round(self) -> None:
        self.round_index += 1
        self._current = np.array(self.state.amplitudes)
        self._measured = set()

    def _plus_projector(self, n: Direction, particle: int) -> np.ndarray:
        key = (n, particle)
        if key not in self._projectors:
            plus, _ = eigenprojectors(n)
            self._projectors[key] = embed(plus, particle)
        return self._projectors[key]

    def measure(self, particle: int, n: Direction, rng: np.random.Generator) -> int:
        """Projective spin measurement of one particle along ``n``.

        Returns +1 or -1 and collapses the round's pair state. Measuring
        the same particle twice in a round raises ProtocolViolationError.
        """
        if self._current is None:
            raise ProtocolViolationError("no active round; call begin_round first")
        if particle in self._measured:
            raise ProtocolViolationError(
                f"particle {particle} was already measured this round")
        projected = self._plus_projector(n, particle) @ self._current
        p_plus = float(np.vdot(projected, projected).real)
        if rng.random() < p_plus:
            outcome = 1
            self._current = projected / math.sqrt(p_plus)
        else:
            outcome = -1
            rest = self._current - projected
            self._current = rest / math.sqrt(max(1.0 - p_plus, np.vdot(rest, rest).real))
        self._measured.add(particle)
        self.log.append((self.round_index, particle, n, outcome))
        return outcome


def quantum_measure_local(source: SharedPairSource, particle: int, n: Direction,
                          rng: np.random.Generator) -> int:
    """Functional form of SharedPairSource.measure."""
    return source.measure(particle, n, rng)


# ---------------------------------------------------------------------------
# Response tables


@dataclass(frozen=True, eq=False)
class DeterministicTable:
    """Total map (menu slot, label index, xi index) -> +1/-1."""

    n_slots: int
    n_eta: int
    xi_support: tuple
    values: dict

    def __post_init__(self):
        expected = {
            (s, e, k)
            for s in range(self.n_slots)
            for e in range(self.n_eta)
            for k in range(len(self.xi_support))
        }
        if set(self.values.keys()) != expected:
            raise ValueError("table must be total over (slot, eta, xi) domain")
        if any(v not in (-1, 1) for v in self.values.values()):
            raise ValueError("table values must be +1 or -1")

    def value(self, slot: int, eta_index: int, xi_index: int) -> int:
        key = (slot, eta_index, xi_index)
        if key not in self.values:
            raise KeyError(f"table has no entry for {key}")
        return self.values[key]

    def xi_index(self, xi: float) -> int:
        k = _exact_index(self.xi_support, xi)
        if k is not None:
            return k
        best_k, best_d = 0, math.inf
        for k, value in enumerate(self.xi_support):
            d = abs(value - xi)
            if d < best_d:
                best_k, best_d = k, d
        if best_d > XI_MATCH_TOL:
            raise KeyError(f"xi value {xi} is not in the table's support")
        return best_k

    @classmethod
    def constant(cls, value: int, n_slots: int, n_eta: int, xi_support) -> "DeterministicTable":
        xi_support = tuple(float(x) for x in xi_support)
        values = {
            (s, e, k): value
            for s in range(n_slots) for e in range(n_eta) for k in range(len(xi_support))
        }
        return cls(n_slots, n_eta, xi_support, values)

    @classmethod
    def random(cls, rng: np.random.Generator, n_slots: int, n_eta: int,
               xi_support) -> "DeterministicTable":
        xi_support = tuple(float(x) for x in xi_support)
        values = {
            (s, e, k): int(rng.choice([-1, 1]))
            for s in range(n_slots) for e in range(n_eta) for k in range(len(xi_support))
        }
        return cls(n_slots, n_eta, xi_support, values)

    def to_json(self) -> str:
        return json.dumps({
            "n_slots": self.n_slots,
            "n_eta": self.n_eta,
            "xi_support": list(self.xi_support),
            "entries": [
                {"slot": s, "eta_index": e, "xi_index": k, "value": v}
                for (s, e, k), v in sorted(self.values.items())
            ],
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DeterministicTable":
        data = json.loads(text)
        values = {
            (int(e["slot"]), int(e["eta_index"]), int(e["xi_index"])): int(e["value"])
            for e in data["entries"]
        }
        return cls(int(data["n_slots"]), int(data["n_eta"]),
                   tuple(float(x) for x in data["xi_support"]), values)


def classical_respond(table: DeterministicTable, triple: Triple, slot: int) -> int:
    """Pure table lookup for a known menu slot."""
    return table.value(slot, triple.eta_index, table.xi_index(triple.xi))


# ---------------------------------------------------------------------------
# Strategies


class ConstantStrategy:
    def __init__(self, value: int):
        if value not in (-1, 1):
            raise ValueError("constant strategy value must be +1 or -1")
        self.value = value
        self.name = f"constant{value:+d}"

    def init_state(self) -> dict:
        return {}

    def respond(self, triple, menu, private_state, rng) -> int:
        return self.value


class SignStrategy:
    """Output the sign of the received spin value (ties go to +1)."""

    name = "sign"

    def init_state(self) -> dict:
        return {}

    def respond(self, triple, menu, private_state, rng) -> int:
        return 1 if triple.s_tilde >= 0 else -1


class RandomStrategy:
    """Fair coin, independent of everything received."""

    name = "random"

    def init_state(self) -> dict:
        return {}

    def respond(self, triple, menu, private_state, rng) -> int:
        return 1 if rng.random() < 0.5 else -1


class TableStrategy:
    """Deterministic local strategy: infer the menu slot from the triple,
    then answer from a total response table."""

    def __init__(self, table: DeterministicTable, inference: InferenceContext,
                 name: str = "table"):
        self.table = table
        self.inference = inference
        self.name = name

    def init_state(self) -> dict:
        return {}

    def respond(self, triple, menu, private_state, rng) -> int:
        slot = self.inference.infer(triple)
        return classical_respond(self.table, triple, slot)


class StochasticTableStrategy:
    """Local stochastic strategy: per (slot, label, xi) probability of
    answering +1."""

    def __init__(self, p_plus: dict, inference: InferenceContext,
                 name: str = "stochastic-table"):
        self.p_plus = dict(p_plus)
        self.inference = inference
        self.name = name

    def init_state(self) -> dict:
        return {}

    def respond(self, triple, menu, private_state, rng) -> int:
        slot = self.inference.infer(triple)
        k = self.inference.xi_index(triple.xi)
        p = self.p_plus[(slot, triple.eta_index, k)]
        return 1 if rng.random() < p else -1


class QuantumStrategy:
    """Infer the referee's direction, then measure this player's half of
    the shared pair along it and answer the outcome."""

    def __init__(self, source: SharedPairSource, particle: int,
                 inference: InferenceContext, name: str | None = None):
        self.source = source
        self.particle = particle
        self.inference = inference
        self.name = name or f"quantum-{particle}"

    def init_state(self) -> dict:
        return {}

    def respond(self, triple, menu, private_state, rng) -> int:
        slot = self.inference.infer(triple)
        return self.source.measure(self.particle, self.inference.menu[slot], rng)


def make_quantum_players(config: GameConfig, tol: float = INFER_TOL):
    """Build the quantum strategy pair for a game config.

    Validates both menus with the exhaustive distinguishability check and
    returns (strategy_a, strategy_b, shared_resources) ready for
    ``run_game``.
    """
    ensure_menu_distinguishable(config.state, config.basis, config.xi_dist,
                                config.menu_a, 1, tol)
    ensure_menu_distinguishable(config.state, config.basis, config.xi_dist,
                                config.menu_b, 2, tol)
    source = SharedPairSource(config.state)
    ctx_a = InferenceContext(config.state, config.basis, config.xi_dist,
                             config.menu_a, 1, tol, config.support_tol)
    ctx_b = InferenceContext(config.state, config.basis, config.xi_dist,
                             config.menu_b, 2, tol, config.support_tol)
    return (QuantumStrategy(source, 1, ctx_a), QuantumStrategy(source, 2, ctx_b),
            (source,))


def make_table_players(config: GameConfig, table_a: DeterministicTable,
                       table_b: DeterministicTable, tol: float = INFER_TOL):
    """Table strategy pair sharing the slot-inference mechanism."""
    ensure_menu_distinguishable(config.state, config.basis, config.xi_dist,
                                config.menu_a, 1, tol)
    ensure_menu_distinguishable(config.state, config.basis, config.xi_dist,
                                config.menu_b, 2, tol)
    ctx_a = InferenceContext(config.state, config.basis, config.xi_dist,
                             config.menu_a, 1, tol, config.support_tol)
    ctx_b = InferenceContext(config.state, config.basis, config.xi_dist,
                             config.menu_b, 2, tol, config.support_tol)
    return TableStrategy(table_a, ctx_a, "table-a"), TableStrategy(table_b, ctx_b, "table-b")


# ---------------------------------------------------------------------------
# LHV search


@dataclass(frozen=True)
class LhvSearchResult:
    """Outcome of a classical-strategy search.

    ``best_chsh`` is the deterministic maximum of the CHSH combination
    (exactly 2); ``deviation`` is the minimal worst-pair distance from the
    correlation targets over all local strategies; ``facet_bound`` is the
    exact CHSH-facet lower bound on that distance; ``tables`` carries the
    argmax assignments (CHSH max) or the optimal mixture of deterministic
    assignments (conservation search).
    """

    best_chsh: float | None = None
    gap: float | None = None
    pair_correlations: tuple = ()
    deviation: float | None = None
    facet_bound: float | None = None
    deterministic_deviation: float | None = None
    tables: tuple = ()

    def as_dict(self) -> dict:
        return {
            "best_chsh": self.best_chsh,
            "gap": self.gap,
            "pair_correlations": list(self.pair_correlations),
            "deviation": self.deviation,
            "facet_bound": self.facet_bound,
            "deterministic_deviation": self.deterministic_deviation,
            "tables": [list(t) if isinstance(t, tuple) else t for t in self.tables],
        }


def _assignment_vectors(n_slots_a: int, n_slots_b: int):
    """All deterministic per-sample assignments and their per-pair
    correlation vectors, in row-major pair order."""
    assignments = []
    vectors = []
    for a_resp in itertools.product((-1, 1), repeat=n_slots_a):
        for b_resp in itertools.product((-1, 1), repeat=n_slots_b):
            assignments.append((a_resp, b_resp))
            vectors.append([a * b for a in a_resp for b in b_resp])
    return assignments, np.array(vectors, dtype=float)


def chsh_combination(correlations) -> float:
    """c1 + c2 + c3 - c4 in row-major pair order (minus on both-primed)."""
    c1, c2, c3, c4 = correlations
    return float(c1 + c2 + c3 - c4)


def lhv_chsh_max(menu_a, menu_b, targets) -> LhvSearchResult:
    """Deterministic maximum of the CHSH combination.

    The combination is linear in the per-sample responses, so maximizing
    over the 16 deterministic assignments per hidden sample bounds every
    classical strategy, stochastic ones included by convexity. The max is
    exactly 2 for any menus; ``gap`` is |target combination| - 2.
    """
    if len(menu_a) != 2 or len(menu_b) != 2:
        raise ValueError("CHSH search needs 2-slot menus for both players")
    assignments, vectors = _assignment_vectors(2, 2)
    combos = vectors[:, 0] + vectors[:, 1] + vectors[:, 2] - vectors[:, 3]
    best = float(combos.max())
    argmax = [assignments[i] for i in np.flatnonzero(combos == best)]
    target_combo = chsh_combination(targets)
    return LhvSearchResult(
        best_chsh=best,
        gap=abs(target_combo) - best,
        pair_correlations=tuple(vectors[int(np.argmax(combos))]),
        tables=tuple(argmax),
    )


_CHSH_SIGNS = [s for s in itertools.product((-1, 1), repeat=4)
               if s[0] * s[1] * s[2] * s[3] == -1]


def chsh_facet_bound(targets) -> float:
    """Exact lower bound on the worst-pair deviation of any local model
    from the four correlation targets.

    Every local point satisfies all eight odd-sign CHSH combinations <= 2,
    and the per-pair |c_i| <= 1 box constraints; dividing each facet's
    violation by the L1 norm of its normal bounds the L-infinity distance
    from below.
    """
    t = np.asarray(targets, dtype=float)
    chsh = max((float(np.dot(s, t)) - 2.0) / 4.0 for s in _CHSH_SIGNS)
    box = float(np.max(np.abs(t))) - 1.0
    return max(0.0, chsh, box)


def _atoms(config: GameConfig, atom_cap: int):
    probs = born_weights(config.state, config.basis)
    support = [int(i) for i in np.flatnonzero(probs > config.support_tol)]
    n_atoms = len(support) * config.xi_dist.support.size
    if n_atoms > atom_cap:
        raise SupportTooLargeError(
            f"hidden support has {len(support)} labels x "
            f"{config.xi_dist.support.size} xi values = {n_atoms} atoms, "
            f"above the cap of {atom_cap}")
    total = sum(probs[e] for e in support)
    atoms = []
    for eta in support:
        for k, w in enumerate(config.xi_dist.weights):
            atoms.append((float(probs[eta] / total * w), eta, k))
    return atoms


def _targets(config: GameConfig):
    return [
        correlation_exact(config.state, config.basis, config.xi_dist,
                          config.menu_a[ia], config.menu_b[ib], config.support_tol)
        for ia, ib in config.pairs
    ]


def _deterministic_min_deviation(config: GameConfig, targets, atoms) -> float | None:
    """Exhaustive meet-in-the-middle search over per-sample deterministic
    assignments; None when the atom count makes it too large."""
    if len(atoms) > 8:
        return None
    _, vectors = _assignment_vectors(len(config.menu_a), len(config.menu_b))
    vertices = np.unique(vectors, axis=0)
    weighted = [w * vertices for (w, _, _) in atoms]
    half = len(atoms) // 2

    def partial_sums(blocks):
        sums = np.zeros((1, vertices.shape[1]))
        for block in blocks:
            sums = (sums[:, None, :] + block[None, :, :]).reshape(-1, vertices.shape[1])
        return sums

    left = partial_sums(weighted[:half])
    right = partial_sums(weighted[half:])
    t = np.asarray(targets, dtype=float)
    best = math.inf
    for row in left:
        dev = np.abs(row + right - t).max(axis=1).min()
        best = min(best, float(dev))
    return best


def lhv_exhaustive_conservation(config: GameConfig, atom_cap: int = 16,
                                include_deterministic: bool = False) -> LhvSearchResult:
    """Minimal worst-pair deviation any local strategy can achieve against
    the exact correlation targets of a config.

    The achievable correlation vectors of local strategies over the fixed
    hidden-sample measure form the convex hull of the deterministic
    assignment vertices, so the minimum is a linear program over vertex
    mixtures. For 2x2 menus the exact CHSH facet bound is reported
    alongside and the returned deviation is never below it (it is a valid
    lower bound; taking the max only removes LP solver noise).
    ``include_deterministic`` additionally runs the exhaustive search over
    pure per-sample assignments (no mixing), which is quantized and
    generally worse.
    """
    atoms = _atoms(config, atom_cap)
    targets = _targets(config)
    assignments, vectors = _assignment_vectors(len(config.menu_a), len(config.menu_b))
    vertices, rep_idx = np.unique(vectors, axis=0, return_index=True)
    n_v, n_pairs = vertices.shape
    t = np.asarray(targets, dtype=float)

    # minimize t_dev subject to |vertices^T p - targets| <= t_dev, p in simplex
    c = np.zeros(n_v + 1)
    c[-1] = 1.0
    a_ub = np.zeros((2 * n_pairs, n_v + 1))
    a_ub[:n_pairs, :n_v] = vertices.T
    a_ub[:n_pairs, -1] = -1.0
    a_ub[n_pairs:, :n_v] = -vertices.T
    a_ub[n_pairs:, -1] = -1.0
    b_ub = np.concatenate([t, -t])
    a_eq = np.zeros((1, n_v + 1))
    a_eq[0, :n_v] = 1.0
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * n_v + [(0, None)], method="highs")
    if not res.success:
        raise RuntimeError(f"LHV deviation LP failed: {res.message}")
    weights = res.x[:n_v]
    achieved = tuple(float(v) for v in (vertices.T @ weights))
    lp_value = float(res.x[-1])

    is_chsh = len(config.menu_a) == 2 and len(config.menu_b) == 2
    facet = chsh_facet_bound(targets) if is_chsh else None
    deviation = max(lp_value, facet) if facet is not None else lp_value

    best_chsh = lhv_chsh_max(config.menu_a, config.menu_b, targets).best_chsh if is_chsh else None
    det = _deterministic_min_deviation(config, targets, atoms) if include_deterministic else None

    mixture = tuple(
        (float(w), assignments[int(orig)])
        for w, orig in zip(weights, rep_idx) if w > 1e-12
    )
    return LhvSearchResult(
        best_chsh=best_chsh,
        gap=(abs(chsh_combination(targets)) - best_chsh) if best_chsh is not None else None,
        pair_correlations=achieved,
        deviation=deviation,
        facet_bound=facet,
        deterministic_deviation=det,
        tables=mixture,
    )
