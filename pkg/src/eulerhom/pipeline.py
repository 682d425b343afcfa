"""From a scenario to a verified crossed homomorphism.

Given a PL circle action of a free group G and a finite quotient
Q = G/K, the kernel K acts by chosen lifts (one integer T-power per
Schreier generator on top of the normalized lift).  For gamma in G and
x in K, the conjugation identity

    lift(gamma^-1 x gamma) = L^-1 lift(x) L T^-n,     L a lift of gamma,

pins an integer n = k(gamma)(x) because T is central; computing
L^-1 lift(x) L lift(gamma^-1 x gamma)^-1 and reading off the
translation power extracts n exactly, with no rotation-number search.
The translation-number route tau(lift(x)) - tau(lift(gamma^-1 x gamma))
recomputes the same integer when both values certify, and serves as the
independent cross-check.

k(gamma) is a homomorphism K -> Z, vanishes for gamma in K, and as a
function of gamma is a crossed homomorphism for the conjugation action
of Q on H^1(K; Z) = Z^rank.  Separately, the integral Euler cocycle of
the action is corrected by an explicit 1-cochain b so that the
corrected 2-cocycle depends on its second argument only through the
coset; restricting it (first argument in K, second a coset
representative) must reproduce the k table entry by entry.  verify_scenario
machine-checks all of this plus the supporting identities and reports
the cohomology class.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .cohomology import (
    Cochain,
    H1Lattice,
    QModule,
    coboundary_witness,
    crossed_hom_violation,
    delta,
)
from .plmaps import CirclePL, LiftPL
from .rotation import (
    IndeterminateTau,
    euler_chi_int,
    exact_tau,
    tau_floor_strict,
)
from .scenario import ActionScenario, scenario_digest, validate_scenario
from .words import (
    QuotientMap,
    SchreierData,
    Word,
    evaluate_circle,
    format_word,
)


class GapNotIntegral(RuntimeError):
    """The conjugation defect failed to be a pure translation.

    Cannot happen for a valid scenario; raised instead of silently
    mis-reading a map that is not T^n.
    """


@dataclass(frozen=True)
class LiftedKAction:
    """A lift per Schreier generator: normalized lift composed with T^offset."""

    lifts: tuple[LiftPL, ...]

    def lift_of(self, kword: Word) -> LiftPL:
        out = None
        for g, s in kword.letters:
            f = self.lifts[g] if s == 1 else self.lifts[g].inverse()
            out = f if out is None else out.compose(f)
        if out is None:
            from .plmaps import IDENTITY

            return IDENTITY
        return out


def _expsum_vector(w: Word, rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for g, s in w.letters:
        v[g] += s
    return tuple(v)


def kernel_generator_names(rank: int) -> list[str]:
    return [f"x{i + 1}" for i in range(rank)]


class ActionContext:
    """Everything derived from one scenario under one lift assignment."""

    def __init__(self, scenario: ActionScenario, offsets: Sequence[int] | None = None):
        validate_scenario(scenario)
        self.scenario = scenario
        self.quotient = QuotientMap(scenario.degree, scenario.permutations)
        self.schreier = SchreierData(self.quotient)
        self.maps = tuple(CirclePL.of(f) for f in scenario.maps)
        self.budget = scenario.verify.tau_budget
        if offsets is None:
            offsets = scenario.lift_offsets or (0,) * self.schreier.rank
        if len(offsets) != self.schreier.rank:
            raise ValueError(
                f"need {self.schreier.rank} lift offsets, got {len(offsets)}"
            )
        self.offsets = tuple(int(o) for o in offsets)
        base = [
            CirclePL.of(evaluate_circle(self.maps, w)).lift
            for w in self.schreier.k_generators
        ]
        self.lifted = LiftedKAction(
            tuple(f.shift(o) for f, o in zip(base, self.offsets))
        )
        self._eval: dict[Word, CirclePL] = {}
        self._klift: dict[Word, LiftPL] = {}
        self._b: dict[Word, int] = {}
        self._module: QModule | None = None
        self._khom: Cochain | None = None

    # --- evaluation ------------------------------------------------------

    def evaluate(self, w: Word) -> CirclePL:
        got = self._eval.get(w)
        if got is None:
            got = evaluate_circle(self.maps, w)
            self._eval[w] = got
        return got

    def kernel_lift(self, kword: Word) -> LiftPL:
        got = self._klift.get(kword)
        if got is None:
            got = self.lifted.lift_of(kword)
            self._klift[kword] = got
        return got

    # --- the two defect routes -------------------------------------------

    def defect_gap(self, gamma: Word, x: Word, *, gamma_lift_shift: int = 0) -> int:
        """k(gamma)(x) read off the conjugation identity; total and exact.

        x is a word over the Schreier generators.  gamma_lift_shift
        replaces the normalized lift L of gamma by L T^m; the result
        must not depend on it (T is central), which tests exercise.
        """
        rho_x = self.kernel_lift(x)
        lift_g = self.evaluate(gamma).lift.shift(gamma_lift_shift)
        conj = self.schreier.expand(x).conjugated_by(gamma)
        rho_conj = self.kernel_lift(self.schreier.rewrite(conj))
        h = lift_g.inverse().compose(rho_x).compose(lift_g).compose(rho_conj.inverse())
        n = h.translation_power()
        if n is None:
            raise GapNotIntegral(
                f"conjugation defect is not a translation for gamma={gamma}, x={x}"
            )
        return n

    def defect_tau(self, gamma: Word, x: Word) -> int:
        """Same integer via translation numbers; raises IndeterminateTau."""
        rho_x = self.kernel_lift(x)
        conj = self.schreier.expand(x).conjugated_by(gamma)
        rho_conj = self.kernel_lift(self.schreier.rewrite(conj))
        diff = exact_tau(rho_x, self.budget) - exact_tau(rho_conj, self.budget)
        if diff.denominator != 1:
            raise GapNotIntegral(
                f"translation numbers differ by the non-integer {diff}"
            )
        return int(diff)

    # --- conjugation module and the crossed homomorphism ------------------

    def conjugation_module(self, representatives: Sequence[Word] | None = None) -> QModule:
        """Action of Q on H^1(K; Z) by exponent sums of conjugated generators.

        representatives may replace the transversal words (any words with
        the same quotient images); the matrices must not change, since
        inner automorphisms act trivially on H^1.
        """
        if representatives is None and self._module is not None:
            return self._module
        reps = (
            self.schreier.transversal
            if representatives is None
            else tuple(representatives)
        )
        rank = self.schreier.rank
        mats = []
        for q, rep in enumerate(reps):
            if self.quotient.word_image(rep) != q:
                raise ValueError(f"representative for element {q} has wrong image")
            rows = [
                _expsum_vector(self.schreier.conjugated_generator(rep, i), rank)
                for i in range(rank)
            ]
            mats.append(rows)
        module = QModule(self.quotient, rank, mats)
        if representatives is None:
            self._module = module
        return module

    def crossed_hom(self) -> Cochain:
        """The table k(s(q))(x_i), computed by the gap route."""
        if self._khom is None:
            rows = [
                [
                    self.defect_gap(self.schreier.transversal[q], Word.generator(i))
                    for i in range(self.schreier.rank)
                ]
                for q in range(self.quotient.order)
            ]
            self._khom = Cochain.deg1(rows, self.schreier.rank)
        return self._khom

    # --- Euler cocycle correction -----------------------------------------

    def chi_int_words(self, w1: Word, w2: Word) -> int:
        """Integral Euler cocycle of the action evaluated on two group words."""
        return euler_chi_int(self.evaluate(w1), self.evaluate(w2), self.budget)

    def kernel_floor(self, w: Word) -> int:
        """floor(tau(lift(w))) for kernel words, 0 for everything else."""
        if not self.quotient.in_kernel(w):
            return 0
        return tau_floor_strict(self.kernel_lift(self.schreier.rewrite(w)), self.budget)

    def correction(self, w: Word) -> int:
        """The 1-cochain b: kernel floor on K, corrected Euler value elsewhere."""
        got = self._b.get(w)
        if got is not None:
            return got
        if self.quotient.in_kernel(w):
            v = self.kernel_floor(w)
        else:
            q, x = self.schreier.decompose(w)
            s = self.schreier.transversal[q]
            xg = self.schreier.expand(x)
            # (chi_Z + delta a)(s, x): the two outer a-terms vanish off K
            v = (
                self.chi_int_words(s, xg)
                + self.kernel_floor(xg)
                - self.kernel_floor(w)
                + self.kernel_floor(s)
            )
        self._b[w] = v
        return v

    def corrected_cocycle(self, w1: Word, w2: Word) -> int:
        """(chi_Z + delta b)(w1, w2); total, integer, exact."""
        return (
            self.chi_int_words(w1, w2)
            + self.correction(w2)
            - self.correction(w1 * w2)
            + self.correction(w1)
        )

    def restriction_rows(self) -> list[list[int]]:
        """The corrected cocycle evaluated at (x_i, s(q)): rows over q."""
        return [
            [
                self.corrected_cocycle(self.schreier.k_generators[i], self.schreier.transversal[q])
                for i in range(self.schreier.rank)
            ]
            for q in range(self.quotient.order)
        ]


# --------------------------------------------------------------------------
# sampling


class _Sampler:
    """Seeded reduced-word sampler, uniform length then uniform letters."""

    def __init__(self, rng: random.Random, n_gens: int, max_len: int):
        self.rng = rng
        self.n = n_gens
        self.max_len = max_len

    def word(self, max_len: int | None = None) -> Word:
        limit = self.max_len if max_len is None else max_len
        length = self.rng.randint(0, limit)
        letters: list[tuple[int, int]] = []
        for _ in range(length):
            while True:
                g = self.rng.randrange(self.n)
                s = self.rng.choice((1, -1))
                if letters and letters[-1] == (g, -s):
                    continue
                letters.append((g, s))
                break
        return Word(tuple(letters))


def _kernel_gword(sampler: _Sampler, schreier: SchreierData) -> Word:
    """A kernel element of G obtained from a random word via the transversal."""
    w = sampler.word()
    q = schreier.quotient.word_image(w)
    return schreier.transversal[q].inverse() * w


# --------------------------------------------------------------------------
# verification report


@dataclass
class CheckOutcome:
    name: str
    verdict: str  # PASS | FAIL | SKIP
    samples: int
    skipped: int
    witness: dict | None = None

    def to_dict(self) -> dict:
        d: dict = {
            "name": self.name,
            "verdict": self.verdict,
            "samples": self.samples,
            "skipped": self.skipped,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    scenario_hash: str
    checks: list[CheckOutcome]
    crossed_hom: dict
    h1_class: dict
    skipped: int
    elapsed: float
    schema_version: int = 1

    @property
    def verdict(self) -> str:
        return "FAIL" if any(c.verdict == "FAIL" for c in self.checks) else "PASS"

    def exit_code(self, strict: bool = False) -> int:
        if self.verdict == "FAIL":
            return 1
        if strict and (self.skipped or any(c.verdict == "SKIP" for c in self.checks)):
            return 1
        return 0

    def to_dict(self) -> dict:
        return {
            "schemaVersion": self.schema_version,
            "scenarioHash": self.scenario_hash,
            "checks": [c.to_dict() for c in self.checks],
            "crossedHom": self.crossed_hom,
            "h1Class": self.h1_class,
            "skipped": self.skipped,
            "elapsed": self.elapsed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _run_check(
    name: str,
    samples: Sequence,
    fn: Callable,
    workers: int = 1,
) -> CheckOutcome:
    """Evaluate fn on every sample; fn returns a witness dict on failure.

    IndeterminateTau downgrades the sample to a skip.  The outcome is
    deterministic in the sample order regardless of workers.
    """

    def attempt(sample):
        try:
            return fn(sample)
        except IndeterminateTau:
            return "skip"

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(attempt, samples))
    else:
        results = [attempt(s) for s in samples]
    skipped = sum(1 for r in results if r == "skip")
    witness = next((r for r in results if r is not None and r != "skip"), None)
    if witness is not None:
        return CheckOutcome(name, "FAIL", len(samples), skipped, witness)
    if samples and skipped == len(samples):
        return CheckOutcome(name, "SKIP", len(samples), skipped)
    return CheckOutcome(name, "PASS", len(samples), skipped)


def verify_scenario(
    scenario: ActionScenario,
    *,
    workers: int = 1,
    offsets: Sequence[int] | None = None,
) -> VerificationReport:
    """Run the full check suite and classify the crossed homomorphism."""
    t0 = time.monotonic()
    ctx = ActionContext(scenario, offsets=offsets)
    names = scenario.generators
    knames = kernel_generator_names(ctx.schreier.rank)
    rng = random.Random(scenario.verify.seed)
    gs = _Sampler(rng, len(names), scenario.verify.max_word_len)
    ks = _Sampler(rng, ctx.schreier.rank, scenario.verify.max_word_len)
    nsamp = scenario.verify.samples

    def gw(w: Word) -> str:
        return format_word(w, names)

    def kw(w: Word) -> str:
        return format_word(w, knames)

    # draw all samples first so the rng stream is independent of evaluation
    s_tau = [(gs.word(), ks.word()) for _ in range(nsamp)]
    s_triv = [(_kernel_gword(gs, ctx.schreier), ks.word()) for _ in range(nsamp)]
    s_add = [(gs.word(), ks.word(), ks.word()) for _ in range(nsamp)]
    s_canc = [(ks.word(), gs.word()) for _ in range(nsamp)]
    s_floor = [(ks.word(), gs.word()) for _ in range(nsamp)]
    s_vanish = [(gs.word(), _kernel_gword(gs, ctx.schreier)) for _ in range(nsamp)]
    s_filt = [
        (gs.word(), gs.word(), _kernel_gword(gs, ctx.schreier)) for _ in range(nsamp)
    ]

    def chk_tau(sample):
        gamma, x = sample
        want = ctx.defect_tau(gamma, x)  # IndeterminateTau -> skip
        got = ctx.defect_gap(gamma, x)
        if got != want:
            return {"gamma": gw(gamma), "x": kw(x), "gap": got, "tau": want}
        return None

    def chk_triv(sample):
        gamma, x = sample
        got = ctx.defect_gap(gamma, x)
        if got != 0:
            return {"gamma": gw(gamma), "x": kw(x), "value": got}
        return None

    def chk_add(sample):
        gamma, x, y = sample
        lhs = ctx.defect_gap(gamma, x * y)
        rhs = ctx.defect_gap(gamma, x) + ctx.defect_gap(gamma, y)
        if lhs != rhs:
            return {"gamma": gw(gamma), "x": kw(x), "y": kw(y), "lhs": lhs, "rhs": rhs}
        return None

    def chk_canc(sample):
        xk, gamma = sample
        xg = ctx.schreier.expand(xk)
        lhs = ctx.chi_int_words(xg, gamma)
        rhs = ctx.chi_int_words(gamma, xg.conjugated_by(gamma))
        if lhs != rhs:
            return {"x": kw(xk), "gamma": gw(gamma), "lhs": lhs, "rhs": rhs}
        return None

    def chk_floor(sample):
        xk, gamma = sample
        xg = ctx.schreier.expand(xk)
        conj = xg.conjugated_by(gamma)

        def db(u: Word, v: Word) -> int:
            return ctx.correction(v) - ctx.correction(u * v) + ctx.correction(u)

        lhs = db(xg, gamma) - db(gamma, conj)
        rhs = ctx.kernel_floor(xg) - ctx.kernel_floor(conj)
        if lhs != rhs:
            return {"x": kw(xk), "gamma": gw(gamma), "lhs": lhs, "rhs": rhs}
        return None

    def chk_vanish(sample):
        gamma, y = sample
        got = ctx.corrected_cocycle(gamma, y)
        if got != 0:
            return {"gamma": gw(gamma), "y": gw(y), "value": got}
        return None

    def chk_filt(sample):
        g1, g2, y = sample
        lhs = ctx.corrected_cocycle(g1, g2 * y)
        rhs = ctx.corrected_cocycle(g1, g2)
        if lhs != rhs:
            return {
                "gamma1": gw(g1),
                "gamma2": gw(g2),
                "y": gw(y),
                "lhs": lhs,
                "rhs": rhs,
            }
        return None

    checks = [
        _run_check("defect-tau-agreement", s_tau, chk_tau, workers),
        _run_check("defect-kernel-triviality", s_triv, chk_triv, workers),
        _run_check("defect-additivity", s_add, chk_add, workers),
    ]

    module = ctx.conjugation_module()
    khom = ctx.crossed_hom()
    bad = crossed_hom_violation(khom, module)
    order = ctx.quotient.order
    if bad is None:
        checks.append(CheckOutcome("crossed-hom-identity", "PASS", order * order, 0))
    else:
        q1, q2 = bad
        checks.append(
            CheckOutcome(
                "crossed-hom-identity",
                "FAIL",
                order * order,
                0,
                {
                    "q1": gw(ctx.schreier.transversal[q1]),
                    "q2": gw(ctx.schreier.transversal[q2]),
                },
            )
        )

    checks.append(_run_check("euler-cocycle-cancellation", s_canc, chk_canc, workers))
    checks.append(_run_check("floor-correction-cancellation", s_floor, chk_floor, workers))
    checks.append(
        _run_check("corrected-cocycle-kernel-vanishing", s_vanish, chk_vanish, workers)
    )
    checks.append(
        _run_check("corrected-cocycle-coset-filtration", s_filt, chk_filt, workers)
    )

    restriction = ctx.restriction_rows()
    table_witness = None
    for q in range(order):
        for i in range(ctx.schreier.rank):
            if khom.at(q)[i] != restriction[q][i]:
                table_witness = {
                    "q": gw(ctx.schreier.transversal[q]),
                    "generator": knames[i],
                    "crossedHom": khom.at(q)[i],
                    "restriction": restriction[q][i],
                }
                break
        if table_witness:
            break
    checks.append(
        CheckOutcome(
            "restriction-matches-crossed-hom",
            "FAIL" if table_witness else "PASS",
            order * ctx.schreier.rank,
            0,
            table_witness,
        )
    )

    lattice = H1Lattice(module)
    cls = lattice.class_of(khom)

    report = VerificationReport(
        scenario_hash=scenario_digest(scenario),
        checks=checks,
        crossed_hom={
            "kGenerators": [gw(w) for w in ctx.schreier.k_generators],
            "transversal": [gw(w) for w in ctx.schreier.transversal],
            "rows": [list(khom.at(q)) for q in range(order)],
        },
        h1_class={
            "coordinates": list(cls.coordinates),
            "invariantFactors": list(cls.invariant_factors),
        },
        skipped=sum(c.skipped for c in checks),
        elapsed=round(time.monotonic() - t0, 3),
    )
    return report


def compare_lift_offsets(
    scenario: ActionScenario,
    offsets_a: Sequence[int],
    offsets_b: Sequence[int],
) -> dict:
    """Crossed homomorphisms of two lift assignments differ by delta(-mu).

    mu_i = tau(lift_a(x_i)) - tau(lift_b(x_i)) = offset_a[i] - offset_b[i],
    exactly; the difference table must be the coboundary of -mu, and the
    echelon solver must certify it as a coboundary with its own witness.
    """
    ctx_a = ActionContext(scenario, offsets=offsets_a)
    ctx_b = ActionContext(scenario, offsets=offsets_b)
    module = ctx_a.conjugation_module()
    ka = ctx_a.crossed_hom()
    kb = ctx_b.crossed_hom()
    diff = ka - kb
    witness = coboundary_witness(diff, module)
    mu = tuple(int(x) - int(y) for x, y in zip(offsets_a, offsets_b))
    predicted = delta(
        Cochain.deg0(tuple(-m for m in mu), module.rank, module.order), module
    )
    prediction_exact = predicted.values == diff.values
    witness_valid = witness is not None and delta(
        Cochain.deg0(witness, module.rank, module.order), module
    ).values == diff.values
    verdict = "PASS" if (witness is not None and witness_valid and prediction_exact) else "FAIL"
    return {
        "schemaVersion": 1,
        "scenarioHash": scenario_digest(scenario),
        "offsetsA": list(int(x) for x in offsets_a),
        "offsetsB": list(int(x) for x in offsets_b),
        "difference": [list(diff.at(q)) for q in range(module.order)],
        "isCoboundary": witness is not None,
        "witness": None if witness is None else list(witness),
        "witnessValid": bool(witness_valid),
        "predictedMu": list(mu),
        "predictionExact": bool(prediction_exact),
        "verdict": verdict,
    }
