"""The ten acceptance criteria, one test each.

Every criterion prints a single ``PASS``/``FAIL`` line (collected again in the
terminal summary by ``conftest.py``).  Run standalone with
``python tests/test_acceptance.py`` to get just the ten lines.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import pytest
from gmpy2 import mpq

from extklr import quivercomb as qc
from extklr import schubert as sc
from extklr import smash
from extklr.polyalg import all_perms, iter_monomials, subsets
from extklr.quivercomb import dimension_vectors
from extklr.quivercomb import test_quivers as builtin_quivers
from extklr.smash import PBWElt

QUIVERS = builtin_quivers()


@dataclass
class Outcome:
    number: int
    title: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)

    def absorb(self, rep: qc.SweepReport) -> None:
        self.cases += rep.cases
        self.failures += rep.failures

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        head = f"{status} criterion {self.number:2d}: {self.title} ({self.cases} cases, {self.seconds:.1f}s)"
        if self.failures:
            head += f"; first failure: {self.failures[0]}"
        return head


RESULTS: dict[int, Outcome] = {}
CRITERIA: dict[int, tuple[str, Callable[[Outcome], None]]] = {}


def criterion(number: int, title: str):
    def deco(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return deco


def _relcases(out: Outcome, cases) -> None:
    for c in cases:
        r = c.check()
        out.check(r.passed, f"{c.id}: {r.witness}")


@criterion(1, "relation suites: nil-Hecke families n <= 4, KLR and floating-dot relations |n| <= 4")
def relations(out: Outcome) -> None:
    for n in range(1, 5):
        for fam in (smash.nil_hecke_cases, smash.extended_nil_hecke_cases,
                    smash.omega1_presentation_cases, smash.doubly_extended_cases):
            _relcases(out, fam(n))
    for q in QUIVERS.values():
        for dv in dimension_vectors(q.vertices, 4):
            _relcases(out, smash.klr_cases(q, dv))
            _relcases(out, smash.floating_dot_cases(q, dv, max_twist=0))


def _pbw_basis(n: int, algebra: str, max_deg: int) -> list[PBWElt]:
    lams = [frozenset()] if algebra == "NH" else subsets(n)
    mus = subsets(n) if algebra == "EENH" else [frozenset()]
    out = []
    for w in all_perms(n):
        for d in range(max_deg + 1):
            for a in iter_monomials(n, d):
                for lam in lams:
                    for mu in mus:
                        out.append(PBWElt(n, {(w, a, lam, mu): mpq(1)}))
    return out


@criterion(2, "PBW round trip on 200 random monomials per algebra, n <= 3, and basis indexing")
def pbw(out: Outcome) -> None:
    for n in range(1, 4):
        for alg in ("NH", "ENH", "EENH"):
            rng = random.Random(f"pbw-{alg}-{n}")
            for _ in range(200):
                m = smash.random_pbw_monomial(n, alg, rng)
                out.check(smash.pbw_extract(smash.pbw_embed(m), alg) == m, f"{alg} n={n} {m.to_text()}")
    # every index T_w X^a w+_lam w-_mu is a basis element: a generic combination of all of
    # them (|a| <= 1) is recovered coefficient by coefficient
    for n in (1, 2):
        for alg in ("NH", "ENH", "EENH"):
            rng = random.Random(f"index-{alg}-{n}")
            basis = _pbw_basis(n, alg, 1)
            combo = PBWElt(n, {k: mpq(rng.randint(1, 9)) for b in basis for k in b.coeffs})
            got = smash.pbw_extract(smash.pbw_embed(combo), alg)
            out.check(got == combo, f"{alg} n={n} combination of {len(basis)} basis elements")
            exterior = {"NH": 1, "ENH": 2 ** n, "EENH": 4 ** n}[alg]
            expected = math.factorial(n) * (1 + n) * exterior
            out.check(len(basis) == expected, f"{alg} n={n} index count {len(basis)} != {expected}")


def _cyc(n: int, N: int) -> int:
    return math.factorial(n) * math.factorial(N) // math.factorial(N - n) if N >= n else 0


@criterion(3, "dg-homology of (ENH_n, d_N): higher homology vanishes, total H_0 = n! N!/(N-n)!")
def dg_homology(out: Outcome) -> None:
    for n, N in ((1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 1), (3, 2)):
        for key, chk in smash.verify_dg(n, N).items():
            out.check(chk.passed, f"n={n} N={N} {key}: {chk.witness}")
        res = smash.graded_homology("ENH", n, N)
        out.check(res["higher_zero"], f"n={n} N={N}: nonzero higher homology")
        out.check(res["stabilized"], f"n={n} N={N}: H_0 did not stabilize")
        out.check(res["H0_total"] == _cyc(n, N), f"n={n} N={N}: H_0 total {res['H0_total']} != {_cyc(n, N)}")


@criterion(4, "dg-module oracle: total H_0(EPol_n, d_N) equals the quotient Pol_n/(P_1..P_n)")
def dg_module(out: Outcome) -> None:
    for n, N in ((1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (2, 1), (3, 2), (1, 3), (3, 4)):
        res = smash.graded_homology("EPol", n, N)
        oracle = sum(smash.epol_oracle_dims(n, N).values())
        target = math.factorial(N) // math.factorial(N - n) if N >= n else 0
        out.check(res["higher_zero"], f"n={n} N={N}: nonzero higher homology")
        out.check(res["H0_total"] == oracle == target,
                  f"n={n} N={N}: H_0 {res['H0_total']}, oracle {oracle}, formula {target}")
        per_degree = {d: v[2] for (d, k), v in res["table"].items() if k == 0 and v[2]}
        out.check(per_degree == {d: v for d, v in smash.epol_oracle_dims(n, N).items() if v},
                  f"n={n} N={N}: graded H_0 differs from the oracle")


@criterion(5, "Schubert identities and recursion = interpolation oracle, n <= 4")
def schubert_sweep(out: Outcome) -> None:
    for n in range(1, 5):
        for sweep in (sc.sweep_backends, sc.sweep_lemmas, sc.sweep_star, sc.sweep_wall_crossing):
            out.absorb(sweep(n))


def _colourings(max_total: int):
    for n in range(1, max_total + 1):
        yield sc.Colouring.plain(n)
    for name, q in QUIVERS.items():
        if name == "one-vertex":
            continue
        for dv in dimension_vectors(q.vertices, max_total):
            yield sc.Colouring.standard(q, dv)


@criterion(6, "operator match of localized kernels on P omega_lam, deg P <= 3, |n| <= 3")
def operator_match(out: Outcome) -> None:
    for col in _colourings(3):
        for case in sc.operator_match_cases(col, 3, max_N=3):
            rep = case.run()
            out.check(rep.passed, f"{case.id}: {'; '.join(rep.failures[:1])}")


@criterion(7, "localized S_n action equals the action on EPol_n, n <= 4")
def sn_action(out: Outcome) -> None:
    for n in range(1, 5):
        for cid, f in sc.sraction_cases(n, 2 if n < 4 else 1):
            out.check(f(), cid)


@criterion(8, "degree = dimension for every Gell |n| <= 4 (incl. source/sink k), diff-dim |n| <= 5")
def degree_dim(out: Outcome) -> None:
    for q in QUIVERS.values():
        sources = [v for v in q.vertices if q.is_source(v)]
        sinks = [v for v in q.vertices if q.is_sink(v)]
        for dv in dimension_vectors(q.vertices, 4):
            out.absorb(qc.sweep_degree_dim(q, dv))
            out.absorb(qc.sweep_degree_dim(q, dv, supported_on=sources))
            out.absorb(qc.sweep_degree_dim(q, dv, supported_on=sinks))
            n = sum(dv.values())
            for j in qc.colour_sequences(dv):
                for k in range(n + 1):
                    for label in qc.gell_enumerate(n, k, j):
                        if all(label.j[p - 1] in sources for p in label.subset):
                            w0 = label.factors()["w0"]
                            out.check(qc.crossing_counts(w0.w, w0.bottom, q)[1] == 0,
                                      f"{q.label()} {label.to_text()}: X->(w0k) != 0 on sources")
        for dv in dimension_vectors(q.vertices, 5):
            out.absorb(qc.sweep_diff_dim(q, dv))


@criterion(9, "basis candidates independent, n! C(n,k) per colour sequence, |n| <= 3 (spanning not checked)")
def nv_basis(out: Outcome) -> None:
    for q in QUIVERS.values():
        for dv in dimension_vectors(q.vertices, 3):
            n = sum(dv.values())
            for k in range(n + 1):
                res = smash.basis_check_ER(q, dv, k)
                want = math.factorial(n) * math.comb(n, k)
                tag = f"{q.label()} {qc._dv_text(dv)} k={k}"
                out.check(res["passed"], f"{tag}: rank {res['rank']} < {res['count']}")
                out.check(res["per_sequence"] == want, f"{tag}: {res['per_sequence']} per sequence != {want}")
                out.check(res["count"] == want * len(qc.colour_sequences(dv)), f"{tag}: total count")


@criterion(10, "higher floating dots: absorption and crossing identities, twists a <= 2, |n| <= 3")
def higher_floating(out: Outcome) -> None:
    for q in QUIVERS.values():
        for dv in dimension_vectors(q.vertices, 3):
            _relcases(out, (c for c in smash.floating_dot_cases(q, dv, max_twist=2)
                            if "|absorb" in c.id or "|cross" in c.id))


def run_criterion(number: int) -> Outcome:
    title, fn = CRITERIA[number]
    out = Outcome(number, title)
    t = time.perf_counter()
    fn(out)
    out.seconds = time.perf_counter() - t
    RESULTS[number] = out
    return out


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number: int) -> None:
    out = run_criterion(number)
    print(out.line())
    assert out.passed, out.line()


if __name__ == "__main__":
    for num in sorted(CRITERIA):
        print(run_criterion(num).line(), flush=True)
