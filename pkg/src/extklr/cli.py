"""Command line harness: ``extklr verify <suite>`` and ``extklr compute <what>``.

Exit status is 0 iff every case passes; 1 on a failing case; 2 on bad input
or when valid parameters produce no cases.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .quivercomb import Quiver, test_quivers

__all__ = ["QuiverError", "CaseResult", "Report", "parse_quiver", "load_quiver", "parse_dimvec",
           "run_suite", "emit", "main", "SUITES"]


class QuiverError(ValueError):
    """Invalid quiver input; the message names the problem."""


@dataclass(frozen=True)
class CaseResult:
    id: str
    cite: str
    passed: bool
    witness: str = ""
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    suite: str
    params: dict
    cases: list[CaseResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.passed)

    @property
    def passed(self) -> bool:
        return bool(self.cases) and not self.failed

    def summary(self) -> dict:
        return {"cases": len(self.cases), "passed": len(self.cases) - self.failed,
                "failed": self.failed, "status": "pass" if self.passed else "fail", "notes": self.notes}


# ---------------------------------------------------------------------------
# inputs


def parse_quiver(text: str) -> Quiver:
    """``{"vertices": [...], "arrows": [[s, t], ...]}``; repeated arrows give multiplicities."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise QuiverError(f"malformed quiver: {e.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise QuiverError("malformed quiver: expected an object with a 'vertices' list")
    verts = data["vertices"]
    arrows = data.get("arrows", [])
    if not all(isinstance(v, str) and v for v in verts):
        raise QuiverError("malformed quiver: vertex names must be nonempty strings")
    if not isinstance(arrows, list) or not all(
            isinstance(a, list) and len(a) == 2 and all(isinstance(x, str) for x in a) for a in arrows):
        raise QuiverError("malformed quiver: arrows must be [source, target] pairs")
    if len(set(verts)) != len(verts):
        raise QuiverError("duplicate vertex")
    for s, t in arrows:
        if s == t:
            raise QuiverError("loop arrow")
        if s not in verts or t not in verts:
            raise QuiverError(f"malformed quiver: arrow [{s}, {t}] uses an unknown vertex")
    return Quiver(tuple(verts), tuple((s, t) for s, t in arrows), str(data.get("name", "")))


def load_quiver(spec: str | None) -> Quiver:
    """A built-in test quiver name, or a path to a quiver file."""
    builtin = test_quivers()
    if spec is None:
        return builtin["one-vertex"]
    if spec in builtin:
        return builtin[spec]
    path = Path(spec)
    if not path.exists():
        raise QuiverError(f"unknown quiver {spec!r} (built-in: {', '.join(builtin)})")
    return parse_quiver(path.read_text())


def parse_dimvec(text: str, quiver: Quiver) -> dict[str, int]:
    """``i=2,j=1``; vertices not listed get 0."""
    out: dict[str, int] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep or not value.strip().isdigit():
            raise QuiverError(f"malformed dimension vector entry {part!r}")
        name = name.strip()
        if name not in quiver.vertices:
            raise QuiverError(f"dimension vector names unknown vertex {name!r}")
        if int(value) > 0:
            out[name] = int(value)
    return out


# ---------------------------------------------------------------------------
# suites

Case = tuple[str, str, Callable[[], tuple[bool, str]]]


def _bound(name: str, value: int | None, lo: int, hi: int) -> int:
    if value is None or not lo <= value <= hi:
        raise ValueError(f"--{name} must be between {lo} and {hi}")
    return value


def _dimvecs(args, quiver: Quiver, max_total: int) -> list[dict[str, int]]:
    from .quivercomb import dimension_vectors

    if args.dimvec:
        dv = parse_dimvec(args.dimvec, quiver)
        _bound("dimvec total", sum(dv.values()), 1, max_total)
        return [dv]
    n = _bound("n", args.n if args.n is not None else 3, 1, max_total)
    return dimension_vectors(quiver.vertices, n)


def _relcases(cases) -> list[Case]:
    return [(c.id, c.cite, (lambda c=c: (lambda r: (r.passed, r.witness))(c.check()))) for c in cases]


def _sweep(rep_fn) -> Callable[[], tuple[bool, str]]:
    def run():
        rep = rep_fn()
        return rep.passed, ("" if rep.passed else "; ".join(rep.failures[:3])) or ""
    return run


def suite_relations(args) -> list[Case]:
    from . import smash

    q = load_quiver(args.quiver)
    cases: list[Case] = []
    if not q.arrows and len(q.vertices) == 1 and not args.dimvec:
        n = _bound("n", args.n if args.n is not None else 3, 1, 4)
        for fam in (smash.nil_hecke_cases, smash.extended_nil_hecke_cases,
                    smash.omega1_presentation_cases, smash.doubly_extended_cases):
            cases += _relcases(fam(n))
    for dv in _dimvecs(args, q, 4):
        cases += _relcases(smash.klr_cases(q, dv))
        cases += _relcases(smash.floating_dot_cases(q, dv, max_twist=0))
    return cases


def suite_higher_floating(args) -> list[Case]:
    from . import smash

    q = load_quiver(args.quiver)
    a = _bound("twist", args.twist, 0, 4)
    cases: list[Case] = []
    for dv in _dimvecs(args, q, 4):
        cases += _relcases(c for c in smash.floating_dot_cases(q, dv, max_twist=a)
                           if "|absorb" in c.id or "|cross" in c.id)
    return cases


def suite_pbw(args) -> list[Case]:
    from . import smash

    n = _bound("n", args.n if args.n is not None else 3, 1, 4)
    count = _bound("count", args.count, 1, 10000)
    cases: list[Case] = []
    for alg in ("NH", "ENH", "EENH"):
        rng = random.Random(f"{args.seed}-{alg}-{n}")
        for idx in range(count):
            m = smash.random_pbw_monomial(n, alg, rng)

            def run(m=m, alg=alg):
                got = smash.pbw_extract(smash.pbw_embed(m), alg)
                return got == m, "" if got == m else f"extracted {got.to_text()}"
            cases.append((f"{alg} n={n} #{idx} {m.to_text()}", "PBW normal form round trip", run))
    return cases


def _nh_cyclotomic_dim(n: int, N: int) -> int:
    return math.factorial(n) * math.factorial(N) // math.factorial(N - n) if N >= n else 0


def suite_dg_homology(args) -> list[Case]:
    from . import smash

    n = _bound("n", args.n if args.n is not None else 2, 1, 3)
    N = _bound("N", args.N if args.N is not None else 2, 0, 4)
    cases: list[Case] = []
    for key, chk in smash.verify_dg(n, N).items():
        cases.append((f"dg n={n} N={N} {key}", "the differential is a derivation with square zero",
                      lambda chk=chk: (chk.passed, chk.witness)))
    want = _nh_cyclotomic_dim(n, N)
    cache: dict = {}

    def hom(space):
        if space not in cache:
            cache[space] = smash.graded_homology(space, n, N, args.cutoff)
        return cache[space]

    cases.append((f"ENH n={n} N={N} higher homology", "H_i(ENH_n, d_N) = 0 for i > 0",
                  lambda: (hom("ENH")["higher_zero"], _hom_witness(hom("ENH")))))
    cases.append((f"ENH n={n} N={N} H0 total", f"sum dim H_0(ENH_n, d_N) = n! N!/(N-n)! = {want}",
                  lambda: (hom("ENH")["H0_total"] == want and hom("ENH")["stabilized"],
                           f"H0 total {hom('ENH')['H0_total']}, stabilized {hom('ENH')['stabilized']}")))
    cases.append((f"EPol n={n} N={N} higher homology", "H_i(EPol_n, d_N) = 0 for i > 0",
                  lambda: (hom("EPol")["higher_zero"], _hom_witness(hom("EPol")))))

    def epol_total():
        oracle = sum(smash.epol_oracle_dims(n, N).values())
        got = hom("EPol")["H0_total"]
        target = math.factorial(N) // math.factorial(N - n) if N >= n else 0
        return got == oracle == target, f"H0 total {got}, quotient oracle {oracle}, formula {target}"
    cases.append((f"EPol n={n} N={N} H0 total", "sum dim H_0(EPol_n, d_N) = N!/(N-n)! (quotient oracle)",
                  epol_total))
    return cases


def _hom_witness(res: dict) -> str:
    bad = sorted((d, k, v[2]) for (d, k), v in res["table"].items() if k > 0 and v[2])
    return "" if not bad else "nonzero H at (deg, i, dim) " + ", ".join(map(str, bad[:5]))


def suite_cyclotomic(args) -> list[Case]:
    from . import smash

    n = _bound("n", args.n if args.n is not None else 2, 1, 3)
    N = _bound("N", args.N if args.N is not None else 2, 0, 4)
    want = _nh_cyclotomic_dim(n, N)

    def run():
        dims = smash.cyclotomic_dims(n, N, args.cutoff)
        total = sum(dims.values())
        text = ", ".join(f"{d}:{v}" for d, v in sorted(dims.items()) if v)
        return total == want, f"dim {total} ({text})"
    return [(f"cyclotomic n={n} N={N}", f"dim NH_n/(X_1^N) = n! N!/(N-n)! = {want}", run)]


def suite_schubert(args) -> list[Case]:
    from . import schubert as sc

    cases: list[Case] = []
    q = load_quiver(args.quiver)
    if q.arrows or len(q.vertices) > 1 or args.dimvec:
        for dv in _dimvecs(args, q, 3):
            col = sc.Colouring.standard(q, dv)
            tag = f"{q.label()} {'+'.join(f'{c}{v}' for v, c in sorted(dv.items()))}"
            cases.append((f"t_to_s {tag}", "coloured restriction is the product of one-colour restrictions",
                          _sweep(lambda col=col: sc.sweep_t_to_s(col))))
            cases.append((f"starintertwines {tag}", "coloured lift intertwines the coloured star product",
                          _sweep(lambda col=col: sc.sweep_starintertwines(col, args.seed))))
        return cases
    n = _bound("n", args.n if args.n is not None else 3, 1, 4)
    for m in range(1, n + 1):
        cases += [
            (f"backends n={m}", "Schubert recursion equals the GKM interpolation oracle",
             _sweep(lambda m=m: sc.sweep_backends(m))),
            (f"lemmas n={m}", "creation/annihilation identities of Schubert restrictions",
             _sweep(lambda m=m: sc.sweep_lemmas(m))),
            (f"wall-crossing n={m}", "change of w: S^(ws_r) versus S^w",
             _sweep(lambda m=m: sc.sweep_wall_crossing(m))),
            (f"star n={m}", "star product of Schubert classes with the Q weights",
             _sweep(lambda m=m: sc.sweep_star(m))),
            (f"redwine n={m}", "flag lift intertwines the star product",
             _sweep(lambda m=m: sc.sweep_redwine(m))),
        ]
    return cases


def suite_operator_match(args) -> list[Case]:
    from . import schubert as sc

    D = _bound("deg", args.deg if args.deg is not None else 2, 0, 4)
    q = load_quiver(args.quiver)
    cols = []
    if not q.arrows and len(q.vertices) == 1 and not args.dimvec:
        n = _bound("n", args.n if args.n is not None else 3, 1, 3)
        cols = [sc.Colouring.plain(n)]
    else:
        cols = [sc.Colouring.standard(q, dv) for dv in _dimvecs(args, q, 3)]
    return [(c.id, c.cite, _sweep(c.run)) for col in cols for c in sc.operator_match_cases(col, D)]


def suite_sn_action(args) -> list[Case]:
    from . import schubert as sc

    n = _bound("n", args.n if args.n is not None else 3, 1, 4)
    D = _bound("deg", args.deg if args.deg is not None else 1, 0, 3)
    return [(cid, "localized S_n action on fixed points equals the action on EPol_n",
             lambda f=f: (f(), "")) for cid, f in sc.sraction_cases(n, D)]


def suite_degree_dim(args) -> list[Case]:
    from . import quivercomb as qc

    q = load_quiver(args.quiver)
    cases: list[Case] = []
    for dv in _dimvecs(args, q, 5):
        n = sum(dv.values())
        ks = range(n + 1) if args.k is None else [_bound("k", args.k, 0, n)]
        if n <= 4:
            for j in qc.colour_sequences(dv):
                for k in ks:
                    for label in qc.gell_enumerate(n, k, j):
                        def run(label=label):
                            res = qc.degree_dim_check(label, q)
                            return res.passed, "" if res.passed else res.line()
                        cases.append((f"{q.label()} {label.to_text()}",
                                      "deg(tau_x Omega_(k,n) tau_y tau_z 1_j) = 2 dim Y + sum(k_i^2 - k_i) - 2 dim Gell",
                                      run))
        cases.append((f"diff-dim {q.label()} {qc._dv_text(dv)}",
                      "dim X(V) - dim(X(V) cap X(V')) = X->(rel(V, V'))",
                      _sweep(lambda dv=dv: qc.sweep_diff_dim(q, dv))))
    return cases


def suite_basis_check(args) -> list[Case]:
    from . import smash

    q = load_quiver(args.quiver)
    cases: list[Case] = []
    for dv in _dimvecs(args, q, 3):
        n = sum(dv.values())
        ks = range(n + 1) if args.k is None else [_bound("k", args.k, 0, n)]
        for k in ks:
            want = math.factorial(n) * math.comb(n, k)

            def run(dv=dv, k=k, want=want):
                res = smash.basis_check_ER(q, dv, k, seed=args.seed)
                ok = res["passed"] and res["per_sequence"] == want
                return ok, f"rank {res['rank']} of {res['count']}, {res['per_sequence']} per sequence"
            cases.append((f"{q.label()} {smash._dv_text(dv)} k={k}",
                          f"tau_x Omega_(k,n) tau_y tau_z 1_j independent, n! C(n,k) = {want} per sequence", run))
    return cases


SUITES: dict[str, Callable] = {
    "relations": suite_relations,
    "pbw": suite_pbw,
    "dg-homology": suite_dg_homology,
    "cyclotomic": suite_cyclotomic,
    "schubert-identities": suite_schubert,
    "operator-match": suite_operator_match,
    "sn-action": suite_sn_action,
    "degree-dim": suite_degree_dim,
    "basis-check": suite_basis_check,
    "higher-floating": suite_higher_floating,
}


def run_suite(name: str, args) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    cases = SUITES[name](args)
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("cmd", "suite", "format", "func") and v is not None}
    rep = Report(name, params)
    for cid, cite, run in cases:
        try:
            ok, witness = run()
        except Exception as e:  # a crash is a failing case, not a harness error
            ok, witness = False, f"{type(e).__name__}: {e}"
        rep.cases.append(CaseResult(cid, cite, bool(ok), "" if ok else witness, witness))
    if name == "cyclotomic" and rep.cases:
        rep.notes.append(f"{rep.cases[0].detail.split(' (')[0]}, {rep.summary()['status']}")
    return rep


# ---------------------------------------------------------------------------
# output


def emit(report: Report, fmt: str = "text") -> str:
    if fmt == "machine":
        doc = {"suite": report.suite, "params": report.params,
               "cases": [{"id": c.id, "cite": c.cite, "status": c.status, "witness": c.witness}
                         for c in report.cases],
               "summary": report.summary()}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = [f"suite {report.suite} " + " ".join(f"{k}={v}" for k, v in report.params.items())]
    for c in report.cases:
        lines.append(f"{c.status.upper():4} {c.id} [{c.cite}]" + (f"\n     witness: {c.witness}" if c.witness else ""))
    s = report.summary()
    lines.append(f"{s['cases']} cases, {s['passed']} passed, {s['failed']} failed: {s['status']}")
    lines += [f"note: {x}" for x in report.notes]
    return "\n".join(lines) + "\n"


def _compute(args) -> str:
    if args.what == "schubert":
        from .schubert import schubert_build, table_text
        n = _bound("n", args.n if args.n is not None else 2, 1, 5)
        k = _bound("k", args.k if args.k is not None else 1, 0, n)
        table = schubert_build(n, k, "recursion")
        if args.format == "machine":
            from .polyalg import subsets
            rows = [{"lam": sorted(lam), "mu": sorted(mu), "value": table(lam, mu).to_text("T")}
                    for lam in subsets(n, k) for mu in subsets(n, k)]
            return json.dumps({"n": n, "k": k, "table": rows}, indent=2, sort_keys=True) + "\n"
        return table_text(table) + "\n"
    n = _bound("n", args.n if args.n is not None else 2, 1, 3)
    N = _bound("N", args.N if args.N is not None else 2, 0, 4)
    from . import smash
    if args.what == "dims":
        dims = smash.cyclotomic_dims(n, N, args.cutoff)
        data = {str(d): v for d, v in sorted(dims.items())}
        if args.format == "machine":
            return json.dumps({"n": n, "N": N, "graded_dims": data, "total": sum(dims.values())},
                              indent=2, sort_keys=True) + "\n"
        return "".join(f"deg {d}: {v}\n" for d, v in sorted(dims.items())) + f"total {sum(dims.values())}\n"
    space = args.space
    res = smash.graded_homology(space, n, N, args.cutoff)
    rows = sorted((d, k, v[2]) for (d, k), v in res["table"].items())
    if args.format == "machine":
        return json.dumps({"space": space, "n": n, "N": N, "H0_total": res["H0_total"],
                           "higher_zero": res["higher_zero"],
                           "homology": [{"deg": d, "i": k, "dim": h} for d, k, h in rows]},
                          indent=2, sort_keys=True) + "\n"
    return "".join(f"deg {d} i={k}: {h}\n" for d, k, h in rows if h) + \
        f"H0 total {res['H0_total']}, higher homology zero: {res['higher_zero']}\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extklr", description="Verification harness for extended KLR algebras.")
    sub = p.add_subparsers(dest="cmd", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--dimvec", help="dimension vector, e.g. i=2,j=1")
    common.add_argument("--cutoff", type=int, help="fixed degree cutoff instead of the stopping rule")
    common.add_argument("--deg", type=int, help="maximal polynomial degree of test elements")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--quiver", help="built-in quiver name or quiver file")
    v.add_argument("--twist", type=int, default=2, help="maximal floating-dot twist")
    v.add_argument("--count", type=int, default=200, help="random PBW monomials per algebra")
    v.add_argument("--seed", type=int, default=0)
    c = sub.add_parser("compute", parents=[common], help="compute a table")
    c.add_argument("what", choices=("schubert", "dims", "homology"))
    c.add_argument("--space", choices=("ENH", "EPol"), default="ENH")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "compute":
            sys.stdout.write(_compute(args))
            return 0
        rep = run_suite(args.suite, args)
    except (QuiverError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(rep, args.format))
    if not rep.cases:
        print("error: no cases for these parameters", file=sys.stderr)
        return 2
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
