"""Seeded corpus scan: every closed form against its invariants and the oracle."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import jetoracle, seshadri
from .catalog import Instance, coefficient_hi, corpus, sample_ample
from .toric import adjoint_divisor, chart_at, divisor_combine, is_ample, is_gg_at


@dataclass(frozen=True)
class ScanConfig:
    catalog: tuple[str, ...]
    count: int
    seed: int
    lo: int = 0
    hi: int = 3
    primes: tuple[int, ...] = (2, 3)
    homogeneity_r: int = 5
    scaling_r: int = 3
    oracle_m_max: int = 4
    e_cap: int = 2
    workers: int = 1


@dataclass(frozen=True)
class ScanRow:
    id: str
    fan: str
    divisor: tuple[int, ...]
    epsilon: tuple[Fraction, ...]
    epsilon_frobenius: tuple[Fraction, ...]
    sandwich_ok: bool
    homogeneity_ok: bool
    scaling_ok: bool
    oracle_agreement_ok: bool
    adjoint_gg_ok: bool
    superadditivity_observed: bool
    adjoint_very_ample_observed: bool | None
    oracle_instances: int
    oracle_skipped: int

    @property
    def hard_ok(self) -> bool:
        return (
            self.sandwich_ok
            and self.homogeneity_ok
            and self.scaling_ok
            and self.oracle_agreement_ok
            and self.adjoint_gg_ok
        )


@dataclass
class ScanReport:
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        cols = ["sandwich_ok", "homogeneity_ok", "scaling_ok", "oracle_agreement_ok", "adjoint_gg_ok"]
        out = {"instances": len(self.rows)}
        for c in cols:
            out[c.replace("_ok", "_failures")] = sum(not getattr(r, c) for r in self.rows)
        out["superadditivity_observed"] = sum(r.superadditivity_observed for r in self.rows)
        out["oracle_instances"] = sum(r.oracle_instances for r in self.rows)
        out["oracle_skipped"] = sum(r.oracle_skipped for r in self.rows)
        return out

    @property
    def ok(self) -> bool:
        return all(r.hard_ok for r in self.rows)


def check_instance(inst: Instance, cfg: ScanConfig) -> ScanRow:
    d = inst.divisor
    fan = d.fan
    n = fan.dim
    cones = range(len(fan.max_cones))
    charts = [chart_at(d, k)[1] for k in cones]
    eps = tuple(seshadri.classical_seshadri(cp) for cp in charts)
    eps_f = tuple(seshadri.frobenius_seshadri(cp) for cp in charts)

    sandwich = all(e / n <= f <= e for e, f in zip(eps, eps_f))

    homog = True
    for r in range(1, cfg.homogeneity_r + 1):
        dr = divisor_combine(d, d, r, 0)
        for k in cones:
            cp = chart_at(dr, k)[1]
            homog = homog and seshadri.frobenius_seshadri(cp) == r * eps_f[k]
            homog = homog and seshadri.classical_seshadri(cp) == r * eps[k]

    scaling = all(seshadri.scaling_check(cp, p, cfg.scaling_r) for cp in charts for p in cfg.primes)

    adj = adjoint_divisor(d)
    adjoint_ok = all(is_gg_at(adj, k) for k in cones if eps_f[k] > 1)
    very_ample = is_ample(adj) if all(f > 2 for f in eps_f) else None

    rng = random.Random(f"{cfg.seed}:{inst.id}")
    other = sample_ample(fan, rng, cfg.lo, coefficient_hi(inst.fan_name, cfg.hi))
    both = divisor_combine(d, other, 1, 1)
    superadd = all(
        seshadri.frobenius_seshadri(chart_at(both, k)[1])
        >= eps_f[k] + seshadri.frobenius_seshadri(chart_at(other, k)[1])
        for k in cones
    )

    agree, done, skipped = True, 0, 0
    for m in range(1, cfg.oracle_m_max + 1):
        try:
            sections = jetoracle.enumerate_sections(d, m)
        except jetoracle.SizeLimit:
            skipped += 1
            continue
        for k in cones:
            for p in cfg.primes:
                for e in range(1, cfg.e_cap + 1):
                    res = jetoracle.separates(d, m, [k], "frobenius", e, p, sections)
                    agree = agree and res.surjective == (p**e - 1 <= m * eps_f[k])
                    done += 1

    return ScanRow(
        inst.id,
        inst.fan_name,
        d.coeffs,
        eps,
        eps_f,
        sandwich,
        homog,
        scaling,
        agree,
        adjoint_ok,
        superadd,
        very_ample,
        done,
        skipped,
    )


def _check(args):
    return check_instance(*args)


def run_scan(cfg: ScanConfig) -> ScanReport:
    instances = corpus(cfg.catalog, cfg.count, cfg.seed, cfg.lo, cfg.hi)
    jobs = [(inst, cfg) for inst in instances]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            rows = list(pool.map(_check, jobs, chunksize=4))
    else:
        rows = [_check(j) for j in jobs]
    rows.sort(key=lambda r: r.id)
    return ScanReport(rows)


def format_report(report: ScanReport) -> str:
    head = "id fan divisor eps eps_F sandwich homog scaling oracle adjoint_gg superadd"
    lines = [head]
    flag = {True: "ok", False: "FAIL"}
    for r in report.rows:
        lines.append(
            " ".join(
                [
                    r.id,
                    r.fan,
                    ",".join(map(str, r.divisor)),
                    ",".join(map(str, r.epsilon)),
                    ",".join(map(str, r.epsilon_frobenius)),
                    flag[r.sandwich_ok],
                    flag[r.homogeneity_ok],
                    flag[r.scaling_ok],
                    flag[r.oracle_agreement_ok],
                    flag[r.adjoint_gg_ok],
                    "yes" if r.superadditivity_observed else "no",
                ]
            )
        )
    s = report.summary
    lines.append("summary " + " ".join(f"{k}={v}" for k, v in s.items()))
    return "\n".join(lines) + "\n"
