"""Case records and the strategy ladder shared by every family."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..hamsearch import (DEFAULT_BUDGET, HamiltonCertificate, Status, certificate_for,
                         find_hcycle, prove_nonhamiltonian, NONHAM_CAP)
from ..orbital import Graph
from ..quolift import density_hamiltonian

QUOTIENT_LIFT = "quotient-lift"
SPLICE = "splice"
SINGER_COVER = "singer-cover"
DENSITY = "density"
SEARCH = "search"
STRATEGIES = (QUOTIENT_LIFT, SPLICE, SINGER_COVER, DENSITY, SEARCH)

HAMILTONIAN = "Hamiltonian"
NON_HAMILTONIAN = "NonHamiltonian"
TIMEOUT = "Timeout"


class ConstructionFailed(Exception):
    """A constructive step did not apply; the ladder moves to the next rung."""


@dataclass
class CaseDescriptor:
    family: str
    params: dict = field(default_factory=dict)
    suborbit: int | None = None
    strategy: str | None = None  # override: skip to this rung

    @property
    def case_id(self) -> str:
        parts = [self.family] + [f"{k}={v}" for k, v in sorted(self.params.items())]
        if self.suborbit is not None:
            parts.append(f"suborbit={self.suborbit}")
        return " ".join(parts)


@dataclass
class CaseResult:
    case: str
    n: int
    valency: int
    strategy: str | None
    verdict: str
    certificate: HamiltonCertificate | None = None
    elapsed_ms: int = 0
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    graph: Graph | None = field(default=None, repr=False)

    def report(self, certificate_file=None) -> dict:
        out = {"case": self.case, "n": self.n, "valency": self.valency, "strategy": self.strategy,
               "verdict": self.verdict}
        if self.verdict == HAMILTONIAN and certificate_file is not None:
            out["certificate_file"] = str(certificate_file)
        out["elapsed_ms"] = self.elapsed_ms
        if self.checks:
            out["checks"] = self.checks
        if self.notes:
            out["notes"] = self.notes
        return out


def run_ladder(case_id: str, g: Graph, constructive=None, constructive_tag: str | None = None,
               budget: int = DEFAULT_BUDGET, override: str | None = None, checks=None,
               allow_exhaustive: bool = True) -> CaseResult:
    """Constructive builder first, then density plus search, then plain search.

    ``constructive`` returns a vertex sequence or raises ConstructionFailed.
    The returned result names the rung that produced the certificate.
    """
    t0 = time.perf_counter()
    notes = []
    val = g.valency if g.is_regular() else min(g.degrees())
    result = None
    if constructive is not None and override in (None, constructive_tag):
        try:
            cycle = constructive()
            cert = certificate_for(g, cycle)
            result = CaseResult(case_id, g.n, val, constructive_tag, HAMILTONIAN, cert)
        except ConstructionFailed as exc:
            notes.append(f"{constructive_tag} not applicable: {exc}")
    if result is None:
        tag = density_hamiltonian(g)
        res = find_hcycle(g, budget=budget)
        strategy = DENSITY if tag is not None and override != SEARCH else SEARCH
        if tag is not None:
            notes.append(f"density guarantee: {tag.value}")
        if res.found:
            result = CaseResult(case_id, g.n, val, strategy, HAMILTONIAN, res.certificate)
        elif res.status is Status.EXHAUSTED:
            result = CaseResult(case_id, g.n, val, strategy, NON_HAMILTONIAN)
        elif allow_exhaustive and g.n <= NONHAM_CAP:
            proof = prove_nonhamiltonian(g)
            verdict = HAMILTONIAN if proof.certificate else NON_HAMILTONIAN
            result = CaseResult(case_id, g.n, val, SEARCH, verdict, proof.certificate)
        else:
            result = CaseResult(case_id, g.n, val, strategy, TIMEOUT)
            notes.append(f"search budget {budget} exhausted")
    result.notes.extend(notes)
    result.checks.update(checks or {})
    result.graph = g
    result.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return result
