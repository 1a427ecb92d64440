import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional, Tuple

from .. import __version__
from ..complexes import HomologyProfile, is_sphere_profile, neighborhood_complex, reduced_homology
from ..errors import BudgetExceededError, ConstructionError, PreconditionError
from ..graphs.constructions import complete_graph
from ..graphs.graph import Graph
from ..graphs.implicit import ImplicitExponential
from ..graphs.isomorphism import is_isomorphic
from ..reductions import FoldTrace, fold_core
from ..utils.config import Config
from .verdict import EXHAUSTIVE, SKIPPED, Check, Verdict, sampled

logger = logging.getLogger(__name__)


class VerdictBuilder:
    """Collects checks for one pipeline run"""

    def __init__(self, theorem_id: str, instance: Dict[str, Any], config: Config):
        self.verdict = Verdict(
            theorem_id=theorem_id,
            instance=instance,
            seed=config.seed,
            config_fingerprint=config.fingerprint(),
            version=__version__,
        )
        self._started = time.perf_counter()

    def has(self, name: str) -> bool:
        return self.verdict.check(name) is not None

    def add(
        self,
        name: str,
        expected: Any,
        observed: Any,
        strength: str = EXHAUSTIVE,
        note: Optional[str] = None,
    ) -> Check:
        check = Check(
            name=name,
            expected=expected,
            observed=observed,
            passed=expected == observed,
            strength=strength,
            note=note,
        )
        self.verdict.checks.append(check)
        if not check.passed:
            logger.warning(f"{self.verdict.theorem_id}: check {name} failed (expected {expected}, observed {observed})")
        return check

    def skip(self, name: str, reason: str) -> Check:
        check = Check(name=name, strength=SKIPPED, note=reason)
        self.verdict.checks.append(check)
        logger.info(f"{self.verdict.theorem_id}: check {name} skipped ({reason})")
        return check

    def sample_floor(self, name: str, checked: int, requested: int, note: Optional[str] = None) -> Check:
        """A sampled check that passes only when all requested samples were drawn"""
        if checked < requested:
            note = f"sample floor not reached: {checked} of {requested}" + (f"; {note}" if note else "")
        return self.add(name, requested, checked, strength=sampled(self.verdict.seed, checked), note=note)

    def report(self, key: str, value: Any) -> None:
        self.verdict.report[key] = value

    def preconditions(self, error: Optional[PreconditionError] = None) -> bool:
        if error is None:
            self.add("preconditions", True, True)
            return True
        self.add("preconditions", True, False, note=error.message)
        self.report("precondition_details", error.details)
        return False

    @contextmanager
    def guarded(self, *names: str) -> Iterator[None]:
        """Budget overflows skip the named checks; construction failures fail them"""
        try:
            yield
        except BudgetExceededError as e:
            for name in names:
                if not self.has(name):
                    self.skip(name, f"budget: {e.message}")
        except ConstructionError as e:
            logger.error(f"Construction failure in {self.verdict.theorem_id}: {e.message}")
            for name in names:
                if not self.has(name):
                    self.verdict.checks.append(Check(
                        name=name, expected="construction succeeds", observed=e.to_dict(),
                        passed=False, note=e.message
                    ))

    def finish(self) -> Verdict:
        self.verdict.checks.sort(key=lambda c: c.name)
        self.verdict.runtime_ms = int((time.perf_counter() - self._started) * 1000)
        status = "passed" if self.verdict.passed else "failed"
        logger.info(f"{self.verdict.theorem_id} {status} in {self.verdict.runtime_ms} ms")
        return self.verdict


class Pipeline:
    """Shared plumbing of the theorem pipelines"""

    theorem_id = ""

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()

    def start(self, instance: Dict[str, Any]) -> VerdictBuilder:
        logger.info(f"Verifying {self.theorem_id} on {instance}")
        return VerdictBuilder(self.theorem_id, instance, self.config)

    def profile(self, G: Graph) -> HomologyProfile:
        return reduced_homology(neighborhood_complex(G), self.config.face_budget)

    def folded_profile(self, G: Graph) -> Tuple[Graph, FoldTrace, HomologyProfile]:
        core, trace = fold_core(G)
        return core, trace, self.profile(core)

    def sphere_check(self, builder: VerdictBuilder, name: str, profile: HomologyProfile, d: int,
                     strength: str = EXHAUSTIVE) -> Check:
        return builder.add(
            name,
            expected=f"homology sphere S^{d}",
            observed=f"homology sphere S^{d}" if is_sphere_profile(profile, d) else profile.describe(),
            strength=strength,
            note="homology-consistent only; homotopy type is not verified",
        )

    def complete_core_check(self, builder: VerdictBuilder, name: str, core: Graph, m: int) -> Check:
        observed: Dict[str, Any] = {"vertices": core.vertex_count}
        if core.vertex_count <= self.config.iso_max_vertices:
            observed["complete"] = is_isomorphic(core, complete_graph(m), self.config.iso_max_vertices)[0]
        else:
            observed["complete"] = False
        return builder.add(name, {"vertices": m, "complete": True}, observed)

    def full_exponential(self, m: int, base: Graph) -> ImplicitExponential:
        return ImplicitExponential.full(complete_graph(m), base)

    def materialize_full(self, m: int, base: Graph, limit: Optional[int] = None) -> Graph:
        limit = limit or self.config.vertex_budget
        required = m ** base.vertex_count
        if required > limit:
            raise BudgetExceededError(
                f"K_{m}^G needs {required} vertices, over the limit of {limit}",
                required=required,
                budget=limit
            )
        graph, _ = self.full_exponential(m, base).materialize(limit)
        return graph

    def isolation_check(
        self,
        builder: VerdictBuilder,
        name: str,
        graph: ImplicitExponential,
        vertices: Iterator,
        requested: Optional[int] = None,
    ) -> Check:
        """Every listed vertex has an empty neighborhood in graph.

        requested is None for an exhaustive listing; otherwise the listing is a
        seeded sample that must deliver that many vertices.
        """
        checked = 0
        for f in vertices:
            checked += 1
            if graph.has_neighbors(f):
                strength = EXHAUSTIVE if requested is None else sampled(builder.verdict.seed, checked)
                return builder.add(name, "isolated", f"{graph.label(f)} has neighbors", strength=strength)
        if requested is not None:
            return builder.sample_floor(name, checked, requested, note="every sampled vertex isolated")
        return builder.add(name, "isolated", "isolated", note=f"{checked} vertices checked")
