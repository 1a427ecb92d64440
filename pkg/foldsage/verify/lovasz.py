import logging
from typing import Optional

from ..coloring import chromatic_number, require_loopless
from ..complexes import HomologyProfile, is_sphere_profile
from ..errors import LoopedGraphError, PreconditionError
from ..graphs.graph import Graph
from ..graphs.isomorphism import labeled_digest
from .base import Pipeline
from .verdict import Verdict

logger = logging.getLogger(__name__)

TIGHT = "tight"
SLACK = "slack"


def sphere_dimension(profile: HomologyProfile) -> Optional[int]:
    """d when the profile is that of S^d, else None"""
    if len(profile.groups) != 1:
        return None
    d = profile.groups[0].dim
    return d if is_sphere_profile(profile, d) else None


class LovaszPipeline(Pipeline):
    """chi(G) against the connectivity bound read off a sphere certificate of N(G)"""

    theorem_id = "lovasz"

    def verify(self, G: Graph) -> Verdict:
        builder = self.start({"G": {"vertices": G.vertex_count, "digest": labeled_digest(G)}})
        try:
            require_loopless(G, "The connectivity bound")
        except LoopedGraphError as e:
            builder.preconditions(PreconditionError(e.message, details=e.details))
            return builder.finish()
        builder.preconditions()

        chi = chromatic_number(G, self.config.solver_budget_ms)
        builder.report("chromatic", chi.to_json())
        if not chi.is_exact:
            for name in ("fold_preserves_chromatic_number", "lovasz_bound_holds"):
                builder.skip(name, "solver budget")
            return builder.finish()

        with builder.guarded("fold_preserves_chromatic_number", "lovasz_bound_holds"):
            core, trace, profile = self.folded_profile(G)
            builder.report("core_vertices", core.vertex_count)
            builder.report("fold_steps", len(trace))
            builder.report("homology", profile.to_json())
            builder.add("fold_preserves_chromatic_number", chi.value,
                        chromatic_number(core, self.config.solver_budget_ms).value)

            d = sphere_dimension(profile)
            if d is None:
                builder.skip("lovasz_bound_holds", f"N(G) is not a homology sphere: {profile.describe()}")
                return builder.finish()
            # conn(S^d) = d - 1
            bound = d + 2
            builder.report("bound", {"sphere_dimension": d, "lower_bound": bound,
                                     "tightness": TIGHT if chi.value == bound else SLACK,
                                     "strength": "homology certificate"})
            builder.add("lovasz_bound_holds", True, chi.value >= bound,
                        note=f"chi={chi.value} against conn + 3 = {bound}")
        return builder.finish()
